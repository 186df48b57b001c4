#pragma once

#include <functional>
#include <vector>

#include "filtlab/mc/mtest.hpp"
#include "filtlab/mc/sde.hpp"

namespace filtlab::mc {

// Filtering model: a hidden value process X triggers default at its first
// passage of zero; investors observe Y, whose drift leaks the stopped X when
// the coupling is on.  Two independent Brownian drivers.
struct KusuokaSpec {
    double x0 = 1.0;
    double sigma1 = 1.0;
    double drift_x = 0.0;
    double y0 = 0.0;
    double sigma2 = 1.0;
    double coupling = 2.0;  // mu(t, x, y) = coupling * x; zero decouples
    double horizon = 1.0;

    double mu(double t, double x_stopped, double y) const;
};

struct KusuokaRun {
    TimeGrid grid;
    std::vector<std::vector<double>> y;        // observed, [path][k]
    std::vector<std::vector<double>> x;        // hidden, [path][k]
    std::vector<std::vector<double>> db2;      // observation shocks, [path][step]
    std::vector<std::vector<double>> min_y;    // running minimum of y, [path][k]
    std::vector<int> tau_index;                // first passage index, or INT_MAX

    int paths() const { return static_cast<int>(y.size()); }
};

// Simulates the model; sigma2 must stay positive (observability).
KusuokaRun kusuoka_scenario(const KusuokaSpec& spec, int steps, int n_paths, std::uint64_t seed,
                            std::uint64_t stream = 0);

// Statistical detector for the failure of the fourth immersion
// characterization: information arriving on (s, t] must not update
// P(tau <= s | .) when immersion holds.  Regresses 1_{tau<=s} on observed
// features at s plus incremental features on (s, t]; a heteroskedasticity
// robust Wald test of the incremental block at `level`.
struct HViolationTest {
    double p_value = 1.0;
    bool reject = false;
    double level = 0.0;
    int s_index = 0;
    int t_index = 0;
};
HViolationTest h_violation_detector(const KusuokaRun& run, double level, int s_index = -1,
                                    int t_index = -1);

// Exact discrete drift-removal density per path; under the reweighted measure
// the observation becomes driftless and independent of the default driver.
std::vector<double> drift_removal_weights(const KusuokaRun& run, const KusuokaSpec& spec);

// After drift removal the default indicator compensated with the (split-sample)
// survival hazard must pass the weighted martingale test family-wise.
struct DriftRemovalCheck {
    MartingaleTestResult n_test;
    std::vector<double> hazard;  // estimated per-step hazard (estimation half)
    int estimation_paths = 0;
    int test_paths = 0;
};
DriftRemovalCheck drift_removal_check(const KusuokaRun& run, const KusuokaSpec& spec,
                                      double level);

// Regression split of a priced claim into a dW-integral and a dN-integral
// (Brownian-filtration representation exercised statistically): reports the
// residual variance drop of each component.
struct BrownianSplitReport {
    double base_residual = 0.0;      // increments regressed on nothing
    double dw_residual = 0.0;        // after projecting on observation shocks
    double dn_residual = 0.0;        // after adding the compensated jump column
};
BrownianSplitReport brownian_split_diagnostic(const KusuokaRun& run, const KusuokaSpec& spec);

}  // namespace filtlab::mc
