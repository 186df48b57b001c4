#pragma once

#include <limits>
#include <vector>

#include "filtlab/finspace_ops.hpp"
#include "filtlab/space.hpp"

namespace filtlab {

// tau takes the grid values t_1..t_K or +infinity; t_0 is never a default time.
inline constexpr int tau_infinite = std::numeric_limits<int>::max();

// A random time on a finite filtered space together with the progressively
// enlarged filtration G, G_t = F_t v sigma(tau ^ t).  On {tau <= t_k} the
// G-blocks carry the exact value of tau; on {tau > t_k} they carry only the
// fact of survival, so tau is a G stopping time by construction.
class RandomTimeModel {
public:
    RandomTimeModel(FiniteFilteredSpace base, std::vector<int> tau);

    const FiniteFilteredSpace& base() const { return base_; }
    const Filtration& f() const { return base_.filtration(); }
    const Filtration& g() const { return enlarged_; }
    const TimeGrid& grid() const { return base_.grid(); }
    const std::vector<double>& weights() const { return base_.weights(); }
    int scenarios() const { return base_.scenarios(); }
    int steps() const { return base_.steps(); }

    int tau(int scenario) const { return tau_.at(static_cast<size_t>(scenario)); }
    const std::vector<int>& tau_values() const { return tau_; }
    bool defaulted_by(int scenario, int k) const { return tau(scenario) <= k; }
    bool default_at(int scenario, int k) const { return tau(scenario) == k; }

    // Same model viewed under different scenario weights (a measure change).
    RandomTimeModel reweighted(std::vector<double> new_weights) const;

private:
    FiniteFilteredSpace base_;
    std::vector<int> tau_;
    Filtration enlarged_;
};

// Progressive enlargement of the filtration of `space` with `tau`.
RandomTimeModel enlarge_progressively(FiniteFilteredSpace space, std::vector<int> tau);

// Per-step default probability given survival, h_{t_k} in [0,1), F-predictable.
struct HazardSpec {
    AdaptedProcess per_step;  // values at index k = conditional hazard for step t_k, k >= 1
};

// Canonical immersion-preserving construction.  The base space is extended by
// an independent default coordinate: each base scenario omega splits into
// atoms (omega, tau = t_k) with weight S_{k-1}(omega) h_k(omega) and
// (omega, tau = infinity) with weight S_K(omega), where S_k = prod_{j<=k}(1-h_j).
// Zero-weight atoms are dropped.  The resulting Azema supermartingale is the
// running survival product and check_H holds exactly.
RandomTimeModel cox_construct(const FiniteFilteredSpace& space, const HazardSpec& hazard);

// Constant-hazard convenience.
RandomTimeModel cox_construct(const FiniteFilteredSpace& space, double hazard);

}  // namespace filtlab
