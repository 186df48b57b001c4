#pragma once

#include <functional>
#include <string>
#include <vector>

namespace filtlab::mc {

struct RefinementRow {
    int steps = 0;
    double dt = 0.0;
    double error = 0.0;
};

struct RefinementReport {
    std::string name;
    std::vector<RefinementRow> rows;
    double fitted_order = 0.0;  // least-squares slope of log2(error) on log2(dt)
    bool exact = false;         // all errors at the exact-arithmetic floor
    bool monotone = true;       // errors nonincreasing as dt halves (with slack)
    bool converged(double min_order) const { return exact || fitted_order >= min_order; }
    std::string to_json() const;
};

// Evaluates `error_at(steps)` on each grid of the family, fits the order and
// flags non-monotone error profiles (beyond a factor-of-two slack).
RefinementReport refinement_harness(const std::string& name, const std::vector<int>& step_counts,
                                    const std::function<double(int)>& error_at,
                                    double exact_floor = 1e-13);

// Standard family dt = 2^-3 .. 2^-7 on the unit horizon.
std::vector<int> standard_refinement_steps();

// Built-in refinement targets on exact Cox families (constant and
// driver-modulated hazards):
//   gamma error:              max |Gamma - integrated hazard rate|
//   q-survival error:         max |Z^Q - exponential closed form| (constant tilt)
//   representation residual:  weighted mean squared error of the price
//                             reconstruction that uses the continuous-form
//                             integrands (unlagged h, Gamma compensator)
//   general representation:   same for the terminal-factor claim F z_tau
double gamma_error_constant_hazard(int steps, double rate);
double gamma_error_stochastic_hazard(int steps, double base_rate, double tilt);
double q_survival_error_constant_tilt(int steps, double rate, double tilt);
double representation_residual_constant(int steps, double rate);
double representation_residual_stochastic(int steps, double base_rate, double tilt);
double general_representation_residual(int steps, double base_rate, double tilt);

}  // namespace filtlab::mc
