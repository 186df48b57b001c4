#pragma once

#include <optional>
#include <string>

#include "filtlab/azema.hpp"
#include "filtlab/random_time.hpp"

namespace filtlab {

enum class DensityFamily { f_infinity, fh, exponential, generic };

std::string to_string(DensityFamily family);

// A strictly positive unit-mean terminal density rho together with its
// restricted density processes: e_t = E[rho|F_t], E_t = E[rho|G_t] and the
// ratio eta = e/E.  e and E are exact P-martingales by construction; eta is a
// (G,Q)-martingale whenever immersion holds under P.
class DensityModel {
public:
    DensityModel(const RandomTimeModel& model, RandomVariable rho, DensityFamily family,
                 bool auto_normalize);

    const RandomVariable& rho() const { return rho_; }
    const AdaptedProcess& e() const { return e_; }
    const AdaptedProcess& big_e() const { return E_; }
    const AdaptedProcess& eta() const { return eta_; }
    DensityFamily family() const { return family_; }
    bool was_normalized() const { return was_normalized_; }

    // Q-weights rho_omega * p_omega.
    const std::vector<double>& q_weights() const { return q_weights_; }

private:
    RandomVariable rho_;
    AdaptedProcess e_, E_, eta_;
    std::vector<double> q_weights_;
    DensityFamily family_;
    bool was_normalized_ = false;
};

// Validates positivity and unit mean (normalizing when requested, flagged on
// the result), then computes e, E, eta and the Q-weights.
DensityModel build_density(const RandomTimeModel& model, RandomVariable rho,
                           DensityFamily family = DensityFamily::generic,
                           bool auto_normalize = false);

// The reweighted space: weights rho_omega * p_omega, same grid and filtration.
// Bayes' rule E_Q[X|block] = E_P[rho X|block] / E_P[rho|block] then holds by
// construction.
FiniteFilteredSpace reweight(const FiniteFilteredSpace& space, const RandomVariable& rho);

}  // namespace filtlab
