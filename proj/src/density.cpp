#include "filtlab/density.hpp"

#include <cmath>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

std::string to_string(DensityFamily family) {
    switch (family) {
        case DensityFamily::f_infinity: return "f_infinity";
        case DensityFamily::fh: return "fh";
        case DensityFamily::exponential: return "exponential";
        case DensityFamily::generic: return "generic";
    }
    return "generic";
}

DensityModel::DensityModel(const RandomTimeModel& model, RandomVariable rho, DensityFamily family,
                           bool auto_normalize)
    : rho_(std::move(rho)), family_(family) {
    const int n = model.scenarios();
    const int points = model.grid().points();
    FILTLAB_REQUIRE(rho_.size() == n, InvalidDensityError, "density needs one value per scenario");
    for (int i = 0; i < n; ++i)
        FILTLAB_REQUIRE(rho_[i] > 0.0, InvalidDensityError,
                        "density must be strictly positive on every scenario");
    const double mean = expectation(rho_, model.weights());
    if (auto_normalize) {
        was_normalized_ = std::abs(mean - 1.0) > 0.0;
        for (int i = 0; i < n; ++i) rho_[i] /= mean;
    } else {
        FILTLAB_REQUIRE(std::abs(mean - 1.0) <= 1e-9, InvalidDensityError,
                        "density mean differs from one; pass auto_normalize to rescale");
    }

    e_ = AdaptedProcess(points, n, Filt::F);
    E_ = AdaptedProcess(points, n, Filt::G);
    eta_ = AdaptedProcess(points, n, Filt::G);
    for (int k = 0; k < points; ++k) {
        e_.row(k) = cond_exp_values(rho_.values(), model.f().at(k), model.weights());
        E_.row(k) = cond_exp_values(rho_.values(), model.g().at(k), model.weights());
        for (int i = 0; i < n; ++i) eta_.at(k, i) = e_.at(k, i) / E_.at(k, i);
    }

    q_weights_.resize(static_cast<size_t>(n));
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        q_weights_[static_cast<size_t>(i)] = rho_[i] * model.weights()[static_cast<size_t>(i)];
        mass += q_weights_[static_cast<size_t>(i)];
    }
    for (double& q : q_weights_) q /= mass;  // unit mean up to rounding
}

DensityModel build_density(const RandomTimeModel& model, RandomVariable rho, DensityFamily family,
                           bool auto_normalize) {
    return DensityModel(model, std::move(rho), family, auto_normalize);
}

FiniteFilteredSpace reweight(const FiniteFilteredSpace& space, const RandomVariable& rho) {
    FILTLAB_REQUIRE(rho.size() == space.scenarios(), InvalidDensityError,
                    "reweight: density size mismatch");
    std::vector<double> weights(static_cast<size_t>(space.scenarios()));
    double mass = 0.0;
    for (int i = 0; i < space.scenarios(); ++i) {
        FILTLAB_REQUIRE(rho[i] > 0.0, InvalidDensityError, "reweight: nonpositive density value");
        weights[static_cast<size_t>(i)] = rho[i] * space.weight(i);
        mass += weights[static_cast<size_t>(i)];
    }
    for (double& w : weights) w /= mass;
    return FiniteFilteredSpace(std::move(weights), space.grid(), space.filtration());
}

}  // namespace filtlab
