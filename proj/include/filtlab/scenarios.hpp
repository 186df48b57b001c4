#pragma once

#include <string>
#include <vector>

#include "filtlab/random_time.hpp"

namespace filtlab::scenarios {

// Signed random-walk driver: n-step paths of cumulative +-1 steps, uniform
// weights, natural filtration.
FiniteFilteredSpace coin_space(int steps);
PathTable coin_paths(int steps);

// Trivial reference filtration, tau uniform on {t_1, ..., t_K}.
RandomTimeModel independent_uniform_time(int steps);

// Coin driver with an independent default coordinate uniform on a subset of
// grid times; the product keeps F and tau independent.
RandomTimeModel independent_time_on_coins(int steps, int tau_values);

// Honest-style time: the first time the walk attains its running maximum over
// {t_1..t_K}; F_infinity-measurable, not a stopping time.
RandomTimeModel argmax_time(int steps);

// First passage of the walk below a level; an F stopping time (infinite when
// the level is never reached).
RandomTimeModel first_passage_time(int steps, int level = -1);

// Cox families; hazards per step stay in [0,1).
RandomTimeModel constant_hazard_cox(int steps, double rate);
RandomTimeModel cox_on_coins(int steps, double base_hazard, double tilt);
// Two-scenario driver revealed a quarter of the way in; the rate is modulated
// afterwards, predictably.
RandomTimeModel stochastic_hazard_cox(int steps, double base_rate, double tilt);

// Discrete filtering model: a hidden binary state drives the default hazard
// while the reference filtration only sees a noisy terminal signal; immersion
// fails under the physical weights.  The de-correlating density restores it.
struct FilteringModel {
    RandomTimeModel model;
    RandomVariable decorrelating_density;  // makes tau independent of everything
};
FilteringModel discrete_filtering();

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::string topic;  // which piece of the machinery the scenario exercises
    bool exact_mode;
};
const std::vector<CatalogEntry>& catalog();

// Builds the exact-mode catalog members ("kusuoka" runs in mc mode only).
RandomTimeModel build_catalog_model(const std::string& name, int steps);

}  // namespace filtlab::scenarios
