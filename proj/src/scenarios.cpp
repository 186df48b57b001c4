#include "filtlab/scenarios.hpp"

#include <cmath>

namespace filtlab::scenarios {

PathTable coin_paths(int steps) {
    const int n = 1 << steps;
    PathTable table;
    table.values.assign(static_cast<size_t>(steps) + 1,
                        std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 1; k <= steps; ++k) {
            s += ((i >> (k - 1)) & 1) ? 1.0 : -1.0;
            table.values[static_cast<size_t>(k)][static_cast<size_t>(i)] = s;
        }
    }
    return table;
}

FiniteFilteredSpace coin_space(int steps) {
    const int n = 1 << steps;
    std::vector<double> weights(static_cast<size_t>(n), 1.0 / n);
    return FiniteFilteredSpace(std::move(weights), TimeGrid::uniform(steps),
                               natural_filtration(coin_paths(steps)));
}

RandomTimeModel independent_uniform_time(int steps) {
    std::vector<double> weights(static_cast<size_t>(steps), 1.0 / steps);
    FiniteFilteredSpace space = FiniteFilteredSpace::with_trivial_filtration(
        std::move(weights), TimeGrid::uniform(steps));
    std::vector<int> tau(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i) tau[static_cast<size_t>(i)] = i + 1;
    return enlarge_progressively(std::move(space), std::move(tau));
}

RandomTimeModel independent_time_on_coins(int steps, int tau_values) {
    FILTLAB_REQUIRE(tau_values >= 1 && tau_values <= steps, InvalidSpaceError,
                    "independent_time_on_coins: bad tau support");
    const PathTable base_paths = coin_paths(steps);
    const int n_base = base_paths.paths();
    const int n = n_base * tau_values;
    // Product: scenario = (coin path, default coordinate).
    PathTable driver;
    driver.values.assign(static_cast<size_t>(steps) + 1,
                         std::vector<double>(static_cast<size_t>(n), 0.0));
    std::vector<int> tau(static_cast<size_t>(n));
    std::vector<double> weights(static_cast<size_t>(n), 1.0 / n);
    for (int b = 0; b < n_base; ++b)
        for (int j = 0; j < tau_values; ++j) {
            const int i = b * tau_values + j;
            tau[static_cast<size_t>(i)] = j + 1;
            for (int k = 0; k <= steps; ++k)
                driver.values[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                    base_paths.at(k, b);
        }
    FiniteFilteredSpace space(std::move(weights), TimeGrid::uniform(steps),
                              natural_filtration(driver));
    return enlarge_progressively(std::move(space), std::move(tau));
}

RandomTimeModel argmax_time(int steps) {
    const PathTable paths = coin_paths(steps);
    const int n = paths.paths();
    std::vector<int> tau(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int best = 1;
        for (int k = 2; k <= steps; ++k)
            if (paths.at(k, i) > paths.at(best, i)) best = k;
        tau[static_cast<size_t>(i)] = best;
    }
    std::vector<double> weights(static_cast<size_t>(n), 1.0 / n);
    FiniteFilteredSpace space(std::move(weights), TimeGrid::uniform(steps),
                              natural_filtration(paths));
    return enlarge_progressively(std::move(space), std::move(tau));
}

RandomTimeModel first_passage_time(int steps, int level) {
    const PathTable paths = coin_paths(steps);
    const int n = paths.paths();
    std::vector<int> tau(static_cast<size_t>(n), tau_infinite);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= steps; ++k)
            if (paths.at(k, i) <= level) {
                tau[static_cast<size_t>(i)] = k;
                break;
            }
    std::vector<double> weights(static_cast<size_t>(n), 1.0 / n);
    FiniteFilteredSpace space(std::move(weights), TimeGrid::uniform(steps),
                              natural_filtration(paths));
    return enlarge_progressively(std::move(space), std::move(tau));
}

RandomTimeModel constant_hazard_cox(int steps, double rate) {
    FiniteFilteredSpace base = FiniteFilteredSpace::with_trivial_filtration(
        {1.0}, TimeGrid::uniform(steps));
    return cox_construct(base, rate / steps);
}

RandomTimeModel cox_on_coins(int steps, double base_hazard, double tilt) {
    const FiniteFilteredSpace base = coin_space(steps);
    const PathTable paths = coin_paths(steps);
    AdaptedProcess hazard(steps + 1, base.scenarios(), Filt::F, 0.0);
    for (int k = 1; k <= steps; ++k)
        for (int i = 0; i < base.scenarios(); ++i)
            hazard.at(k, i) = base_hazard + (paths.at(k - 1, i) < 0.0 ? tilt : 0.0);
    return cox_construct(base, HazardSpec{hazard});
}

RandomTimeModel stochastic_hazard_cox(int steps, double base_rate, double tilt) {
    const int reveal = std::max(1, steps / 4);
    const int n = 2;
    PathTable driver;
    driver.values.assign(static_cast<size_t>(steps) + 1,
                         std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int k = reveal; k <= steps; ++k) {
        driver.values[static_cast<size_t>(k)][0] = -1.0;
        driver.values[static_cast<size_t>(k)][1] = 1.0;
    }
    FiniteFilteredSpace base({0.5, 0.5}, TimeGrid::uniform(steps), natural_filtration(driver));
    const double dt = 1.0 / steps;
    AdaptedProcess hazard(steps + 1, n, Filt::F, 0.0);
    for (int k = 1; k <= steps; ++k)
        for (int i = 0; i < n; ++i) {
            const bool modulated = (k - 1 >= reveal) && i == 1;
            hazard.at(k, i) = dt * base_rate * (modulated ? 1.0 + tilt : 1.0);
        }
    return cox_construct(base, HazardSpec{hazard});
}

FilteringModel discrete_filtering() {
    // Hidden state X in {0,1}; observed terminal signal S = X flipped with
    // probability 1/4; default hazard depends on X.  Atoms: (X, S, tau-slot).
    const double flip = 0.25;
    const double a[2] = {0.2, 0.5};  // P(tau = t_1 | X)
    const double b[2] = {0.3, 0.3};  // P(tau = t_2 | X)
    std::vector<double> weights;
    std::vector<int> tau;
    std::vector<double> signal;
    const int steps = 2;
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s) {
            const double p_xs = 0.5 * (s == x ? 1.0 - flip : flip);
            const double slot_prob[3] = {a[x], b[x], 1.0 - a[x] - b[x]};
            const int slot_tau[3] = {1, 2, tau_infinite};
            for (int slot = 0; slot < 3; ++slot) {
                if (slot_prob[slot] <= 0.0) continue;
                weights.push_back(p_xs * slot_prob[slot]);
                tau.push_back(slot_tau[slot]);
                signal.push_back(static_cast<double>(s));
            }
        }
    const int n = static_cast<int>(weights.size());
    PathTable driver;
    driver.values.assign(static_cast<size_t>(steps) + 1,
                         std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        driver.values[2][static_cast<size_t>(i)] = signal[static_cast<size_t>(i)];

    FiniteFilteredSpace space(weights, TimeGrid::uniform(steps), natural_filtration(driver));
    RandomTimeModel model = enlarge_progressively(space, tau);

    // De-correlate: give every atom the tau-marginal law regardless of X.
    const double marginal[3] = {0.5 * (a[0] + a[1]), 0.5 * (b[0] + b[1]),
                                1.0 - 0.5 * (a[0] + a[1]) - 0.5 * (b[0] + b[1])};
    RandomVariable rho(std::vector<double>(static_cast<size_t>(n), 1.0));
    {
        int i = 0;
        for (int x = 0; x < 2; ++x)
            for (int s = 0; s < 2; ++s) {
                const double slot_prob[3] = {a[x], b[x], 1.0 - a[x] - b[x]};
                for (int slot = 0; slot < 3; ++slot) {
                    if (slot_prob[slot] <= 0.0) continue;
                    rho[i] = marginal[slot] / slot_prob[slot];
                    ++i;
                }
            }
    }
    return FilteringModel{std::move(model), std::move(rho)};
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"cox-constant", "constant-hazard Cox time on a trivial reference filtration",
         "canonical immersion-preserving default construction", true},
        {"cox-driver", "Cox time with a hazard modulated by the walk driver",
         "immersion with a stochastic predictable intensity", true},
        {"independent-time", "default coordinate independent of the driver",
         "independence gives immersion and a deterministic survival curve", true},
        {"argmax-time", "first running-maximum time of the walk",
         "terminal-measurable non-stopping time; immersion fails", true},
        {"stopping-time", "first passage of the walk below a level",
         "enlargement adds nothing for stopping times", true},
        {"fh-density", "terminal factor times pre-default factor measure change",
         "immersion-preserving density factorization", true},
        {"exponential-density", "product of dm- and dN-driven exponentials",
         "survival process and compensator under the new measure", true},
        {"filtering", "hidden-state hazard with a noisy terminal observation",
         "immersion failure and its repair by de-correlation", true},
        {"kusuoka", "hidden diffusion default with a coupled observed price",
         "statistical immersion diagnostics and drift removal", false},
    };
    return entries;
}

RandomTimeModel build_catalog_model(const std::string& name, int steps) {
    if (name == "cox-constant") return constant_hazard_cox(steps, 0.8);
    if (name == "cox-driver") return cox_on_coins(std::min(steps, 6), 0.1, 0.15);
    if (name == "independent-time") return independent_time_on_coins(std::min(steps, 6), std::min(steps, 6));
    if (name == "argmax-time") return argmax_time(std::min(steps, 6));
    if (name == "stopping-time") return first_passage_time(std::min(steps, 6));
    if (name == "fh-density" || name == "exponential-density")
        return cox_on_coins(std::min(steps, 6), 0.1, 0.15);
    if (name == "filtering") return discrete_filtering().model;
    throw ConfigError("unknown exact-mode scenario: " + name);
}

}  // namespace filtlab::scenarios
