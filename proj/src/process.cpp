#include "filtlab/process.hpp"

#include <algorithm>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

AdaptedProcess AdaptedProcess::deterministic(const std::vector<double>& per_time, int scenarios,
                                             Filt tag) {
    AdaptedProcess out(static_cast<int>(per_time.size()), scenarios, tag);
    for (int k = 0; k < out.points(); ++k)
        for (int i = 0; i < scenarios; ++i) out.at(k, i) = per_time[static_cast<size_t>(k)];
    return out;
}

bool is_adapted(const AdaptedProcess& x, const Filtration& filtration) {
    if (x.points() != filtration.points() || x.scenarios() != filtration.scenarios()) return false;
    for (int k = 0; k < x.points(); ++k) {
        for (const auto& block : filtration.at(k).blocks()) {
            const double ref = x.at(k, block.front());
            for (int scenario : block)
                if (x.at(k, scenario) != ref) return false;
        }
    }
    return true;
}

bool is_predictable(const AdaptedProcess& x, const Filtration& filtration) {
    if (x.points() != filtration.points() || x.scenarios() != filtration.scenarios()) return false;
    for (int k = 0; k < x.points(); ++k) {
        const Partition& lagged = (k == 0) ? Partition::trivial(x.scenarios()) : filtration.at(k - 1);
        for (const auto& block : lagged.blocks()) {
            const double ref = x.at(k, block.front());
            for (int scenario : block)
                if (x.at(k, scenario) != ref) return false;
        }
    }
    return true;
}

namespace {

double block_spread(const AdaptedProcess& x, int k, const Partition& partition) {
    double worst = 0.0;
    for (const auto& block : partition.blocks()) {
        double lo = x.at(k, block.front()), hi = lo;
        for (int scenario : block) {
            lo = std::min(lo, x.at(k, scenario));
            hi = std::max(hi, x.at(k, scenario));
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

}  // namespace

double adaptedness_defect(const AdaptedProcess& x, const Filtration& filtration) {
    double worst = 0.0;
    for (int k = 0; k < x.points(); ++k) worst = std::max(worst, block_spread(x, k, filtration.at(k)));
    return worst;
}

double predictability_defect(const AdaptedProcess& x, const Filtration& filtration) {
    double worst = 0.0;
    for (int k = 0; k < x.points(); ++k) {
        const Partition& lagged = (k == 0) ? Partition::trivial(x.scenarios()) : filtration.at(k - 1);
        worst = std::max(worst, block_spread(x, k, lagged));
    }
    return worst;
}

RandomVariable cond_exp(const RandomVariable& x, const Partition& partition,
                        const std::vector<double>& weights) {
    return RandomVariable(cond_exp_values(x.values(), partition, weights));
}

RandomVariable cond_prob(const std::vector<bool>& event, const Partition& partition,
                         const std::vector<double>& weights) {
    std::vector<double> indicator(event.size());
    for (size_t i = 0; i < event.size(); ++i) indicator[i] = event[i] ? 1.0 : 0.0;
    return RandomVariable(cond_exp_values(indicator, partition, weights));
}

double expectation(const std::vector<double>& x, const std::vector<double>& weights) {
    FILTLAB_REQUIRE(x.size() == weights.size(), InvalidSpaceError,
                    "expectation: size mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < x.size(); ++i) sum += weights[i] * x[i];
    return sum;
}

double expectation(const RandomVariable& x, const std::vector<double>& weights) {
    return expectation(x.values(), weights);
}

}  // namespace filtlab
