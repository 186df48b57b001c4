#pragma once

#include <vector>

#include "filtlab/partition.hpp"
#include "filtlab/process.hpp"

namespace filtlab {

// Block-wise weighted average, the one conditional expectation everything else
// reduces to.  Templated on the scalar so the oracle configuration can run it
// on exact rationals; standard mode instantiates T = double.
template <class T>
std::vector<T> cond_exp_values(const std::vector<T>& x, const Partition& partition,
                               const std::vector<T>& weights) {
    FILTLAB_REQUIRE(static_cast<int>(x.size()) == partition.size(), InvalidSpaceError,
                    "cond_exp: value/partition size mismatch");
    FILTLAB_REQUIRE(x.size() == weights.size(), InvalidSpaceError,
                    "cond_exp: value/weight size mismatch");
    std::vector<T> out(x.size(), T(0));
    for (const auto& block : partition.blocks()) {
        T mass(0), sum(0);
        for (int scenario : block) {
            const auto s = static_cast<size_t>(scenario);
            mass += weights[s];
            sum += weights[s] * x[s];
        }
        FILTLAB_REQUIRE(mass > T(0), InvalidSpaceError, "cond_exp: block of total weight zero");
        const T avg = sum / mass;
        for (int scenario : block) out[static_cast<size_t>(scenario)] = avg;
    }
    return out;
}

RandomVariable cond_exp(const RandomVariable& x, const Partition& partition,
                        const std::vector<double>& weights);

// Conditional probability of a scenario set given a partition.
RandomVariable cond_prob(const std::vector<bool>& event, const Partition& partition,
                         const std::vector<double>& weights);

double expectation(const RandomVariable& x, const std::vector<double>& weights);
double expectation(const std::vector<double>& x, const std::vector<double>& weights);

}  // namespace filtlab
