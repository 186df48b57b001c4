#pragma once

#include <vector>

#include "filtlab/process.hpp"

namespace filtlab {

// One driver's paths: values[k][scenario] for k = 0..K.
struct PathTable {
    std::vector<std::vector<double>> values;

    int points() const { return static_cast<int>(values.size()); }
    int paths() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
    double at(int k, int scenario) const {
        return values.at(static_cast<size_t>(k)).at(static_cast<size_t>(scenario));
    }
};

// Natural filtration of one or several drivers: scenarios sharing the whole
// driver history on [t_0, t_k] sit in the same block at t_k.  Refining by
// construction; duplicates never separate.
Filtration natural_filtration(const std::vector<PathTable>& drivers);
Filtration natural_filtration(const PathTable& driver);

// Discrete predictable projection of a G-adapted process onto F: the value at
// t_k is E[H_{t_k} | F_{t_{k-1}}], with F_{t_{-1}} the trivial sigma-algebra.
AdaptedProcess predictable_projection(const AdaptedProcess& h, const Filtration& f_filtration,
                                      const std::vector<double>& weights);

}  // namespace filtlab
