#include "filtlab/finspace_ops.hpp"

#include <map>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

Filtration natural_filtration(const std::vector<PathTable>& drivers) {
    FILTLAB_REQUIRE(!drivers.empty(), InvalidSpaceError, "natural_filtration: no drivers");
    const int points = drivers.front().points();
    const int n = drivers.front().paths();
    for (const auto& d : drivers)
        FILTLAB_REQUIRE(d.points() == points && d.paths() == n, InvalidSpaceError,
                        "natural_filtration: driver shape mismatch");

    // History labels grow one observation row at a time, so refinement is automatic.
    std::vector<std::vector<double>> history(static_cast<size_t>(n));
    std::vector<Partition> parts;
    parts.reserve(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k) {
        for (int i = 0; i < n; ++i)
            for (const auto& d : drivers) history[static_cast<size_t>(i)].push_back(d.at(k, i));
        parts.push_back(Partition::group_by(history));
    }
    return Filtration(std::move(parts));
}

Filtration natural_filtration(const PathTable& driver) {
    return natural_filtration(std::vector<PathTable>{driver});
}

AdaptedProcess predictable_projection(const AdaptedProcess& h, const Filtration& f_filtration,
                                      const std::vector<double>& weights) {
    FILTLAB_REQUIRE(h.points() == f_filtration.points() && h.scenarios() == f_filtration.scenarios(),
                    InvalidSpaceError, "predictable_projection: shape mismatch");
    const int n = h.scenarios();
    AdaptedProcess out(h.points(), n, Filt::F);
    for (int k = 0; k < h.points(); ++k) {
        const Partition& lagged = (k == 0) ? Partition::trivial(n) : f_filtration.at(k - 1);
        out.row(k) = cond_exp_values(h.row(k), lagged, weights);
    }
    return out;
}

}  // namespace filtlab
