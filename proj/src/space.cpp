#include "filtlab/space.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace filtlab {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    FILTLAB_REQUIRE(times_.size() >= 2, InvalidSpaceError, "grid needs K >= 1");
    FILTLAB_REQUIRE(times_.front() == 0.0, InvalidSpaceError, "grid must start at t_0 = 0");
    for (size_t k = 1; k < times_.size(); ++k)
        FILTLAB_REQUIRE(times_[k] > times_[k - 1], InvalidSpaceError,
                        "grid times must be strictly increasing");
}

TimeGrid TimeGrid::uniform(int steps, double horizon) {
    FILTLAB_REQUIRE(steps >= 1 && horizon > 0.0, InvalidSpaceError, "bad uniform grid parameters");
    std::vector<double> times(static_cast<size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k)
        times[static_cast<size_t>(k)] = horizon * static_cast<double>(k) / steps;
    return TimeGrid(std::move(times));
}

Filtration::Filtration(std::vector<Partition> partitions) : partitions_(std::move(partitions)) {
    FILTLAB_REQUIRE(partitions_.size() >= 2, InvalidSpaceError, "filtration needs K >= 1");
    for (size_t k = 1; k < partitions_.size(); ++k)
        FILTLAB_REQUIRE(partitions_[k].refines(partitions_[k - 1]), InvalidSpaceError,
                        "filtration partitions must refine over time");
}

FiniteFilteredSpace::FiniteFilteredSpace(std::vector<double> weights, TimeGrid grid,
                                         Filtration filtration)
    : weights_(std::move(weights)), grid_(std::move(grid)), filt_(std::move(filtration)) {
    FILTLAB_REQUIRE(!weights_.empty(), InvalidSpaceError, "space needs at least one scenario");
    FILTLAB_REQUIRE(filt_.scenarios() == scenarios(), InvalidSpaceError,
                    "filtration scenario count differs from weight count");
    FILTLAB_REQUIRE(filt_.points() == grid_.points(), InvalidSpaceError,
                    "filtration must have one partition per grid time");
    double total = 0.0;
    for (double w : weights_) {
        FILTLAB_REQUIRE(w > 0.0, InvalidSpaceError, "scenario weights must be strictly positive");
        total += w;
    }
    FILTLAB_REQUIRE(std::abs(total - 1.0) < 1e-9, InvalidSpaceError,
                    "scenario weights must sum to one");
    // Absorb residual rounding so downstream identities see an exact unit mass.
    for (double& w : weights_) w /= total;
}

FiniteFilteredSpace FiniteFilteredSpace::with_trivial_filtration(std::vector<double> weights,
                                                                 TimeGrid grid) {
    const int n = static_cast<int>(weights.size());
    std::vector<Partition> parts(static_cast<size_t>(grid.points()), Partition::trivial(n));
    return FiniteFilteredSpace(std::move(weights), std::move(grid), Filtration(std::move(parts)));
}

double FiniteFilteredSpace::block_probability(const std::vector<int>& block) const {
    double p = 0.0;
    for (int scenario : block) p += weight(scenario);
    return p;
}

}  // namespace filtlab
