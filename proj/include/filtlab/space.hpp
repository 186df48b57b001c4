#pragma once

#include <vector>

#include "filtlab/grid.hpp"
#include "filtlab/partition.hpp"

namespace filtlab {

// A filtration on a grid: one partition per grid time, refining over time.
class Filtration {
public:
    Filtration() = default;
    explicit Filtration(std::vector<Partition> partitions);

    int points() const { return static_cast<int>(partitions_.size()); }  // K + 1
    int steps() const { return points() - 1; }
    const Partition& at(int k) const { return partitions_.at(static_cast<size_t>(k)); }
    const Partition& terminal() const { return partitions_.back(); }
    int scenarios() const { return partitions_.front().size(); }

    bool operator==(const Filtration& other) const { return partitions_ == other.partitions_; }

private:
    std::vector<Partition> partitions_;
};

// Finite scenario set with strictly positive weights summing to one, a time
// grid and a reference filtration F.  Exact-mode universe for everything else.
class FiniteFilteredSpace {
public:
    FiniteFilteredSpace(std::vector<double> weights, TimeGrid grid, Filtration filtration);

    // Trivial filtration at every time (useful for independent-time models).
    static FiniteFilteredSpace with_trivial_filtration(std::vector<double> weights, TimeGrid grid);

    int scenarios() const { return static_cast<int>(weights_.size()); }
    int steps() const { return grid_.steps(); }
    double weight(int scenario) const { return weights_.at(static_cast<size_t>(scenario)); }
    const std::vector<double>& weights() const { return weights_; }
    const TimeGrid& grid() const { return grid_; }
    const Filtration& filtration() const { return filt_; }

    double block_probability(const std::vector<int>& block) const;

    bool operator==(const FiniteFilteredSpace&) const = default;

private:
    std::vector<double> weights_;
    TimeGrid grid_;
    Filtration filt_;
};

}  // namespace filtlab
