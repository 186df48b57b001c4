#pragma once

#include <vector>

#include "filtlab/errors.hpp"

namespace filtlab {

// Strictly increasing time grid t_0 = 0 < t_1 < ... < t_K.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times);

    // K equal steps of size horizon / K.
    static TimeGrid uniform(int steps, double horizon = 1.0);

    int steps() const { return static_cast<int>(times_.size()) - 1; }   // K
    int points() const { return static_cast<int>(times_.size()); }      // K + 1
    double time(int k) const { return times_.at(static_cast<size_t>(k)); }
    double dt(int k) const { return time(k) - time(k - 1); }             // t_k - t_{k-1}, k >= 1
    const std::vector<double>& times() const { return times_; }

    bool operator==(const TimeGrid&) const = default;

private:
    std::vector<double> times_;
};

}  // namespace filtlab
