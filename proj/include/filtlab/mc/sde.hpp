#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "filtlab/grid.hpp"
#include "filtlab/mc/rng.hpp"

namespace filtlab::mc {

// One-dimensional diffusion dX = b(t,X) dt + sigma(t,X) dW with an optional
// absorbing lower boundary.
struct SdeSpec {
    std::function<double(double, double)> drift;      // (t, x)
    std::function<double(double, double)> diffusion;  // (t, x), >= 0
    double x0 = 0.0;
    std::optional<double> absorb_below;  // freeze the path once x <= boundary
};

struct PathSet {
    TimeGrid grid;
    std::vector<std::vector<double>> values;      // [path][k], k = 0..K
    std::vector<std::vector<double>> increments;  // [path][k-1], Brownian dW used at step k

    int paths() const { return static_cast<int>(values.size()); }
    int points() const { return grid.points(); }
};

// Euler-Maruyama paths, reproducible per (seed, stream, path index) and
// independent of the worker count.
PathSet simulate_paths(const SdeSpec& spec, const TimeGrid& grid, int n_paths,
                       std::uint64_t seed, std::uint64_t stream = 0, int n_threads = 0);

// Columnar text export; header: path,k,time,value.
void write_path_table_csv(const PathSet& paths, const std::string& file);

// First grid index k >= 1 with value <= barrier, or -1 when never reached.
int first_passage_index(const std::vector<double>& path, double barrier);

}  // namespace filtlab::mc
