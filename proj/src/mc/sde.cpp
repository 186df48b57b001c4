#include "filtlab/mc/sde.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "filtlab/errors.hpp"

namespace filtlab::mc {

namespace {

void simulate_range(const SdeSpec& spec, const TimeGrid& grid, const CounterRng& rng,
                    PathSet& out, int first, int last) {
    const int K = grid.steps();
    for (int p = first; p < last; ++p) {
        auto& path = out.values[static_cast<size_t>(p)];
        auto& dw = out.increments[static_cast<size_t>(p)];
        path[0] = spec.x0;
        bool absorbed = spec.absorb_below && spec.x0 <= *spec.absorb_below;
        for (int k = 1; k <= K; ++k) {
            const double dt = grid.dt(k);
            const double shock = rng.normal(static_cast<std::uint64_t>(p),
                                            static_cast<std::uint64_t>(k)) *
                                 std::sqrt(dt);
            dw[static_cast<size_t>(k - 1)] = shock;
            const double prev = path[static_cast<size_t>(k - 1)];
            double next = prev;
            if (!absorbed) {
                const double t_prev = grid.time(k - 1);
                next = prev + spec.drift(t_prev, prev) * dt + spec.diffusion(t_prev, prev) * shock;
                if (!std::isfinite(next)) {
                    std::ostringstream os;
                    os << "coefficient overflow at path " << p << ", time index " << k;
                    throw SimulationError(os.str());
                }
                if (spec.absorb_below && next <= *spec.absorb_below) {
                    next = *spec.absorb_below;
                    absorbed = true;
                }
            }
            path[static_cast<size_t>(k)] = next;
        }
    }
}

}  // namespace

PathSet simulate_paths(const SdeSpec& spec, const TimeGrid& grid, int n_paths, std::uint64_t seed,
                       std::uint64_t stream, int n_threads) {
    FILTLAB_REQUIRE(n_paths >= 1, Error, "simulate_paths: need at least one path");
    FILTLAB_REQUIRE(spec.drift && spec.diffusion, Error, "simulate_paths: coefficients missing");
    PathSet out{grid,
                std::vector<std::vector<double>>(static_cast<size_t>(n_paths),
                                                 std::vector<double>(static_cast<size_t>(grid.points()))),
                std::vector<std::vector<double>>(static_cast<size_t>(n_paths),
                                                 std::vector<double>(static_cast<size_t>(grid.steps())))};
    const CounterRng rng(seed, stream);

    if (n_threads <= 0)
        n_threads = static_cast<int>(std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    if (n_threads <= 1 || n_paths < 256) {
        simulate_range(spec, grid, rng, out, 0, n_paths);
        return out;
    }
    // Paths are written to disjoint rows; the draw for (path, step) does not
    // depend on the chunking, so the result is identical at any worker count.
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int chunk = (n_paths + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
        const int first = w * chunk;
        const int last = std::min(n_paths, first + chunk);
        if (first >= last) break;
        workers.emplace_back([&, first, last] {
            try {
                simulate_range(spec, grid, rng, out, first, last);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

void write_path_table_csv(const PathSet& paths, const std::string& file) {
    std::ofstream out(file);
    FILTLAB_REQUIRE(out.good(), ConfigError, "cannot open path table for writing: " + file);
    out << "path,k,time,value\n";
    for (int p = 0; p < paths.paths(); ++p)
        for (int k = 0; k < paths.points(); ++k)
            out << p << "," << k << "," << paths.grid.time(k) << ","
                << paths.values[static_cast<size_t>(p)][static_cast<size_t>(k)] << "\n";
}

int first_passage_index(const std::vector<double>& path, double barrier) {
    for (size_t k = 1; k < path.size(); ++k)
        if (path[k] <= barrier) return static_cast<int>(k);
    return -1;
}

}  // namespace filtlab::mc
