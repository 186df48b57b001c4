#pragma once

#include <cstdint>

namespace filtlab::mc {

// Counter-based generation: the draw for (path, step, dim) is a pure function
// of (seed, stream, path, step, dim), so path i is bit-identical at any worker
// count and in any evaluation order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t bits(std::uint64_t path, std::uint64_t step, std::uint64_t dim = 0) const;
    // Uniform on the open interval (0, 1).
    double uniform(std::uint64_t path, std::uint64_t step, std::uint64_t dim = 0) const;
    // Standard normal via the inverse distribution function.
    double normal(std::uint64_t path, std::uint64_t step, std::uint64_t dim = 0) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Inverse standard normal distribution function, |error| < 1e-13 after the
// Halley refinement step.
double inverse_normal_cdf(double p);

// Standard normal distribution function (complementary-error-function based).
double normal_cdf(double x);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi_square_tail(double x, int k);

}  // namespace filtlab::mc
