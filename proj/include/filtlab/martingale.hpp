#pragma once

#include <string>
#include <vector>

#include "filtlab/process.hpp"

namespace filtlab {

// Verdict of an exact-mode martingale check, with the worst offending
// (time, block) for diagnosis.
struct MartingaleVerdict {
    bool pass = true;
    double worst_violation = 0.0;
    int worst_time = -1;   // index k of the increment t_k -> t_{k+1}
    int worst_block = -1;  // block index in the partition at t_k
    double tol = 0.0;

    explicit operator bool() const { return pass; }
    std::string describe() const;
};

// True iff max over k < K and blocks B of the partition at t_k of
// |E[X_{t_{k+1}} - X_{t_k} | B]| <= tol.  X must be adapted to `filtration`.
// The check may be restricted to increments k < horizon (default: all).
MartingaleVerdict is_martingale(const AdaptedProcess& x, const Filtration& filtration,
                                const std::vector<double>& weights, double tol,
                                int horizon = -1);

}  // namespace filtlab
