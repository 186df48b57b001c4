#pragma once

#include <vector>

#include "filtlab/mc/regression.hpp"

namespace filtlab::mc {

// Per-time regression test of E[dX_{t_k} | features_{t_{k-1}}] = 0 with a
// Holm family-wise summary.
struct MartingaleTestResult {
    std::vector<double> p_values;       // one per tested time
    std::vector<int> rejected_times;    // indices into the tested set, after Holm
    bool family_pass = true;
    double level = 0.0;
    int tested = 0;
};

// increments[k][path]; features[k][feature][path] observed strictly before the
// increment.  `active` (optional) masks the paths that participate at each
// time; `weights` (optional) carries importance weights per path.
MartingaleTestResult statistical_martingale_test(
    const std::vector<std::vector<double>>& increments,
    const std::vector<std::vector<std::vector<double>>>& features, const BasisSpec& basis,
    double level, const std::vector<double>* weights = nullptr,
    const std::vector<std::vector<unsigned char>>* active = nullptr,
    int min_samples = 64);

}  // namespace filtlab::mc
