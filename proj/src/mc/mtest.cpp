#include "filtlab/mc/mtest.hpp"

#include <algorithm>
#include <numeric>

namespace filtlab::mc {

MartingaleTestResult statistical_martingale_test(
    const std::vector<std::vector<double>>& increments,
    const std::vector<std::vector<std::vector<double>>>& features, const BasisSpec& basis,
    double level, const std::vector<double>* weights,
    const std::vector<std::vector<unsigned char>>* active, int min_samples) {
    FILTLAB_REQUIRE(level > 0.0 && level < 1.0, Error, "test level must lie in (0,1)");
    FILTLAB_REQUIRE(increments.size() == features.size(), Error,
                    "statistical_martingale_test: time dimension mismatch");

    MartingaleTestResult out;
    out.level = level;
    for (size_t k = 0; k < increments.size(); ++k) {
        const auto& inc = increments[k];
        // Restrict to active rows.
        std::vector<size_t> rows;
        rows.reserve(inc.size());
        for (size_t i = 0; i < inc.size(); ++i)
            if (!active || (*active)[k][i]) rows.push_back(i);
        if (static_cast<int>(rows.size()) < min_samples) continue;

        std::vector<double> y(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) y[r] = inc[rows[r]];
        std::vector<std::vector<double>> cols;
        for (const auto& feature : features[k]) {
            std::vector<double> column(rows.size());
            for (size_t r = 0; r < rows.size(); ++r) column[r] = feature[rows[r]];
            cols.push_back(std::move(column));
        }
        std::vector<double> w;
        const std::vector<double>* w_ptr = nullptr;
        if (weights) {
            w.resize(rows.size());
            for (size_t r = 0; r < rows.size(); ++r) w[r] = (*weights)[rows[r]];
            w_ptr = &w;
        }
        const auto expanded = expand_basis(cols, basis);
        out.p_values.push_back(robust_wald_zero_mean_test(y, expanded, w_ptr).p_value);
    }

    // Holm step-down at the family level.
    out.tested = static_cast<int>(out.p_values.size());
    std::vector<int> order(out.p_values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return out.p_values[static_cast<size_t>(a)] <
                                         out.p_values[static_cast<size_t>(b)]; });
    const int m = out.tested;
    for (int rank = 0; rank < m; ++rank) {
        const int idx = order[static_cast<size_t>(rank)];
        if (out.p_values[static_cast<size_t>(idx)] <= level / static_cast<double>(m - rank))
            out.rejected_times.push_back(idx);
        else
            break;
    }
    std::sort(out.rejected_times.begin(), out.rejected_times.end());
    out.family_pass = out.rejected_times.empty();
    return out;
}

}  // namespace filtlab::mc
