#pragma once

#include <vector>

#include "filtlab/errors.hpp"

namespace filtlab::mc {

// Basis expansion: powers 1..poly_degree of every feature column, an
// intercept, optional pairwise cross terms of the raw features.
struct BasisSpec {
    int poly_degree = 3;
    bool cross_terms = false;
};

// Returns basis columns (intercept first), each of length n_samples.
std::vector<std::vector<double>> expand_basis(const std::vector<std::vector<double>>& features,
                                              const BasisSpec& spec);

struct CondExpEstimate {
    std::vector<double> coefficients;
    std::vector<double> fitted;
    double in_sample_rmse = 0.0;
    double out_of_fold_rmse = 0.0;  // 5-fold cross validation
};

// Least-squares conditional-mean estimate of `target` on the expanded basis.
// Rank deficiency raises BasisError.
CondExpEstimate regression_cond_exp(const std::vector<double>& target,
                                    const std::vector<std::vector<double>>& features,
                                    const BasisSpec& spec);

// Heteroskedasticity-robust Wald test that a block of coefficients vanishes in
// the (optionally weighted) regression of y on [kept columns, tested columns].
struct WaldTest {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};
WaldTest robust_wald_block_test(const std::vector<double>& y,
                                const std::vector<std::vector<double>>& kept_columns,
                                const std::vector<std::vector<double>>& tested_columns,
                                const std::vector<double>* weights = nullptr);

// Robust Wald test that the whole conditional mean of y given the columns is
// zero (all coefficients including the intercept).
WaldTest robust_wald_zero_mean_test(const std::vector<double>& y,
                                    const std::vector<std::vector<double>>& columns,
                                    const std::vector<double>* weights = nullptr);

}  // namespace filtlab::mc
