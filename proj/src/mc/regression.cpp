#include "filtlab/mc/regression.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "filtlab/mc/rng.hpp"

namespace filtlab::mc {

std::vector<std::vector<double>> expand_basis(const std::vector<std::vector<double>>& features,
                                              const BasisSpec& spec) {
    FILTLAB_REQUIRE(spec.poly_degree >= 1, BasisError, "basis degree must be at least one");
    const size_t n = features.empty() ? 0 : features.front().size();
    std::vector<std::vector<double>> columns;
    columns.emplace_back(n, 1.0);  // intercept
    for (const auto& f : features) {
        FILTLAB_REQUIRE(f.size() == n, BasisError, "feature columns have different lengths");
        std::vector<double> power = f;
        for (int d = 1; d <= spec.poly_degree; ++d) {
            columns.push_back(power);
            if (d < spec.poly_degree)
                for (size_t i = 0; i < n; ++i) power[i] *= f[i];
        }
    }
    if (spec.cross_terms) {
        for (size_t a = 0; a + 1 < features.size(); ++a)
            for (size_t b = a + 1; b < features.size(); ++b) {
                std::vector<double> cross(n);
                for (size_t i = 0; i < n; ++i) cross[i] = features[a][i] * features[b][i];
                columns.push_back(std::move(cross));
            }
    }
    return columns;
}

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& columns) {
    const auto rows = static_cast<Eigen::Index>(columns.front().size());
    const auto cols = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            x(i, j) = columns[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return x;
}

Eigen::VectorXd solve_ls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    FILTLAB_REQUIRE(qr.rank() == x.cols(), BasisError,
                    "regression basis is rank deficient");
    return qr.solve(y);
}

}  // namespace

CondExpEstimate regression_cond_exp(const std::vector<double>& target,
                                    const std::vector<std::vector<double>>& features,
                                    const BasisSpec& spec) {
    const auto columns = expand_basis(features, spec);
    const size_t n = target.size();
    FILTLAB_REQUIRE(n > columns.size(), BasisError, "regression needs more samples than columns");
    const Eigen::MatrixXd x = to_matrix(columns);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) = target[i];

    CondExpEstimate out;
    const Eigen::VectorXd beta = solve_ls(x, y);
    const Eigen::VectorXd fitted = x * beta;
    out.coefficients.assign(beta.data(), beta.data() + beta.size());
    out.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    out.in_sample_rmse = std::sqrt((y - fitted).squaredNorm() / static_cast<double>(n));

    // 5-fold cross validation in fixed sample order.
    const int folds = 5;
    double press = 0.0;
    for (int fold = 0; fold < folds; ++fold) {
        std::vector<Eigen::Index> train, test;
        for (size_t i = 0; i < n; ++i)
            ((static_cast<int>(i) % folds == fold) ? test : train)
                .push_back(static_cast<Eigen::Index>(i));
        Eigen::MatrixXd xt(static_cast<Eigen::Index>(train.size()), x.cols());
        Eigen::VectorXd yt(static_cast<Eigen::Index>(train.size()));
        for (size_t r = 0; r < train.size(); ++r) {
            xt.row(static_cast<Eigen::Index>(r)) = x.row(train[r]);
            yt(static_cast<Eigen::Index>(r)) = y(train[r]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xt);
        qr.setThreshold(1e-10);
        if (qr.rank() < x.cols()) continue;  // degenerate fold; skip
        const Eigen::VectorXd beta_fold = qr.solve(yt);
        for (Eigen::Index i : test) {
            const double err = y(i) - x.row(i).dot(beta_fold);
            press += err * err;
        }
    }
    out.out_of_fold_rmse = std::sqrt(press / static_cast<double>(n));
    return out;
}

namespace {

WaldTest wald_on_block(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, Eigen::Index block_start,
                       Eigen::Index block_size) {
    const Eigen::Index n = x.rows(), p = x.cols();
    FILTLAB_REQUIRE(n > p + 2, BasisError, "too few samples for the Wald test");

    const Eigen::ArrayXd sw = w.array().sqrt();
    Eigen::MatrixXd xw = x;
    for (Eigen::Index j = 0; j < p; ++j) xw.col(j) = (xw.col(j).array() * sw).matrix();
    const Eigen::VectorXd yw = (y.array() * sw).matrix();
    const Eigen::VectorXd beta = solve_ls(xw, yw);
    const Eigen::VectorXd resid = y - x * beta;

    // HC1 sandwich: V = A^{-1} B A^{-1} * n/(n-p), A = X'WX, B = sum w^2 e^2 x x'.
    const Eigen::MatrixXd a = xw.transpose() * xw;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = w(i) * resid(i);
        b.noalias() += (s * s) * (x.row(i).transpose() * x.row(i));
    }
    const Eigen::MatrixXd a_inv = a.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd v = a_inv * b * a_inv;
    v *= static_cast<double>(n) / static_cast<double>(n - p);

    const Eigen::VectorXd beta_t = beta.segment(block_start, block_size);
    const Eigen::MatrixXd v_t = v.block(block_start, block_start, block_size, block_size);
    WaldTest out;
    out.statistic = beta_t.dot(v_t.ldlt().solve(beta_t));
    out.df = static_cast<int>(block_size);
    out.p_value = chi_square_tail(out.statistic, out.df);
    return out;
}

}  // namespace

WaldTest robust_wald_block_test(const std::vector<double>& y,
                                const std::vector<std::vector<double>>& kept_columns,
                                const std::vector<std::vector<double>>& tested_columns,
                                const std::vector<double>* weights) {
    FILTLAB_REQUIRE(!tested_columns.empty(), BasisError, "no tested columns");
    std::vector<std::vector<double>> all = kept_columns;
    all.insert(all.end(), tested_columns.begin(), tested_columns.end());
    const Eigen::MatrixXd x = to_matrix(all);
    Eigen::VectorXd yy(static_cast<Eigen::Index>(y.size()));
    for (size_t i = 0; i < y.size(); ++i) yy(static_cast<Eigen::Index>(i)) = y[i];
    Eigen::VectorXd w = Eigen::VectorXd::Ones(yy.size());
    if (weights)
        for (size_t i = 0; i < weights->size(); ++i)
            w(static_cast<Eigen::Index>(i)) = (*weights)[i];
    return wald_on_block(x, yy, w, static_cast<Eigen::Index>(kept_columns.size()),
                         static_cast<Eigen::Index>(tested_columns.size()));
}

WaldTest robust_wald_zero_mean_test(const std::vector<double>& y,
                                    const std::vector<std::vector<double>>& columns,
                                    const std::vector<double>* weights) {
    return robust_wald_block_test(y, {}, columns, weights);
}

}  // namespace filtlab::mc
