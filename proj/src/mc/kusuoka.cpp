#include "filtlab/mc/kusuoka.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace filtlab::mc {

double KusuokaSpec::mu(double, double x_stopped, double) const { return coupling * x_stopped; }

KusuokaRun kusuoka_scenario(const KusuokaSpec& spec, int steps, int n_paths, std::uint64_t seed,
                            std::uint64_t stream) {
    FILTLAB_REQUIRE(spec.sigma2 > 0.0, Error, "observation volatility must stay positive");
    FILTLAB_REQUIRE(spec.sigma1 > 0.0, Error, "hidden volatility must stay positive");
    const TimeGrid grid = TimeGrid::uniform(steps, spec.horizon);
    const CounterRng rng(seed, stream);

    KusuokaRun run;
    run.grid = grid;
    run.y.assign(static_cast<size_t>(n_paths), std::vector<double>(static_cast<size_t>(steps + 1)));
    run.x = run.y;
    run.min_y = run.y;
    run.db2.assign(static_cast<size_t>(n_paths), std::vector<double>(static_cast<size_t>(steps)));
    run.tau_index.assign(static_cast<size_t>(n_paths), std::numeric_limits<int>::max());

    for (int p = 0; p < n_paths; ++p) {
        auto& x = run.x[static_cast<size_t>(p)];
        auto& y = run.y[static_cast<size_t>(p)];
        auto& my = run.min_y[static_cast<size_t>(p)];
        x[0] = spec.x0;
        y[0] = spec.y0;
        my[0] = spec.y0;
        bool absorbed = spec.x0 <= 0.0;
        if (absorbed) run.tau_index[static_cast<size_t>(p)] = 0;
        for (int k = 1; k <= steps; ++k) {
            const double dt = grid.dt(k);
            const double sdt = std::sqrt(dt);
            const double db1 = rng.normal(static_cast<std::uint64_t>(p),
                                          static_cast<std::uint64_t>(k), 0) * sdt;
            const double db2 = rng.normal(static_cast<std::uint64_t>(p),
                                          static_cast<std::uint64_t>(k), 1) * sdt;
            run.db2[static_cast<size_t>(p)][static_cast<size_t>(k - 1)] = db2;

            double next_x = x[static_cast<size_t>(k - 1)];
            if (!absorbed) {
                next_x += spec.drift_x * dt + spec.sigma1 * db1;
                if (next_x <= 0.0) {
                    next_x = 0.0;
                    absorbed = true;
                    run.tau_index[static_cast<size_t>(p)] = k;
                }
            }
            x[static_cast<size_t>(k)] = next_x;

            const double drift =
                spec.mu(grid.time(k - 1), x[static_cast<size_t>(k - 1)], y[static_cast<size_t>(k - 1)]);
            y[static_cast<size_t>(k)] = y[static_cast<size_t>(k - 1)] + drift * dt + spec.sigma2 * db2;
            my[static_cast<size_t>(k)] =
                std::min(my[static_cast<size_t>(k - 1)], y[static_cast<size_t>(k)]);
        }
    }
    return run;
}

HViolationTest h_violation_detector(const KusuokaRun& run, double level, int s_index,
                                    int t_index) {
    const int steps = run.grid.steps();
    if (s_index < 0) s_index = (2 * steps) / 5;
    if (t_index < 0) t_index = (7 * steps) / 10;
    FILTLAB_REQUIRE(0 < s_index && s_index < t_index && t_index <= steps, Error,
                    "h_violation_detector: bad time pair");
    const int n = run.paths();

    std::vector<double> target(static_cast<size_t>(n));
    std::vector<double> ys(static_cast<size_t>(n)), ys2(static_cast<size_t>(n)),
        ys3(static_cast<size_t>(n)), ms(static_cast<size_t>(n));
    std::vector<double> dy(static_cast<size_t>(n)), dy2(static_cast<size_t>(n)),
        ydy(static_cast<size_t>(n)), dm(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        const auto pp = static_cast<size_t>(p);
        target[pp] = run.tau_index[pp] <= s_index ? 1.0 : 0.0;
        const double y_s = run.y[pp][static_cast<size_t>(s_index)];
        const double y_t = run.y[pp][static_cast<size_t>(t_index)];
        ys[pp] = y_s;
        ys2[pp] = y_s * y_s;
        ys3[pp] = ys2[pp] * y_s;
        ms[pp] = run.min_y[pp][static_cast<size_t>(s_index)];
        const double d = y_t - y_s;
        dy[pp] = d;
        dy2[pp] = d * d;
        ydy[pp] = y_s * d;
        dm[pp] = run.min_y[pp][static_cast<size_t>(t_index)] - ms[pp];
    }
    const std::vector<double> ones(static_cast<size_t>(n), 1.0);

    HViolationTest out;
    out.level = level;
    out.s_index = s_index;
    out.t_index = t_index;
    const WaldTest wald = robust_wald_block_test(target, {ones, ys, ys2, ys3, ms},
                                                 {dy, dy2, ydy, dm});
    out.p_value = wald.p_value;
    out.reject = out.p_value <= level;
    return out;
}

std::vector<double> drift_removal_weights(const KusuokaRun& run, const KusuokaSpec& spec) {
    const int steps = run.grid.steps();
    std::vector<double> weights(static_cast<size_t>(run.paths()));
    for (int p = 0; p < run.paths(); ++p) {
        const auto pp = static_cast<size_t>(p);
        double log_rho = 0.0;
        for (int k = 1; k <= steps; ++k) {
            const double dt = run.grid.dt(k);
            const double theta = spec.mu(run.grid.time(k - 1), run.x[pp][static_cast<size_t>(k - 1)],
                                         run.y[pp][static_cast<size_t>(k - 1)]) /
                                 spec.sigma2;
            log_rho -= theta * run.db2[pp][static_cast<size_t>(k - 1)] + 0.5 * theta * theta * dt;
        }
        weights[pp] = std::exp(log_rho);
    }
    return weights;
}

DriftRemovalCheck drift_removal_check(const KusuokaRun& run, const KusuokaSpec& spec,
                                      double level) {
    const int steps = run.grid.steps();
    const int n = run.paths();
    const int n_est = n / 2;
    DriftRemovalCheck out;
    out.estimation_paths = n_est;
    out.test_paths = n - n_est;

    // Survival hazard from the estimation half.  The default-time marginal is
    // unchanged by the drift removal (the density integrates to one given the
    // hidden driver), so the unweighted estimate targets the Q-hazard.
    out.hazard.assign(static_cast<size_t>(steps + 1), 0.0);
    for (int k = 1; k <= steps; ++k) {
        int alive = 0, hit = 0;
        for (int p = 0; p < n_est; ++p) {
            if (run.tau_index[static_cast<size_t>(p)] >= k) {
                ++alive;
                if (run.tau_index[static_cast<size_t>(p)] == k) ++hit;
            }
        }
        out.hazard[static_cast<size_t>(k)] =
            alive > 0 ? static_cast<double>(hit) / alive : 0.0;
    }

    const std::vector<double> rho = drift_removal_weights(run, spec);

    // Per-time feature-block tests on the held-out half: the intercept stays
    // in the kept block so hazard-estimation noise is absorbed, and the tested
    // block asks whether pre-t observables predict the compensated increment.
    MartingaleTestResult family;
    family.level = level;
    std::vector<double> per_time_p;
    for (int k = 1; k <= steps; ++k) {
        std::vector<double> y_inc, c_y, c_m, c_w;
        for (int p = n_est; p < n; ++p) {
            const auto pp = static_cast<size_t>(p);
            if (run.tau_index[pp] < k) continue;  // only live paths carry dN
            const double dn = (run.tau_index[pp] == k ? 1.0 : 0.0) -
                              out.hazard[static_cast<size_t>(k)];
            y_inc.push_back(dn);
            c_y.push_back(run.y[pp][static_cast<size_t>(k - 1)]);
            c_m.push_back(run.min_y[pp][static_cast<size_t>(k - 1)]);
            c_w.push_back(rho[pp]);
        }
        if (static_cast<int>(y_inc.size()) < 64) continue;
        std::vector<double> ones(y_inc.size(), 1.0);
        std::vector<double> y2(y_inc.size());
        for (size_t i = 0; i < y_inc.size(); ++i) y2[i] = c_y[i] * c_y[i];
        const WaldTest wald = robust_wald_block_test(y_inc, {ones}, {c_y, y2, c_m}, &c_w);
        per_time_p.push_back(wald.p_value);
    }

    // Global level test with the hazard-estimation variance folded in.
    {
        double wsum = 0.0, mean = 0.0;
        std::vector<double> totals;
        std::vector<double> ws;
        for (int p = n_est; p < n; ++p) {
            const auto pp = static_cast<size_t>(p);
            double total = 0.0;
            for (int k = 1; k <= steps; ++k) {
                if (run.tau_index[pp] < k) break;
                total += (run.tau_index[pp] == k ? 1.0 : 0.0) - out.hazard[static_cast<size_t>(k)];
            }
            totals.push_back(total);
            ws.push_back(rho[pp]);
            wsum += rho[pp];
            mean += rho[pp] * total;
        }
        mean /= wsum;
        double var_test = 0.0, w2 = 0.0;
        for (size_t i = 0; i < totals.size(); ++i) {
            var_test += ws[i] * ws[i] * (totals[i] - mean) * (totals[i] - mean);
            w2 += ws[i] * ws[i];
        }
        var_test /= wsum * wsum;  // variance of the weighted mean
        // Estimation-half contribution: totals are linear in each hazard value.
        double var_est = 0.0;
        for (int k = 1; k <= steps; ++k) {
            int alive_est = 0;
            for (int p = 0; p < n_est; ++p)
                if (run.tau_index[static_cast<size_t>(p)] >= k) ++alive_est;
            if (alive_est == 0) continue;
            double alive_frac = 0.0;
            for (int p = n_est; p < n; ++p)
                if (run.tau_index[static_cast<size_t>(p)] >= k)
                    alive_frac += ws[static_cast<size_t>(p - n_est)];
            alive_frac /= wsum;
            const double h = out.hazard[static_cast<size_t>(k)];
            var_est += h * (1.0 - h) / alive_est * alive_frac * alive_frac;
        }
        const double z = mean / std::sqrt(var_test + var_est);
        per_time_p.push_back(2.0 * (1.0 - normal_cdf(std::abs(z))));
    }

    family.p_values = per_time_p;
    family.tested = static_cast<int>(per_time_p.size());
    std::vector<int> order(per_time_p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return per_time_p[static_cast<size_t>(a)] < per_time_p[static_cast<size_t>(b)];
    });
    for (int rank = 0; rank < family.tested; ++rank) {
        const int idx = order[static_cast<size_t>(rank)];
        if (per_time_p[static_cast<size_t>(idx)] <=
            level / static_cast<double>(family.tested - rank))
            family.rejected_times.push_back(idx);
        else
            break;
    }
    std::sort(family.rejected_times.begin(), family.rejected_times.end());
    family.family_pass = family.rejected_times.empty();
    out.n_test = family;
    return out;
}

BrownianSplitReport brownian_split_diagnostic(const KusuokaRun& run, const KusuokaSpec& spec) {
    // Default-protection claim: D = 1_{tau <= T}.  Its innovations are fitted
    // on the observation shock and on the compensated jump; residual variances
    // report how much of the claim's flow each integral carries.
    const int steps = run.grid.steps();
    const int n = run.paths();
    const std::vector<double> rho = drift_removal_weights(run, spec);

    std::vector<double> hazard(static_cast<size_t>(steps + 1), 0.0);
    for (int k = 1; k <= steps; ++k) {
        int alive = 0, hit = 0;
        for (int p = 0; p < n; ++p)
            if (run.tau_index[static_cast<size_t>(p)] >= k) {
                ++alive;
                if (run.tau_index[static_cast<size_t>(p)] == k) ++hit;
            }
        hazard[static_cast<size_t>(k)] = alive > 0 ? static_cast<double>(hit) / alive : 0.0;
    }

    BrownianSplitReport report;
    double base = 0.0, after_dw = 0.0, after_dn = 0.0;
    double mass = 0.0;
    for (int k = 1; k <= steps; ++k) {
        std::vector<double> dv, dw_col, dn_col, w_col;
        for (int p = 0; p < n; ++p) {
            const auto pp = static_cast<size_t>(p);
            if (run.tau_index[pp] < k) continue;
            const double dn = (run.tau_index[pp] == k ? 1.0 : 0.0) - hazard[static_cast<size_t>(k)];
            // Innovation proxy of the protection claim on the live region.
            dv.push_back(dn);
            dw_col.push_back(run.db2[pp][static_cast<size_t>(k - 1)]);
            dn_col.push_back(dn);
            w_col.push_back(rho[pp]);
        }
        if (dv.size() < 32) continue;
        auto weighted_ssr = [&](const std::vector<double>& resid) {
            double ssr = 0.0, wsum = 0.0;
            for (size_t i = 0; i < resid.size(); ++i) {
                ssr += w_col[i] * resid[i] * resid[i];
                wsum += w_col[i];
            }
            return ssr / wsum;
        };
        base += weighted_ssr(dv);
        // Project on the observation shock.
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < dv.size(); ++i) {
            num += w_col[i] * dv[i] * dw_col[i];
            den += w_col[i] * dw_col[i] * dw_col[i];
        }
        const double beta_w = den > 0.0 ? num / den : 0.0;
        std::vector<double> resid_w(dv.size());
        for (size_t i = 0; i < dv.size(); ++i) resid_w[i] = dv[i] - beta_w * dw_col[i];
        after_dw += weighted_ssr(resid_w);
        // Add the compensated jump column.
        double num2 = 0.0, den2 = 0.0;
        for (size_t i = 0; i < dv.size(); ++i) {
            num2 += w_col[i] * resid_w[i] * dn_col[i];
            den2 += w_col[i] * dn_col[i] * dn_col[i];
        }
        const double beta_n = den2 > 0.0 ? num2 / den2 : 0.0;
        std::vector<double> resid_n(dv.size());
        for (size_t i = 0; i < dv.size(); ++i) resid_n[i] = resid_w[i] - beta_n * dn_col[i];
        after_dn += weighted_ssr(resid_n);
        mass += 1.0;
    }
    if (mass > 0.0) {
        report.base_residual = base / mass;
        report.dw_residual = after_dw / mass;
        report.dn_residual = after_dn / mass;
    }
    return report;
}

}  // namespace filtlab::mc
