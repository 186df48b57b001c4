#include "filtlab/represent.hpp"

#include <algorithm>
#include <cmath>

#include "filtlab/cond_exp.hpp"
#include "filtlab/density.hpp"
#include "filtlab/measure_ops.hpp"

namespace filtlab {

RandomVariable claim_payoff(const AdaptedProcess& z, const RandomTimeModel& model) {
    const int n = model.scenarios();
    RandomVariable payoff(std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        if (model.tau(i) != tau_infinite) payoff[i] = z.at(model.tau(i), i);
    return payoff;
}

LProcess l_process(const RandomTimeModel& model, const AzemaBundle& bundle) {
    const int n = model.scenarios();
    const int K = model.steps();
    LProcess out;
    out.values = AdaptedProcess(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= K; ++k)
            out.values.at(k, i) = model.tau(i) > k ? 1.0 / bundle.Z.at(k, i) : 0.0;
    // Martingale increments k -> k+1 are exact while Z_{k+1} > 0 on every
    // scenario; afterwards the process is reported truncated.
    out.mart_horizon = std::min(K, bundle.gamma_valid_until - 1);
    if (out.mart_horizon < 0) out.mart_horizon = 0;
    return out;
}

OrthogonalityReport orthogonality_check(const AdaptedProcess& h, const RandomTimeModel& model,
                                        const AzemaBundle& bundle, double tol) {
    FILTLAB_REQUIRE(is_predictable(h, model.f()), MeasurabilityError,
                    "orthogonality_check: integrand must be F-predictable");
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "orthogonality_check requires immersion under P");
    FILTLAB_REQUIRE(avoidance_proxy_violation(bundle) <= tol, PreconditionError,
                    "orthogonality_check requires the avoidance proxy dA = da");

    const auto& w = model.weights();
    const AdaptedProcess n_process = compensated_default_martingale(model, bundle);
    const AdaptedProcess integral = integral_against(h, n_process);

    OrthogonalityReport report;
    for (int k = 0; k < model.grid().points(); ++k) {
        const auto projected = cond_exp_values(integral.row(k), model.f().at(k), w);
        for (double v : projected)
            report.worst_projection = std::max(report.worst_projection, std::abs(v));
    }
    for (const auto& mart : spanning_f_martingales(model.base(), w)) {
        AdaptedProcess product(model.grid().points(), model.scenarios(), Filt::G);
        for (int k = 0; k < product.points(); ++k)
            for (int i = 0; i < product.scenarios(); ++i)
                product.at(k, i) = mart.at(k, i) * integral.at(k, i);
        report.worst_product = std::max(
            report.worst_product, is_martingale(product, model.g(), w, tol).worst_violation);
    }
    report.pass = report.worst_projection <= tol && report.worst_product <= tol;
    return report;
}

ProjectionFormulaResult projection_formula(const AdaptedProcess& z, const RandomTimeModel& model,
                                           const AzemaBundle& bundle, bool whole_line, double tol) {
    FILTLAB_REQUIRE(is_predictable(z, model.f()), MeasurabilityError,
                    "projection_formula: z must be F-predictable");
    if (whole_line)
        FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                        "projection over the whole line requires immersion");
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    const RandomVariable payoff = claim_payoff(z, model);

    ProjectionFormulaResult out;
    out.direct = AdaptedProcess(K + 1, n, Filt::F);
    out.via_dual = AdaptedProcess(K + 1, n, Filt::F);
    for (int k = 0; k <= K; ++k) {
        std::vector<double> lhs_target(static_cast<size_t>(n));
        std::vector<double> rhs_target(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const bool count_all = whole_line;
            lhs_target[static_cast<size_t>(i)] =
                (count_all || model.tau(i) > k) ? payoff[i] : 0.0;
            double mass = 0.0;
            for (int j = count_all ? 1 : k + 1; j <= K; ++j)
                mass += z.at(j, i) * bundle.delta_A(j, i);
            rhs_target[static_cast<size_t>(i)] = mass;
        }
        out.direct.row(k) = cond_exp_values(lhs_target, model.f().at(k), w);
        out.via_dual.row(k) = cond_exp_values(rhs_target, model.f().at(k), w);
        for (int i = 0; i < n; ++i)
            out.violation = std::max(out.violation,
                                     std::abs(out.direct.at(k, i) - out.via_dual.at(k, i)));
    }

    if (whole_line && bundle.z_positive_on_horizon()) {
        // z e^{-Gamma} dGamma route; differs from the dA route at O(dt).
        for (int k = 0; k <= K; ++k) {
            std::vector<double> target(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                double mass = 0.0;
                for (int j = 1; j <= K; ++j)
                    mass += z.at(j, i) * std::exp(-bundle.Gamma.at(j, i)) *
                            (bundle.Gamma.at(j, i) - bundle.Gamma.at(j - 1, i));
                target[static_cast<size_t>(i)] = mass;
            }
            const auto row = cond_exp_values(target, model.f().at(k), w);
            for (int i = 0; i < n; ++i)
                out.gamma_form_gap = std::max(
                    out.gamma_form_gap,
                    std::abs(row[static_cast<size_t>(i)] - out.direct.at(k, i)));
        }
    }
    return out;
}

AdaptedProcess value_defaultable(const AdaptedProcess& z, const RandomTimeModel& model,
                                 const AzemaBundle& bundle, double tol) {
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    const RandomVariable payoff = claim_payoff(z, model);

    AdaptedProcess price(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k) {
        std::vector<double> pre(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            pre[static_cast<size_t>(i)] = model.tau(i) > k ? payoff[i] : 0.0;
        const auto projected = cond_exp_values(pre, model.f().at(k), w);
        for (int i = 0; i < n; ++i) {
            if (model.tau(i) <= k) {
                price.at(k, i) = payoff[i];  // frozen at default
            } else {
                price.at(k, i) = projected[static_cast<size_t>(i)] / bundle.Z.at(k, i);
            }
        }
    }

    // Cross-check against direct conditioning on G.
    double defect = 0.0;
    for (int k = 0; k <= K; ++k) {
        const auto direct = cond_exp_values(payoff.values(), model.g().at(k), w);
        for (int i = 0; i < n; ++i)
            defect = std::max(defect, std::abs(direct[static_cast<size_t>(i)] - price.at(k, i)));
    }
    FILTLAB_REQUIRE(defect <= tol, InternalInconsistencyError,
                    "pre-default pricing formula disagrees with direct conditioning");
    return price;
}

RepresentationResult represent_z_tau(const AdaptedProcess& z, const RandomTimeModel& model,
                                     const AzemaBundle& bundle, double tol) {
    FILTLAB_REQUIRE(is_predictable(z, model.f()), MeasurabilityError,
                    "represent_z_tau: z must be F-predictable");
    FILTLAB_REQUIRE(check_pseudo_stopping(model, tol).pass, PreconditionError,
                    "represent_z_tau requires a pseudo-stopping time");
    FILTLAB_REQUIRE(predictability_defect(bundle.Z, model.f()) <= tol, PreconditionError,
                    "represent_z_tau requires a predictable Azema supermartingale");
    for (int k = 1; k <= model.steps(); ++k)
        for (int i = 0; i < model.scenarios(); ++i)
            FILTLAB_REQUIRE(bundle.Z.at(k, i) <= bundle.Z.at(k - 1, i) + tol, PreconditionError,
                            "represent_z_tau requires a nonincreasing Azema supermartingale");

    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();

    RepresentationResult out;
    out.price = value_defaultable(z, model, bundle, tol);

    // m_t = E[sum_j z_j dA_j | F_t] and the running pre-default value h.
    std::vector<double> total_mass(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= K; ++j)
            total_mass[static_cast<size_t>(i)] += z.at(j, i) * bundle.delta_A(j, i);
    out.m = AdaptedProcess(K + 1, n, Filt::F);
    for (int k = 0; k <= K; ++k) out.m.row(k) = cond_exp_values(total_mass, model.f().at(k), w);
    out.m0 = out.m.at(0, 0);

    out.h = AdaptedProcess(K + 1, n, Filt::F);
    for (int i = 0; i < n; ++i) {
        double consumed = 0.0;
        for (int k = 0; k <= K; ++k) {
            if (k >= 1) consumed += z.at(k, i) * bundle.delta_A(k, i);
            const double zk = bundle.Z.at(k, i);
            out.h.at(k, i) = zk > 0.0 ? (out.m.at(k, i) - consumed) / zk : 0.0;
        }
    }

    // Integrands: strict survival against dm; predictable k against dN.
    out.dm_integrand = AdaptedProcess(K + 1, n, Filt::G);
    out.dn_integrand = AdaptedProcess(K + 1, n, Filt::F);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= K; ++k) {
            out.dm_integrand.at(k, i) =
                model.tau(i) > k ? 1.0 / bundle.Z.at(k, i) : 0.0;
            const double zk = bundle.Z.at(k, i);
            // On a sure-death step Z_k = 0 and the price jump is already
            // anticipated, so the integrand is immaterial there.
            out.dn_integrand.at(k, i) =
                zk > 0.0 ? (z.at(k, i) - out.h.at(k - 1, i)) * bundle.Z.at(k - 1, i) / zk : 0.0;
        }

    const AdaptedProcess n_process = compensated_default_martingale(model, bundle);
    out.dm_part = AdaptedProcess(K + 1, n, Filt::G);
    out.dn_part = AdaptedProcess(K + 1, n, Filt::G);
    out.reconstructed = AdaptedProcess(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i) {
        double dm_run = 0.0, dn_run = 0.0;
        out.reconstructed.at(0, i) = out.m0;
        for (int k = 1; k <= K; ++k) {
            dm_run += out.dm_integrand.at(k, i) * (out.m.at(k, i) - out.m.at(k - 1, i));
            dn_run += out.dn_integrand.at(k, i) * (n_process.at(k, i) - n_process.at(k - 1, i));
            out.dm_part.at(k, i) = dm_run;
            out.dn_part.at(k, i) = dn_run;
            out.reconstructed.at(k, i) = out.m0 + dm_run + dn_run;
        }
    }

    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i)
            out.residual = std::max(out.residual,
                                    std::abs(out.reconstructed.at(k, i) - out.price.at(k, i)));

    // Strong orthogonality of the two integral parts.
    AdaptedProcess product(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i) product.at(k, i) = out.dm_part.at(k, i) * out.dn_part.at(k, i);
    out.orthogonality_defect = is_martingale(product, model.g(), w, tol).worst_violation;
    return out;
}

GeneralRepresentationResult represent_general(const RandomVariable& f_terminal,
                                              const AdaptedProcess& z,
                                              const RandomTimeModel& model,
                                              const AzemaBundle& bundle, double tol) {
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    for (int i = 0; i < n; ++i)
        FILTLAB_REQUIRE(f_terminal[i] > 0.0, PreconditionError,
                        "represent_general requires a strictly positive terminal factor");
    for (const auto& block : model.f().terminal().blocks()) {
        const double ref = f_terminal[block.front()];
        for (int scenario : block)
            FILTLAB_REQUIRE(f_terminal[scenario] == ref, MeasurabilityError,
                            "terminal factor must be F_infinity-measurable");
    }
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "represent_general requires immersion under P");

    GeneralRepresentationResult out;

    // Normalize F to unit mean for the auxiliary measure; scale back at the end.
    const double f_mean = expectation(f_terminal, w);
    RandomVariable f_unit = f_terminal;
    for (int i = 0; i < n; ++i) f_unit[i] /= f_mean;

    const DensityModel tilt = build_density(model, f_unit, DensityFamily::f_infinity, true);
    const RandomTimeModel q_model = model.reweighted(tilt.q_weights());
    const AzemaBundle q_bundle = azema_bundle(q_model);
    const RepresentationResult rep_q = represent_z_tau(z, q_model, q_bundle, tol);

    out.m_f = AdaptedProcess(K + 1, n, Filt::F);
    out.m_g = AdaptedProcess(K + 1, n, Filt::F);
    const RandomVariable payoff = claim_payoff(z, model);
    std::vector<double> g_values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g_values[static_cast<size_t>(i)] = f_terminal[i] * payoff[i];
    for (int k = 0; k <= K; ++k) {
        out.m_f.row(k) = cond_exp_values(f_terminal.values(), model.f().at(k), w);
        out.m_g.row(k) = cond_exp_values(g_values, model.f().at(k), w);
    }
    out.g_mean = expectation(g_values, w);
    out.dn_integrand = rep_q.dn_integrand;

    // Y_t = sum L_{s-1} d(m^G/m^F)_s, the dm-part of the Q~ representation
    // expressed through P-observables.
    const LProcess l_q = l_process(q_model, q_bundle);
    out.y = AdaptedProcess(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i) {
        double run = 0.0;
        for (int k = 1; k <= K; ++k) {
            const double ratio_now = out.m_g.at(k, i) / out.m_f.at(k, i);
            const double ratio_prev = out.m_g.at(k - 1, i) / out.m_f.at(k - 1, i);
            run += l_q.values.at(k - 1, i) * (ratio_now - ratio_prev);
            out.y.at(k, i) = run;
        }
    }

    // Exact assembly: E[F z_tau | G_t] = m^F_t * (Q~-price of z_tau).
    out.reconstructed = AdaptedProcess(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i)
            out.reconstructed.at(k, i) = out.m_f.at(k, i) * rep_q.reconstructed.at(k, i);

    out.price = AdaptedProcess(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k) {
        const auto direct = cond_exp_values(g_values, model.g().at(k), w);
        for (int i = 0; i < n; ++i) out.price.at(k, i) = direct[static_cast<size_t>(i)];
    }
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i)
            out.residual = std::max(out.residual,
                                    std::abs(out.reconstructed.at(k, i) - out.price.at(k, i)));
    return out;
}

OrthogonalDecomposition orthogonal_decompose(const AdaptedProcess& martingale,
                                             const RandomTimeModel& model,
                                             const AzemaBundle& bundle, double tol) {
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "orthogonal_decompose requires immersion under P");
    const auto& w = model.weights();
    FILTLAB_REQUIRE(is_martingale(martingale, model.g(), w, tol).pass, PreconditionError,
                    "orthogonal_decompose expects a G-martingale");
    const int n = model.scenarios();
    const int K = model.steps();
    const AdaptedProcess n_process = compensated_default_martingale(model, bundle);

    OrthogonalDecomposition out;
    out.h = AdaptedProcess(K + 1, n, Filt::F);
    for (int k = 1; k <= K; ++k) {
        const Partition& gprev = model.g().at(k - 1);
        // Projection coefficient per lagged G-block, then extended to the
        // F-block so the reported integrand is genuinely F-predictable.
        std::vector<double> coeff(static_cast<size_t>(n), 0.0);
        for (int b = 0; b < gprev.block_count(); ++b) {
            double mass = 0.0, cov = 0.0, var = 0.0;
            for (int scenario : gprev.block(b)) {
                const double weight = w[static_cast<size_t>(scenario)];
                const double dn = n_process.at(k, scenario) - n_process.at(k - 1, scenario);
                const double dm = martingale.at(k, scenario) - martingale.at(k - 1, scenario);
                mass += weight;
                cov += weight * dm * dn;
                var += weight * dn * dn;
            }
            cov /= mass;
            var /= mass;
            double value = 0.0;
            if (var > 0.0) {
                value = cov / var;
            } else {
                FILTLAB_REQUIRE(std::abs(cov) <= tol, IllPosedProjectionError,
                                "dN degenerate on a block carrying covariance");
            }
            for (int scenario : gprev.block(b)) coeff[static_cast<size_t>(scenario)] = value;
        }
        // F-predictable extension: the alive value propagates across its F-block.
        const Partition& fprev = model.f().at(k - 1);
        for (int b = 0; b < fprev.block_count(); ++b) {
            double alive_value = 0.0;
            for (int scenario : fprev.block(b))
                if (model.tau(scenario) >= k) {
                    alive_value = coeff[static_cast<size_t>(scenario)];
                    break;
                }
            for (int scenario : fprev.block(b)) out.h.at(k, scenario) = alive_value;
        }
    }

    const AdaptedProcess dn_part = integral_against(out.h, n_process);
    out.v = AdaptedProcess(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i)
            out.v.at(k, i) = martingale.at(k, i) - martingale.at(0, i) - dn_part.at(k, i);

    AdaptedProcess product(K + 1, n, Filt::G);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i) product.at(k, i) = out.v.at(k, i) * dn_part.at(k, i);
    out.product_defect = is_martingale(product, model.g(), w, tol).worst_violation;
    return out;
}

}  // namespace filtlab
