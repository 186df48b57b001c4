#include "filtlab/measure_ops.hpp"

#include <cmath>
#include <sstream>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

double avoidance_proxy_violation(const AzemaBundle& bundle) {
    double worst = 0.0;
    for (int k = 0; k < bundle.A.points(); ++k)
        for (int i = 0; i < bundle.A.scenarios(); ++i)
            worst = std::max(worst, std::abs(bundle.delta_A(k, i) - bundle.delta_a(k, i)));
    return worst;
}

AdaptedProcess girsanov_transfer(const AdaptedProcess& x, const RandomTimeModel& model,
                                 const DensityModel& density, double tol) {
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "girsanov_transfer requires immersion under P");
    const int n = model.scenarios();
    const int K = model.steps();
    FILTLAB_REQUIRE(x.points() == K + 1 && x.scenarios() == n, InvalidSpaceError,
                    "girsanov_transfer: shape mismatch");
    const AdaptedProcess& eta = density.eta();
    AdaptedProcess out(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i) {
        double correction = 0.0;
        out.at(0, i) = x.at(0, i);
        for (int k = 1; k <= K; ++k) {
            const double eta_prev = eta.at(k - 1, i);
            FILTLAB_REQUIRE(eta_prev > 0.0, InvalidDensityError,
                            "girsanov_transfer: eta vanished");
            correction += (x.at(k, i) - x.at(k - 1, i)) * (eta.at(k, i) - eta_prev) / eta_prev;
            out.at(k, i) = x.at(k, i) + correction;
        }
    }
    return out;
}

JyConditionReport jy_condition_check(const RandomTimeModel& model, const DensityModel& density,
                                     double tol) {
    const auto& w = model.weights();
    const int n = model.scenarios();
    JyConditionReport report;
    report.tol = tol;

    const Partition& terminal = model.f().terminal();
    for (int b = 0; b < terminal.block_count(); ++b) {
        std::vector<double> x_rho(static_cast<size_t>(n), 0.0);
        for (int scenario : terminal.block(b))
            x_rho[static_cast<size_t>(scenario)] = density.rho()[scenario];
        for (int k = 0; k < model.grid().points(); ++k) {
            const auto num_g = cond_exp_values(x_rho, model.g().at(k), w);
            const auto num_f = cond_exp_values(x_rho, model.f().at(k), w);
            for (int i = 0; i < n; ++i) {
                const double lhs = num_g[static_cast<size_t>(i)] / density.big_e().at(k, i);
                const double rhs = num_f[static_cast<size_t>(i)] / density.e().at(k, i);
                report.worst_violation = std::max(report.worst_violation, std::abs(lhs - rhs));
            }
        }
    }
    report.condition_holds = report.worst_violation <= tol;
    report.h_under_q = check_H(model.reweighted(density.q_weights()), tol).immersion();
    FILTLAB_REQUIRE(report.condition_holds == report.h_under_q, InternalInconsistencyError,
                    "transfer condition and immersion-under-Q verdicts disagree");
    return report;
}

FInftyInvarianceReport f_infty_invariance(const RandomTimeModel& model, const AzemaBundle& bundle,
                                          const DensityModel& density, double tol) {
    FILTLAB_REQUIRE(density.family() == DensityFamily::f_infinity, PreconditionError,
                    "f_infty_invariance needs a density tagged F-infinity-measurable");
    // The tag must be truthful: rho constant on terminal F-blocks.
    for (const auto& block : model.f().terminal().blocks()) {
        const double ref = density.rho()[block.front()];
        for (int scenario : block)
            FILTLAB_REQUIRE(density.rho()[scenario] == ref, PreconditionError,
                            "density is not F_infinity-measurable");
    }
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "f_infty_invariance requires immersion under P");

    FInftyInvarianceReport report;
    const RandomTimeModel q_model = model.reweighted(density.q_weights());
    const AzemaBundle q_bundle = azema_bundle(q_model);
    for (int k = 0; k < bundle.Z.points(); ++k)
        for (int i = 0; i < model.scenarios(); ++i)
            report.z_invariance_violation = std::max(
                report.z_invariance_violation,
                std::abs(q_bundle.Z.at(k, i) - bundle.Z.at(k, i)));

    const AdaptedProcess n_process = compensated_default_martingale(model, bundle);
    report.n_under_q = is_martingale(n_process, model.g(), density.q_weights(), tol);
    report.h_under_q = check_H(q_model, tol).immersion();
    report.pass = report.z_invariance_violation <= tol && report.n_under_q.pass &&
                  report.h_under_q;
    return report;
}

DensityModel build_fh_density(const RandomTimeModel& model, const AzemaBundle& bundle,
                              const RandomVariable& f_terminal, const AdaptedProcess& z_shape,
                              double tol) {
    const int n = model.scenarios();
    const int K = model.steps();
    FILTLAB_REQUIRE(f_terminal.size() == n, InvalidDensityError, "F size mismatch");
    FILTLAB_REQUIRE(z_shape.points() == K + 1 && z_shape.scenarios() == n, InvalidDensityError,
                    "z shape mismatch");
    FILTLAB_REQUIRE(is_predictable(z_shape, model.f()), MeasurabilityError,
                    "z must be F-predictable");
    for (const auto& block : model.f().terminal().blocks()) {
        const double ref = f_terminal[block.front()];
        for (int scenario : block)
            FILTLAB_REQUIRE(f_terminal[scenario] == ref, MeasurabilityError,
                            "F must be F_infinity-measurable");
    }
    for (int i = 0; i < n; ++i)
        FILTLAB_REQUIRE(f_terminal[i] > 0.0, InvalidDensityError, "F must be strictly positive");
    FILTLAB_REQUIRE(std::abs(expectation(f_terminal, model.weights()) - 1.0) <= 1e-9,
                    InvalidDensityError, "F must have unit mean");
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "the FH construction requires immersion under P");
    FILTLAB_REQUIRE(avoidance_proxy_violation(bundle) <= tol, PreconditionError,
                    "the FH construction requires the avoidance proxy dA = da");
    FILTLAB_REQUIRE(bundle.z_positive_on_horizon(), PreconditionError,
                    "the FH construction requires Z > 0 on the horizon");

    // Tilted hazard per step: lambda^Q_j = z_j * lambda_j, with the running
    // correction K making E[H|F_infty] = 1 exact.
    RandomVariable rho(std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        double correction = 1.0;  // prod_{j < tau} (1 - z lambda) / (1 - lambda)
        double h_value = 0.0;
        const int tau = model.tau(i);
        for (int k = 1; k <= K; ++k) {
            const double lambda = bundle.delta_Lambda(k, i);
            const double tilted = z_shape.at(k, i) * lambda;
            FILTLAB_REQUIRE(tilted < 1.0, InvalidDensityError,
                            "tilted hazard reaches one; measures would not be equivalent");
            FILTLAB_REQUIRE(lambda == 0.0 || tilted > 0.0, InvalidDensityError,
                            "z vanishes where default mass lives; invalid normalization");
            if (k == tau) {
                h_value = z_shape.at(k, i) * correction;
                break;
            }
            correction *= (1.0 - tilted) / (1.0 - lambda);
        }
        if (tau == tau_infinite) h_value = correction;
        rho[i] = f_terminal[i] * h_value;
    }
    return build_density(model, std::move(rho), DensityFamily::fh, /*auto_normalize=*/true);
}

namespace {

// Partition generated by (tau, driver history up to tau): scenarios agree when
// they default at the same grid time and share the F-block path up to it.
Partition f_tau_partition(const RandomTimeModel& model) {
    const int n = model.scenarios();
    std::vector<std::vector<int>> labels(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& label = labels[static_cast<size_t>(i)];
        label.push_back(model.tau(i));
        const int last = std::min(model.tau(i), model.steps());
        for (int k = 0; k <= last; ++k) label.push_back(model.f().at(k).block_of(i));
    }
    return Partition::group_by(labels);
}

}  // namespace

FHFactorization factorize_fh(const RandomTimeModel& model, const DensityModel& density,
                             double tol) {
    FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                    "factorize_fh requires immersion under P");
    const int n = model.scenarios();
    const int K = model.steps();
    FHFactorization out;
    out.f_terminal = RandomVariable(density.e().row(K));
    out.h_pre_default = RandomVariable(std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) out.h_pre_default[i] = 1.0 / density.eta().at(K, i);

    const auto h_cond_mean =
        cond_exp_values(out.h_pre_default.values(), model.f().at(K), model.weights());
    for (int i = 0; i < n; ++i)
        out.conditional_mean_violation =
            std::max(out.conditional_mean_violation, std::abs(h_cond_mean[static_cast<size_t>(i)] - 1.0));

    const Partition pre_default = f_tau_partition(model);
    for (const auto& block : pre_default.blocks()) {
        const double ref = out.h_pre_default[block.front()];
        for (int scenario : block)
            out.f_tau_measurability_violation = std::max(
                out.f_tau_measurability_violation, std::abs(out.h_pre_default[scenario] - ref));
    }

    for (int i = 0; i < n; ++i)
        out.product_violation = std::max(
            out.product_violation,
            std::abs(density.rho()[i] - out.f_terminal[i] * out.h_pre_default[i]));

    out.h_under_q = check_H(model.reweighted(density.q_weights()), tol).immersion();
    out.factorizable = out.conditional_mean_violation <= tol &&
                       out.f_tau_measurability_violation <= tol && out.product_violation <= tol;
    if (!out.factorizable) {
        std::ostringstream os;
        os << "pre-default factor fails F_tau-measurability (violation "
           << out.f_tau_measurability_violation << "); immersion under Q "
           << (out.h_under_q ? "holds" : "fails");
        out.obstruction = os.str();
    }
    return out;
}

ExponentialDensity exponential_density(const RandomTimeModel& model, const AzemaBundle& bundle,
                                       const AdaptedProcess& f_proc, const AdaptedProcess& h_proc,
                                       const AdaptedProcess& f_martingale, const AdaptedProcess& n,
                                       double tol) {
    const int count = model.scenarios();
    const int K = model.steps();
    FILTLAB_REQUIRE(f_proc.points() == K + 1 && h_proc.points() == K + 1 &&
                        f_martingale.points() == K + 1 && n.points() == K + 1,
                    InvalidSpaceError, "exponential_density: shape mismatch");

    bool f_active = false, h_active = false;
    for (int k = 1; k <= K; ++k)
        for (int i = 0; i < count; ++i) {
            f_active = f_active || f_proc.at(k, i) != 0.0;
            h_active = h_active || h_proc.at(k, i) != 0.0;
        }
    FILTLAB_REQUIRE(is_predictable(h_proc, model.f()), MeasurabilityError,
                    "H integrand must be F-predictable");
    // G-predictability of the dm integrand: measurable for G at the previous time.
    for (int k = 1; k <= K; ++k)
        for (const auto& block : model.g().at(k - 1).blocks()) {
            const double ref = f_proc.at(k, block.front());
            for (int scenario : block)
                FILTLAB_REQUIRE(f_proc.at(k, scenario) == ref, MeasurabilityError,
                                "F integrand must be G-predictable");
        }
    const bool f_proc_predictable = is_predictable(f_proc, model.f());
    if (f_active) {
        FILTLAB_REQUIRE(check_H(model, tol).immersion(), PreconditionError,
                        "a dm-part requires immersion under P");
        FILTLAB_REQUIRE(is_adapted(f_martingale, model.f()) &&
                            is_martingale(f_martingale, model.f(), model.weights(), tol).pass,
                        PreconditionError, "the dm driver must be an F-martingale");
        if (h_active)
            FILTLAB_REQUIRE(avoidance_proxy_violation(bundle) <= tol, PreconditionError,
                            "mixing dm and dN parts requires the avoidance proxy dA = da");
    }

    AdaptedProcess e_process(K + 1, count, Filt::G, 1.0);
    for (int i = 0; i < count; ++i) {
        double value = 1.0;
        for (int k = 1; k <= K; ++k) {
            const double fm = 1.0 + f_proc.at(k, i) * (f_martingale.at(k, i) - f_martingale.at(k - 1, i));
            const double fn = 1.0 + h_proc.at(k, i) * (n.at(k, i) - n.at(k - 1, i));
            if (fm <= 0.0 || fn <= 0.0) {
                std::ostringstream os;
                os << "exponential factor nonpositive at scenario " << i << ", time index " << k;
                throw InvalidDensityError(os.str());
            }
            value *= fm * fn;
            e_process.at(k, i) = value;
        }
    }

    DensityModel density = build_density(model, e_process.terminal(), DensityFamily::exponential,
                                         /*auto_normalize=*/true);
    return ExponentialDensity{std::move(density), std::move(e_process), f_proc,     h_proc,
                              f_active,           h_active,             f_proc_predictable};
}

QAzemaReport azema_under_q(const RandomTimeModel& model, const AzemaBundle& bundle,
                           const DensityModel& density, const ExponentialDensity* exponential,
                           double tol) {
    QAzemaReport report;
    const RandomTimeModel q_model = model.reweighted(density.q_weights());
    const AzemaBundle q_bundle = azema_bundle(q_model);
    report.z_q = q_bundle.Z;
    report.lambda_q = q_bundle.Lambda;
    report.n_q = compensated_default_martingale(q_model, q_bundle);
    report.n_q_exact = is_martingale(report.n_q, model.g(), density.q_weights(), tol);

    if (density.family() != DensityFamily::exponential) {
        FILTLAB_REQUIRE(exponential == nullptr, Error,
                        "unsupported family: theorem checks need an exponential density");
        return report;
    }
    FILTLAB_REQUIRE(exponential != nullptr, Error,
                    "exponential-family verification needs the construction record");
    report.theorem_checked = true;
    report.h_under_q = check_H(q_model, tol).immersion();

    const int n = model.scenarios();
    const int K = model.steps();
    const AdaptedProcess& h_proc = exponential->h_proc;

    // N compensated with the (1 + H) dLambda^P rate instead of the exact
    // Q-compensator; its violation under Q decays with the grid.
    AdaptedProcess n_theorem(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i) {
        double compensator = 0.0;
        for (int k = 0; k <= K; ++k) {
            if (k >= 1 && model.tau(i) >= k)
                compensator += (1.0 + h_proc.at(k, i)) * bundle.delta_Lambda(k, i);
            n_theorem.at(k, i) = (model.defaulted_by(i, k) ? 1.0 : 0.0) - compensator;
        }
    }
    report.n_theorem_discrepancy =
        is_martingale(n_theorem, model.g(), density.q_weights(), tol).worst_violation;

    if (!exponential->h_part_active) {
        // dLambda invariance, on blocks that are still reachable under both measures.
        for (int k = 0; k <= K; ++k)
            for (int i = 0; i < n; ++i)
                if (model.tau(i) >= k)
                    report.lambda_invariance_violation = std::max(
                        report.lambda_invariance_violation,
                        std::abs(q_bundle.delta_Lambda(k, i) - bundle.delta_Lambda(k, i)));
    }

    if (exponential->f_proc_predictable) {
        // Exact product form Z^Q = Z prod(1 - H dLambda) and the continuous
        // exponential closed form, which differs at O(dt).
        for (int i = 0; i < n; ++i) {
            double discrete = 1.0, exponent = 0.0;
            for (int k = 0; k <= K; ++k) {
                if (k >= 1) {
                    discrete *= 1.0 - h_proc.at(k, i) * bundle.delta_Lambda(k, i);
                    exponent += (1.0 + h_proc.at(k, i)) * bundle.delta_Lambda(k, i);
                }
                report.product_form_violation =
                    std::max(report.product_form_violation,
                             std::abs(report.z_q.at(k, i) - bundle.Z.at(k, i) * discrete));
                report.continuous_form_gap =
                    std::max(report.continuous_form_gap,
                             std::abs(report.z_q.at(k, i) - std::exp(-exponent)));
            }
        }
    }
    return report;
}

}  // namespace filtlab
