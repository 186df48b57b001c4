#include "filtlab/mc/refine.hpp"

#include <cmath>
#include <sstream>

#include "filtlab/cond_exp.hpp"
#include "filtlab/measure_ops.hpp"
#include "filtlab/represent.hpp"
#include "filtlab/scenarios.hpp"

namespace filtlab::mc {

std::vector<int> standard_refinement_steps() { return {8, 16, 32, 64, 128}; }

RefinementReport refinement_harness(const std::string& name, const std::vector<int>& step_counts,
                                    const std::function<double(int)>& error_at,
                                    double exact_floor) {
    FILTLAB_REQUIRE(step_counts.size() >= 3, Error,
                    "refinement needs at least three grid levels");
    RefinementReport report;
    report.name = name;
    for (int steps : step_counts)
        report.rows.push_back({steps, 1.0 / steps, error_at(steps)});

    report.exact = true;
    for (const auto& row : report.rows) report.exact = report.exact && row.error <= exact_floor;
    if (report.exact) {
        report.fitted_order = 0.0;
        return report;
    }

    // Least-squares slope of log2 error against log2 dt.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(report.rows.size());
    for (const auto& row : report.rows) {
        const double x = std::log2(row.dt);
        const double y = std::log2(std::max(row.error, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    for (size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].error > 2.0 * report.rows[i - 1].error) report.monotone = false;
    return report;
}

std::string RefinementReport::to_json() const {
    std::ostringstream os;
    os << "{\"name\":\"" << name << "\",\"fitted_order\":" << fitted_order
       << ",\"exact\":" << (exact ? "true" : "false")
       << ",\"monotone\":" << (monotone ? "true" : "false") << ",\"rows\":[";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ",";
        os << "{\"steps\":" << rows[i].steps << ",\"dt\":" << rows[i].dt
           << ",\"error\":" << rows[i].error << "}";
    }
    os << "]}";
    return os.str();
}

namespace {

// Price reconstruction with the continuous-form integrands: unlagged h, the
// z - h integrand and the Gamma-compensated jump martingale.  Its defect
// against the exact price is pure discretization error; reported as the
// weighted mean of the squared maximal path-wise error, since the default-step
// dm charge is centred noise of variance O(dt).
double literal_reconstruction_msq(const RandomTimeModel& model, const AzemaBundle& bundle,
                                  const AdaptedProcess& z) {
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    const RepresentationResult rep = represent_z_tau(z, model, bundle, 1e-9);

    double msq = 0.0;
    for (int i = 0; i < n; ++i) {
        double recon = rep.m0;
        double worst = std::abs(recon - rep.price.at(0, i));
        for (int k = 1; k <= K; ++k) {
            const int tau = model.tau(i);
            if (tau >= k) {
                const double zk = bundle.Z.at(k, i);
                if (zk > 0.0) recon += (rep.m.at(k, i) - rep.m.at(k - 1, i)) / zk;
                const double dn_gamma = (tau == k ? 1.0 : 0.0) -
                                        (bundle.Gamma.at(k, i) - bundle.Gamma.at(k - 1, i));
                recon += (z.at(k, i) - rep.h.at(k, i)) * dn_gamma;
            }
            worst = std::max(worst, std::abs(recon - rep.price.at(k, i)));
        }
        msq += w[static_cast<size_t>(i)] * worst * worst;
    }
    return msq;
}

AdaptedProcess step_claim(const RandomTimeModel& model) {
    // z_t = 1 + t/2, a deterministic claim profile on the grid.
    const int n = model.scenarios();
    AdaptedProcess z(model.grid().points(), n, Filt::F);
    for (int k = 0; k < z.points(); ++k)
        for (int i = 0; i < n; ++i) z.at(k, i) = 1.0 + 0.5 * model.grid().time(k);
    return z;
}

}  // namespace

double gamma_error_constant_hazard(int steps, double rate) {
    const RandomTimeModel model = scenarios::constant_hazard_cox(steps, rate);
    const AzemaBundle bundle = azema_bundle(model);
    double worst = 0.0;
    for (int k = 0; k <= steps; ++k)
        for (int i = 0; i < model.scenarios(); ++i)
            worst = std::max(worst,
                             std::abs(bundle.Gamma.at(k, i) - rate * model.grid().time(k)));
    return worst;
}

double gamma_error_stochastic_hazard(int steps, double base_rate, double tilt) {
    // Integrated hazard rate equals Lambda on a Cox family, so this measures
    // the Gamma-Lambda gap under a driver-modulated rate.
    const RandomTimeModel model = scenarios::stochastic_hazard_cox(steps, base_rate, tilt);
    const AzemaBundle bundle = azema_bundle(model);
    double worst = 0.0;
    for (int k = 0; k <= steps; ++k)
        for (int i = 0; i < model.scenarios(); ++i)
            worst = std::max(worst, std::abs(bundle.Gamma.at(k, i) - bundle.Lambda.at(k, i)));
    return worst;
}

double q_survival_error_constant_tilt(int steps, double rate, double tilt) {
    const RandomTimeModel model = scenarios::constant_hazard_cox(steps, rate);
    const AzemaBundle bundle = azema_bundle(model);
    const AdaptedProcess n_process = compensated_default_martingale(model, bundle);
    const int n = model.scenarios();
    const AdaptedProcess f_proc(steps + 1, n, Filt::F, 0.0);
    AdaptedProcess h_proc(steps + 1, n, Filt::F, tilt);
    for (int i = 0; i < n; ++i) h_proc.at(0, i) = 0.0;
    const ExponentialDensity exponential =
        exponential_density(model, bundle, f_proc, h_proc, bundle.m, n_process);
    const QAzemaReport report =
        azema_under_q(model, bundle, exponential.density, &exponential, 1e-9);
    return report.continuous_form_gap;
}

double representation_residual_constant(int steps, double rate) {
    const RandomTimeModel model = scenarios::constant_hazard_cox(steps, rate);
    const AzemaBundle bundle = azema_bundle(model);
    return literal_reconstruction_msq(model, bundle, step_claim(model));
}

double representation_residual_stochastic(int steps, double base_rate, double tilt) {
    const RandomTimeModel model = scenarios::stochastic_hazard_cox(steps, base_rate, tilt);
    const AzemaBundle bundle = azema_bundle(model);
    return literal_reconstruction_msq(model, bundle, step_claim(model));
}

double general_representation_residual(int steps, double base_rate, double tilt) {
    // Terminal factor plus claim on the stochastic-hazard family; the paper's
    // displayed assembly discretized with left endpoints.
    const RandomTimeModel model = scenarios::stochastic_hazard_cox(steps, base_rate, tilt);
    const AzemaBundle bundle = azema_bundle(model);
    const AdaptedProcess z = step_claim(model);
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();

    // F = affine function of the driver label, normalized.
    RandomVariable f_terminal(std::vector<double>(static_cast<size_t>(n), 0.0));
    {
        const Partition& terminal = model.f().terminal();
        for (int i = 0; i < n; ++i)
            f_terminal[i] = 1.0 + 0.3 * static_cast<double>(terminal.block_of(i) % 2);
        const double mean = expectation(f_terminal, w);
        for (int i = 0; i < n; ++i) f_terminal[i] /= mean;
    }
    const GeneralRepresentationResult rep = represent_general(f_terminal, z, model, bundle, 1e-9);

    // Left-endpoint discretization of the displayed decomposition.
    const LProcess l = l_process(model, bundle);
    double msq = 0.0;
    for (int i = 0; i < n; ++i) {
        double recon = rep.g_mean;
        double kn_run = 0.0;  // int k dN
        double worst = std::abs(recon - rep.price.at(0, i));
        for (int k = 1; k <= K; ++k) {
            const double dmf = rep.m_f.at(k, i) - rep.m_f.at(k - 1, i);
            const double dmg = rep.m_g.at(k, i) - rep.m_g.at(k - 1, i);
            const double ratio_prev = rep.m_g.at(k - 1, i) / rep.m_f.at(k - 1, i);
            const double dn_gamma =
                model.tau(i) >= k
                    ? (model.tau(i) == k ? 1.0 : 0.0) -
                          (bundle.Gamma.at(k, i) - bundle.Gamma.at(k - 1, i))
                    : 0.0;
            recon += (rep.g_mean + rep.y.at(k - 1, i) - l.values.at(k - 1, i) * ratio_prev +
                      kn_run) *
                     dmf;
            recon += l.values.at(k - 1, i) * dmg;
            recon += rep.m_f.at(k - 1, i) * rep.dn_integrand.at(k, i) * dn_gamma;
            kn_run += rep.dn_integrand.at(k, i) * dn_gamma;
            worst = std::max(worst, std::abs(recon - rep.price.at(k, i)));
        }
        msq += w[static_cast<size_t>(i)] * worst * worst;
    }
    return msq;
}

}  // namespace filtlab::mc
