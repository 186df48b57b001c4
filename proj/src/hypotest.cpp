#include "filtlab/hypotest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

std::vector<AdaptedProcess> spanning_f_martingales(const FiniteFilteredSpace& space,
                                                   const std::vector<double>& weights) {
    const Partition& terminal = space.filtration().terminal();
    const int n = space.scenarios();
    std::vector<AdaptedProcess> basis;
    basis.reserve(static_cast<size_t>(terminal.block_count()));
    for (int b = 0; b < terminal.block_count(); ++b) {
        std::vector<double> indicator(static_cast<size_t>(n), 0.0);
        for (int scenario : terminal.block(b)) indicator[static_cast<size_t>(scenario)] = 1.0;
        AdaptedProcess mart(space.grid().points(), n, Filt::F);
        for (int k = 0; k < space.grid().points(); ++k)
            mart.row(k) = cond_exp_values(indicator, space.filtration().at(k), weights);
        basis.push_back(std::move(mart));
    }
    return basis;
}

namespace {

double block_weight(const std::vector<int>& members, const std::vector<double>& w) {
    double total = 0.0;
    for (int scenario : members) total += w[static_cast<size_t>(scenario)];
    return total;
}

// max over times and blocks of the factorization defect of characterization (2)
double product_characterization_violation(const RandomTimeModel& model,
                                          const std::vector<double>& w) {
    const Partition& terminal = model.f().terminal();
    double worst = 0.0;
    for (int k = 0; k < model.f().points(); ++k) {
        const Partition& fpart = model.f().at(k);
        const Partition& gpart = model.g().at(k);
        std::vector<double> f_block_mass(static_cast<size_t>(fpart.block_count()), 0.0);
        for (int d = 0; d < fpart.block_count(); ++d)
            f_block_mass[static_cast<size_t>(d)] = block_weight(fpart.block(d), w);
        // P(B n D) for all terminal blocks B inside each F-block D
        std::vector<std::vector<double>> bd(static_cast<size_t>(fpart.block_count()),
                                            std::vector<double>(
                                                static_cast<size_t>(terminal.block_count()), 0.0));
        for (int i = 0; i < model.scenarios(); ++i)
            bd[static_cast<size_t>(fpart.block_of(i))][static_cast<size_t>(terminal.block_of(i))] +=
                w[static_cast<size_t>(i)];

        for (int c = 0; c < gpart.block_count(); ++c) {
            const auto& cmembers = gpart.block(c);
            const int d = fpart.block_of(cmembers.front());  // G refines F
            const double pd = f_block_mass[static_cast<size_t>(d)];
            const double pc = block_weight(cmembers, w);
            std::vector<double> bc(static_cast<size_t>(terminal.block_count()), 0.0);
            for (int scenario : cmembers)
                bc[static_cast<size_t>(terminal.block_of(scenario))] +=
                    w[static_cast<size_t>(scenario)];
            for (int b = 0; b < terminal.block_count(); ++b) {
                const double lhs = bc[static_cast<size_t>(b)] / pd;
                const double rhs =
                    (bd[static_cast<size_t>(d)][static_cast<size_t>(b)] / pd) * (pc / pd);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    }
    return worst;
}

}  // namespace

HypothesisReport check_H(const RandomTimeModel& model, double tol) {
    const auto& w = model.weights();
    const int n = model.scenarios();
    const int K = model.steps();
    HypothesisReport report;
    report.tol = tol;

    // (1) spanning F-martingales stay G-martingales
    for (const auto& mart : spanning_f_martingales(model.base(), w)) {
        AdaptedProcess as_g = mart;
        as_g.set_tag(Filt::G);
        const auto verdict = is_martingale(as_g, model.g(), w, tol);
        report.violation1 = std::max(report.violation1, verdict.worst_violation);
    }

    // (2) product factorization over terminal blocks x G_t blocks
    report.violation2 = product_characterization_violation(model, w);

    // (3) E[F|G_t] = E[F|F_t] for terminal-block indicators
    const Partition& terminal = model.f().terminal();
    for (int b = 0; b < terminal.block_count(); ++b) {
        std::vector<double> indicator(static_cast<size_t>(n), 0.0);
        for (int scenario : terminal.block(b)) indicator[static_cast<size_t>(scenario)] = 1.0;
        for (int k = 0; k <= K; ++k) {
            const auto via_g = cond_exp_values(indicator, model.g().at(k), w);
            const auto via_f = cond_exp_values(indicator, model.f().at(k), w);
            for (int i = 0; i < n; ++i)
                report.violation3 = std::max(
                    report.violation3,
                    std::abs(via_g[static_cast<size_t>(i)] - via_f[static_cast<size_t>(i)]));
        }
    }

    // (4) P(tau<=s|F_t) = P(tau<=s|F_infty) for s <= t
    for (int s = 0; s <= K; ++s) {
        std::vector<double> dead(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) dead[static_cast<size_t>(i)] = model.tau(i) <= s ? 1.0 : 0.0;
        const auto via_terminal = cond_exp_values(dead, model.f().at(K), w);
        for (int t = s; t <= K; ++t) {
            const auto via_t = cond_exp_values(dead, model.f().at(t), w);
            for (int i = 0; i < n; ++i)
                report.violation4 = std::max(
                    report.violation4,
                    std::abs(via_t[static_cast<size_t>(i)] -
                             via_terminal[static_cast<size_t>(i)]));
        }
    }

    report.h1 = report.violation1 <= tol;
    report.h2 = report.violation2 <= tol;
    report.h3 = report.violation3 <= tol;
    report.h4 = report.violation4 <= tol;
    FILTLAB_REQUIRE(report.h1 == report.h2 && report.h2 == report.h3 && report.h3 == report.h4,
                    InternalInconsistencyError,
                    "the four immersion characterizations disagree; this is a library defect");

    const auto pseudo = check_pseudo_stopping(model, tol);
    report.pseudo_stopping = pseudo.pass;
    report.pseudo_violation = pseudo.worst_violation;
    report.f_infty_measurable = check_f_infty_measurable(model);
    report.is_stopping_time = filtlab::is_stopping_time(model);
    return report;
}

PseudoStoppingVerdict check_pseudo_stopping(const RandomTimeModel& model, double tol) {
    const auto& w = model.weights();
    PseudoStoppingVerdict verdict;
    for (const auto& mart : spanning_f_martingales(model.base(), w)) {
        double stopped_mean = 0.0;
        for (int i = 0; i < model.scenarios(); ++i) {
            const int stop = std::min(model.tau(i), model.steps());
            stopped_mean += w[static_cast<size_t>(i)] * mart.at(stop, i);
        }
        verdict.worst_violation =
            std::max(verdict.worst_violation, std::abs(stopped_mean - mart.at(0, 0)));
    }
    verdict.pass = verdict.worst_violation <= tol;
    return verdict;
}

bool check_f_infty_measurable(const RandomTimeModel& model) {
    for (const auto& block : model.f().terminal().blocks()) {
        const int first = model.tau(block.front());
        for (int scenario : block)
            if (model.tau(scenario) != first) return false;
    }
    return true;
}

bool is_stopping_time(const RandomTimeModel& model) {
    for (int k = 0; k <= model.steps(); ++k) {
        for (const auto& block : model.f().at(k).blocks()) {
            const bool first = model.defaulted_by(block.front(), k);
            for (int scenario : block)
                if (model.defaulted_by(scenario, k) != first) return false;
        }
    }
    return true;
}

namespace {

std::vector<double> normalized_density(const RandomVariable& rho,
                                       const std::vector<double>& base_weights) {
    FILTLAB_REQUIRE(rho.size() == static_cast<int>(base_weights.size()), InvalidDensityError,
                    "density size mismatch");
    std::vector<double> out(base_weights.size());
    double mass = 0.0;
    for (int i = 0; i < rho.size(); ++i) {
        FILTLAB_REQUIRE(rho[i] > 0.0, InvalidDensityError,
                        "density candidate must be strictly positive");
        out[static_cast<size_t>(i)] = rho[i] * base_weights[static_cast<size_t>(i)];
        mass += out[static_cast<size_t>(i)];
    }
    for (double& x : out) x /= mass;
    return out;
}

}  // namespace

ArbitrageSuiteReport arbitrage_equivalence_suite(const RandomTimeModel& model,
                                                 const std::vector<ArbitrageCandidate>& candidates,
                                                 double tol) {
    const auto& p = model.weights();
    const int n = model.scenarios();
    const int K = model.steps();
    ArbitrageSuiteReport suite;

    for (const auto& candidate : candidates) {
        ArbitrageCaseReport item;
        item.label = candidate.label;

        const auto q_tilde = normalized_density(candidate.rho_tilde, p);
        const RandomTimeModel model_qt = model.reweighted(q_tilde);
        item.candidate_immersion = check_H(model_qt, tol).immersion();

        if (item.candidate_immersion) {
            // eta = (dP/dQ~)|F / (dP/dQ~)|G, a (G,P)-martingale; dQ = eta_K dP
            // makes every (F,P)-martingale a (G,Q)-martingale.
            std::vector<double> inv_rho(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                inv_rho[static_cast<size_t>(i)] =
                    p[static_cast<size_t>(i)] / q_tilde[static_cast<size_t>(i)];
            std::vector<double> q_weights(static_cast<size_t>(n));
            {
                const auto e_term = cond_exp_values(inv_rho, model.f().at(K), q_tilde);
                const auto E_term = cond_exp_values(inv_rho, model.g().at(K), q_tilde);
                double mass = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double eta = e_term[static_cast<size_t>(i)] /
                                       E_term[static_cast<size_t>(i)];
                    q_weights[static_cast<size_t>(i)] = eta * p[static_cast<size_t>(i)];
                    mass += q_weights[static_cast<size_t>(i)];
                }
                for (double& x : q_weights) x /= mass;  // eta_0 = 1, rounding only
            }
            item.condition2_violation = 0.0;
            for (const auto& mart : spanning_f_martingales(model.base(), p)) {
                AdaptedProcess as_g = mart;
                as_g.set_tag(Filt::G);
                const auto verdict = is_martingale(as_g, model.g(), q_weights, tol);
                item.condition2_violation =
                    std::max(item.condition2_violation, verdict.worst_violation);
            }
            item.condition2_holds = item.condition2_violation <= tol;
        }

        if (candidate.rho_one.size() == n && item.candidate_immersion) {
            // A = dP1/dQ~ restricted to F_infty; P2 = A dQ~ restores immersion
            // and agrees with P1 on F_infty.
            const auto p1 = normalized_density(candidate.rho_one, p);
            std::vector<double> dp1_dqt(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                dp1_dqt[static_cast<size_t>(i)] =
                    p1[static_cast<size_t>(i)] / q_tilde[static_cast<size_t>(i)];
            const auto a_restricted = cond_exp_values(dp1_dqt, model.f().at(K), q_tilde);
            std::vector<double> p2(static_cast<size_t>(n));
            double mass = 0.0;
            for (int i = 0; i < n; ++i) {
                p2[static_cast<size_t>(i)] =
                    a_restricted[static_cast<size_t>(i)] * q_tilde[static_cast<size_t>(i)];
                mass += p2[static_cast<size_t>(i)];
            }
            for (double& x : p2) x /= mass;

            item.transferred_immersion = check_H(model.reweighted(p2), tol).immersion();
            // dP2/dP1 restricted to F_infty must be identically one.
            std::vector<double> dp2_dp1(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                dp2_dp1[static_cast<size_t>(i)] =
                    p2[static_cast<size_t>(i)] / p1[static_cast<size_t>(i)];
            const auto restricted = cond_exp_values(dp2_dp1, model.f().at(K), p1);
            for (int i = 0; i < n; ++i)
                item.f_restriction_violation = std::max(
                    item.f_restriction_violation, std::abs(restricted[static_cast<size_t>(i)] - 1.0));
            item.pass = item.candidate_immersion && item.condition2_holds &&
                        item.transferred_immersion && item.f_restriction_violation <= tol;
        } else {
            item.pass = item.candidate_immersion && item.condition2_holds;
        }

        suite.all_pass = suite.all_pass && item.pass;
        suite.cases.push_back(std::move(item));
    }
    return suite;
}

std::string HypothesisReport::to_json() const {
    std::ostringstream os;
    os << "{";
    os << "\"immersion\":" << (immersion() ? "true" : "false") << ",";
    os << "\"characterizations\":[" << (h1 ? "true" : "false") << "," << (h2 ? "true" : "false")
       << "," << (h3 ? "true" : "false") << "," << (h4 ? "true" : "false") << "],";
    os << "\"worst_violations\":[" << violation1 << "," << violation2 << "," << violation3 << ","
       << violation4 << "],";
    os << "\"pseudo_stopping\":" << (pseudo_stopping ? "true" : "false") << ",";
    os << "\"pseudo_violation\":" << pseudo_violation << ",";
    os << "\"f_infty_measurable\":" << (f_infty_measurable ? "true" : "false") << ",";
    os << "\"is_stopping_time\":" << (is_stopping_time ? "true" : "false") << ",";
    os << "\"tol\":" << tol << "}";
    return os.str();
}

std::string ArbitrageSuiteReport::to_json() const {
    std::ostringstream os;
    os << "{\"all_pass\":" << (all_pass ? "true" : "false") << ",\"cases\":[";
    for (size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        if (i) os << ",";
        os << "{\"label\":\"" << c.label << "\",\"candidate_immersion\":"
           << (c.candidate_immersion ? "true" : "false")
           << ",\"condition2_holds\":" << (c.condition2_holds ? "true" : "false")
           << ",\"condition2_violation\":" << c.condition2_violation
           << ",\"transferred_immersion\":" << (c.transferred_immersion ? "true" : "false")
           << ",\"f_restriction_violation\":" << c.f_restriction_violation
           << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace filtlab
