#pragma once

#include <string>
#include <vector>

#include "filtlab/azema.hpp"
#include "filtlab/random_time.hpp"

namespace filtlab {

// Diagnostics for the structural hypotheses of a (F, tau, P) triple.
//
// The four immersion verdicts correspond to the four equivalent
// characterizations: (1) every F-martingale of the terminal-block spanning
// basis stays a G-martingale; (2) conditional products factorize,
// E[F G_t|F_t] = E[F|F_t] E[G_t|F_t]; (3) E[F|G_t] = E[F|F_t] for terminal
// F; (4) P(tau<=s|F_t) = P(tau<=s|F_infty) for s <= t.  They are provably
// equivalent on every finite space; disagreement is a library defect.
struct HypothesisReport {
    bool h1 = false, h2 = false, h3 = false, h4 = false;
    double violation1 = 0.0, violation2 = 0.0, violation3 = 0.0, violation4 = 0.0;

    bool pseudo_stopping = false;
    double pseudo_violation = 0.0;

    bool f_infty_measurable = false;
    bool is_stopping_time = false;

    double tol = 0.0;

    bool immersion() const { return h1; }
    std::string to_json() const;
};

// Runs all four characterizations and the auxiliary diagnostics.
// Throws InternalInconsistencyError if the four verdicts disagree.
HypothesisReport check_H(const RandomTimeModel& model, double tol = 1e-12);

// E[M_{tau ^ T}] = M_0 over the spanning basis of F-martingales.
struct PseudoStoppingVerdict {
    bool pass = false;
    double worst_violation = 0.0;
};
PseudoStoppingVerdict check_pseudo_stopping(const RandomTimeModel& model, double tol = 1e-12);

// tau constant on terminal F-blocks.
bool check_f_infty_measurable(const RandomTimeModel& model);
// {tau <= t_k} a union of F-blocks at t_k, for every k.
bool is_stopping_time(const RandomTimeModel& model);

// One candidate measure for the non-arbitrage equivalence suite: rho_tilde is
// the density of a measure expected to restore immersion; rho_one (optional)
// plays the role of an F-restricted martingale-measure candidate.
struct ArbitrageCandidate {
    std::string label;
    RandomVariable rho_tilde;
    RandomVariable rho_one;  // empty => skip the intersection construction
};

struct ArbitrageCaseReport {
    std::string label;
    bool candidate_immersion = false;      // check_H under Q_tilde
    bool condition2_holds = false;         // every (F,P)-martingale is a (G,Q)-martingale
    double condition2_violation = 0.0;
    bool transferred_immersion = false;    // check_H under P2
    double f_restriction_violation = 0.0;  // |dP2/dP1 - 1| on F_infty blocks
    bool pass = false;
};

struct ArbitrageSuiteReport {
    std::vector<ArbitrageCaseReport> cases;
    bool all_pass = true;
    std::string to_json() const;
};

// Executes the proof constructions behind the non-arbitrage equivalences:
// from Q_tilde with immersion, builds dQ = eta dP and verifies that every
// (F,P)-martingale is a (G,Q)-martingale; from rho_one, transfers through the
// F_infty-restricted density A = dP1/dQ_tilde|F_infty to P2 and verifies that
// P2 restores immersion while agreeing with P1 on F_infty.
ArbitrageSuiteReport arbitrage_equivalence_suite(const RandomTimeModel& model,
                                                 const std::vector<ArbitrageCandidate>& candidates,
                                                 double tol = 1e-12);

// Spanning basis of F-martingales: M^B_t = P(B | F_t) for each terminal block B.
std::vector<AdaptedProcess> spanning_f_martingales(const FiniteFilteredSpace& space,
                                                   const std::vector<double>& weights);

}  // namespace filtlab
