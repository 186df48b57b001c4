#pragma once

#include "filtlab/density.hpp"
#include "filtlab/hypotest.hpp"

namespace filtlab {

// Girsanov transfer of an (F,Q)-martingale into G under Q:
//   I^X_{t_k} = X_{t_k} + sum_{j<=k} dX_{t_j} deta_{t_j} / eta_{t_{j-1}}.
// Requires immersion under P; the result is then an exact (G,Q)-martingale.
AdaptedProcess girsanov_transfer(const AdaptedProcess& x, const RandomTimeModel& model,
                                 const DensityModel& density, double tol = 1e-12);

// Necessary-and-sufficient immersion-transfer condition: over spanning
// terminal-block X, E_P[X rho|G_t]/E_t = E_P[X rho|F_t]/e_t.  The verdict
// provably equals check_H under Q; both are computed and cross-checked.
struct JyConditionReport {
    bool condition_holds = false;
    double worst_violation = 0.0;
    bool h_under_q = false;
    double tol = 0.0;
};
JyConditionReport jy_condition_check(const RandomTimeModel& model, const DensityModel& density,
                                     double tol = 1e-12);

// Invariance under F_infty-measurable densities: the Q-Azema supermartingale,
// hence the compensator, are unchanged, and immersion transfers to Q.
struct FInftyInvarianceReport {
    double z_invariance_violation = 0.0;  // max |Z^Q - Z^P|
    MartingaleVerdict n_under_q;          // N (built under P) tested under Q
    bool h_under_q = false;
    bool pass = false;
};
FInftyInvarianceReport f_infty_invariance(const RandomTimeModel& model, const AzemaBundle& bundle,
                                          const DensityModel& density, double tol = 1e-12);

// Immersion-preserving density dQ/dP = F * H built from a terminal factor F
// (positive, F_infty-measurable, unit mean) and an F-predictable default-risk
// shape z.  The shape acts as a hazard tilt: the per-step hazard under Q is
// z_{t_k} * dLambda_{t_k}.  Before the terminal normalization the pre-default
// factor is z_tau times the F-predictable survival correction
//   K_{t_j} = prod_{i<j} (1 - z_i dLambda_i) / (1 - dLambda_i),
// which makes H = z_tau K_tau exactly F_tau-measurable with E[H|F_infty] = 1.
// On {tau = infinity} H carries the full survival correction.
// Requires immersion under P, the discrete avoidance proxy dA = da and Z > 0.
DensityModel build_fh_density(const RandomTimeModel& model, const AzemaBundle& bundle,
                              const RandomVariable& f_terminal, const AdaptedProcess& z_shape,
                              double tol = 1e-12);

// Factorization dQ/dP = F * H with F = e_infinity and H = 1/eta_infinity.
struct FHFactorization {
    bool factorizable = false;
    RandomVariable f_terminal;               // e_infinity
    RandomVariable h_pre_default;            // (eta_infinity)^{-1}
    double conditional_mean_violation = 0.0;  // |E[H|F_infty] - 1|
    double f_tau_measurability_violation = 0.0;
    double product_violation = 0.0;  // |rho - F H|
    bool h_under_q = false;          // cross-check: factorizable iff immersion under Q
    std::string obstruction;
};
FHFactorization factorize_fh(const RandomTimeModel& model, const DensityModel& density,
                             double tol = 1e-12);

// Doleans-Dade style exponential density
//   E_t = prod(1 + F_j dm_j) * prod(1 + H_j dN_j)
// with G-predictable F_proc and F-predictable H_proc.  Positivity of each
// factor is checked scenario by scenario.  When F_proc is nonzero the model
// must satisfy immersion (and dA = da when both parts are active) for E to be
// an exact P-martingale.
struct ExponentialDensity {
    DensityModel density;
    AdaptedProcess e_process;  // the running product, a (G,P)-martingale
    AdaptedProcess f_proc;     // dm integrand as supplied
    AdaptedProcess h_proc;     // dN integrand as supplied
    bool f_part_active = false;
    bool h_part_active = false;
    bool f_proc_predictable = false;  // F_proc measurable for F (not just G)
};
ExponentialDensity exponential_density(const RandomTimeModel& model, const AzemaBundle& bundle,
                                       const AdaptedProcess& f_proc, const AdaptedProcess& h_proc,
                                       const AdaptedProcess& f_martingale, const AdaptedProcess& n,
                                       double tol = 1e-12);

// Q-Azema supermartingale with the verification layer for exponential-family
// densities.  Generic densities go through plain Bayes via reweighting; asking
// for the theorem checks on them is an error.
struct QAzemaReport {
    AdaptedProcess z_q;       // Q(tau > t | F_t), exact Bayes
    AdaptedProcess lambda_q;  // from the Q-space bundle
    AdaptedProcess n_q;       // compensated indicator under Q, exact
    MartingaleVerdict n_q_exact;  // must pass under Q

    bool theorem_checked = false;
    double n_theorem_discrepancy = 0.0;    // N with (1+H)dLambda^P compensator, under Q
    double lambda_invariance_violation = 0.0;  // H == 0 case: |dLambda^Q - dLambda^P|
    double product_form_violation = 0.0;   // F-predictable: |Z^Q - Z prod(1 - H dLambda)|
    double continuous_form_gap = 0.0;      // |Z^Q - exp(-sum (1+H) dLambda)|, O(dt)
    bool h_under_q = false;
};
QAzemaReport azema_under_q(const RandomTimeModel& model, const AzemaBundle& bundle,
                           const DensityModel& density, const ExponentialDensity* exponential,
                           double tol = 1e-12);

// Largest |dA - da| over scenarios and times: the discrete proxy for the
// avoidance condition.  Zero on Cox-constructed models.
double avoidance_proxy_violation(const AzemaBundle& bundle);

}  // namespace filtlab
