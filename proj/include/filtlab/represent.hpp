#pragma once

#include "filtlab/azema.hpp"
#include "filtlab/hypotest.hpp"

namespace filtlab {

// Claims pay z_tau at default; on {tau = infinity} the payoff is zero, matching
// the sum-against-dA semantics of the projection formulas.
RandomVariable claim_payoff(const AdaptedProcess& z, const RandomTimeModel& model);

// L_{t_k} = 1_{tau > t_k} / Z_{t_k}, the pre-default renormalizer.  An exact
// G-martingale while Z is positive everywhere; mart_horizon is the number of
// increments on which the property holds before truncation.
struct LProcess {
    AdaptedProcess values;
    int mart_horizon;
};
LProcess l_process(const RandomTimeModel& model, const AzemaBundle& bundle);

// E[int h dN | F_t] = 0 and strong orthogonality of int h dN to the spanning
// F-martingales.  Stated domain: immersion plus the avoidance proxy dA = da.
struct OrthogonalityReport {
    double worst_projection = 0.0;  // max |E[sum h dN | F_t]|
    double worst_product = 0.0;     // worst martingale defect of M * (sum h dN)
    bool pass = false;
};
OrthogonalityReport orthogonality_check(const AdaptedProcess& h, const RandomTimeModel& model,
                                        const AzemaBundle& bundle, double tol = 1e-12);

// Both routes of the projection formula, compared and returned.
//   part (i):  E[z_tau 1_{tau>t} | F_t] = E[sum_{j>t} z_j dA_j | F_t]   (any time)
//   part (ii): E[z_tau | F_t]          = E[sum_j   z_j dA_j | F_t]     (immersion)
struct ProjectionFormulaResult {
    AdaptedProcess direct;       // left-hand side by direct conditioning
    AdaptedProcess via_dual;     // right-hand side through dA
    double violation = 0.0;
    double gamma_form_gap = 0.0;  // part (ii) with z e^{-Gamma} dGamma, O(dt), reported
};
ProjectionFormulaResult projection_formula(const AdaptedProcess& z, const RandomTimeModel& model,
                                           const AzemaBundle& bundle, bool whole_line,
                                           double tol = 1e-12);

// Price process E[z_tau | G_t]: L_t E[z_tau 1_{tau>t}|F_t] + z_tau 1_{tau<=t},
// asserted against direct conditioning on G.
AdaptedProcess value_defaultable(const AdaptedProcess& z, const RandomTimeModel& model,
                                 const AzemaBundle& bundle, double tol = 1e-12);

// Representation of the price of z_tau as m_0 + int dm/Z (pre-default)
// + int k dN.  The dm survival indicator enters strictly (it annuls the dm
// charge on the default step); the dN integrand is the F-predictable
//   k_{t_j} = (z_{t_j} - h_{t_{j-1}}) Z_{t_{j-1}} / Z_{t_j},
// which agrees with the z - h form up to O(dt) and makes the discrete
// identity exact path-wise.  Requires a pseudo-stopping time with predictable
// nonincreasing positive Z (immersion plus dA = da is the canonical case).
struct RepresentationResult {
    double m0 = 0.0;
    AdaptedProcess m;             // m_t = E[sum z dA | F_t]
    AdaptedProcess h;             // h_t = (m_t - sum_{j<=t} z dA_j) / Z_t
    AdaptedProcess dm_integrand;  // 1_{tau > t_j} / Z_{t_j}
    AdaptedProcess dn_integrand;  // k, F-predictable
    AdaptedProcess dm_part;       // running sum of dm charges, a G-martingale
    AdaptedProcess dn_part;       // running sum of k dN, a G-martingale
    AdaptedProcess reconstructed;
    AdaptedProcess price;         // exact E[z_tau | G_t]
    double residual = 0.0;        // max |reconstructed - price|
    double orthogonality_defect = 0.0;  // worst martingale defect of the parts' product
};
RepresentationResult represent_z_tau(const AdaptedProcess& z, const RandomTimeModel& model,
                                     const AzemaBundle& bundle, double tol = 1e-12);

// Representation of E[F z_tau | G_t] through the auxiliary measure
// dQ~ = F dP: the price is m^F_t times the Q~-representation of z_tau.
struct GeneralRepresentationResult {
    double g_mean = 0.0;          // E[F z_tau]
    AdaptedProcess m_f;           // E[F|F_t]
    AdaptedProcess m_g;           // E[F z_tau|F_t]
    AdaptedProcess y;             // int L d(m^G/m^F), the dm-part under Q~
    AdaptedProcess dn_integrand;  // k from the Q~ representation
    AdaptedProcess reconstructed;
    AdaptedProcess price;         // exact E[F z_tau | G_t]
    double residual = 0.0;
};
GeneralRepresentationResult represent_general(const RandomVariable& f_terminal,
                                              const AdaptedProcess& z,
                                              const RandomTimeModel& model,
                                              const AzemaBundle& bundle, double tol = 1e-12);

// Orthogonal split M = M_0 + V + int h dN of a G-martingale, h extracted by
// conditional-covariance projection of dM onto dN block by block.
struct OrthogonalDecomposition {
    AdaptedProcess v;  // orthogonal-to-dN part
    AdaptedProcess h;  // F-predictable extension of the projection coefficients
    double product_defect = 0.0;  // worst martingale defect of V * (int h dN)
};
OrthogonalDecomposition orthogonal_decompose(const AdaptedProcess& martingale,
                                             const RandomTimeModel& model,
                                             const AzemaBundle& bundle, double tol = 1e-12);

}  // namespace filtlab
