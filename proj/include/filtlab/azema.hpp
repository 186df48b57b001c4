#pragma once

#include "filtlab/martingale.hpp"
#include "filtlab/random_time.hpp"

namespace filtlab {

// Everything the survival process of one (F, tau, P) triple carries.
//
// Discrete conventions, exact by construction:
//   Z_{t_k}      = P(tau > t_k | F_{t_k})
//   dA_{t_k}     = E[1_{tau = t_k} | F_{t_k}]        (dual optional projection)
//   da_{t_k}     = E[1_{tau = t_k} | F_{t_{k-1}}]    (dual predictable projection)
//   m            = Z + a                              (Doob-Meyer martingale part)
//   mu           = A + Z                              (an exact F-martingale)
//   dLambda_{t_k} = da_{t_k} / Z_{t_{k-1}}
//   Gamma        = -ln Z, reported only while Z > 0 everywhere
//   Z = Z0 * Z1 with Z1 = prod(1 - dLambda) predictable decreasing and
//   Z0 = Z / Z1 a positive F-martingale, valid before the first zero of Z.
struct AzemaBundle {
    AdaptedProcess Z;        // Azema supermartingale
    AdaptedProcess A;        // dual optional projection (cumulative)
    AdaptedProcess a;        // dual predictable projection (cumulative)
    AdaptedProcess m;        // Doob-Meyer martingale part, Z = m - a
    AdaptedProcess mu;       // A + Z
    AdaptedProcess Lambda;   // cumulative hazard, dLambda = da / Z_{-}
    AdaptedProcess Gamma;    // -ln Z where defined, NaN elsewhere
    AdaptedProcess Z0, Z1;   // Ito-Watanabe factors, NaN past the truncation
    int gamma_valid_until = 0;  // first k with min_omega Z_k = 0, or K+1 if none
    int t0_index = 0;           // same index; Ito-Watanabe truncation T_0

    bool z_positive_on_horizon() const { return gamma_valid_until > Z.points() - 1; }

    double delta_a(int k, int scenario) const {
        return a.at(k, scenario) - (k > 0 ? a.at(k - 1, scenario) : 0.0);
    }
    double delta_A(int k, int scenario) const {
        return A.at(k, scenario) - (k > 0 ? A.at(k - 1, scenario) : 0.0);
    }
    double delta_Lambda(int k, int scenario) const {
        return Lambda.at(k, scenario) - (k > 0 ? Lambda.at(k - 1, scenario) : 0.0);
    }
};

// Computes the whole bundle by exact conditional expectations.
AzemaBundle azema_bundle(const RandomTimeModel& model);

// The compensated default indicator N_{t_k} = 1_{tau<=t_k} - Lambda_{t_k ^ tau},
// a G-martingale, exactly, whenever it is well defined.
AdaptedProcess compensated_default_martingale(const RandomTimeModel& model,
                                              const AzemaBundle& bundle);

// Stochastic integral of a G-predictable integrand against dN (or any other
// G-process); sum of h_{t_j} * (X_{t_j} - X_{t_{j-1}}) for j <= k.
AdaptedProcess integral_against(const AdaptedProcess& integrand, const AdaptedProcess& x,
                                Filt tag = Filt::G);

// Jeulin-Yor decomposition of an F-martingale stopped at tau: the drift
// increment at t_k on {tau >= t_k} is E[dM_{t_k} dmu_{t_k} | F_{t_{k-1}}] / Z_{t_{k-1}},
// and Mtilde = M^tau - drift is an exact G-martingale.
struct StoppedDecomposition {
    AdaptedProcess m_tilde;  // G-martingale part
    AdaptedProcess drift;    // cumulative finite-variation part
};
StoppedDecomposition jeulin_yor_stopped_decomposition(const AdaptedProcess& martingale,
                                                      const RandomTimeModel& model,
                                                      const AzemaBundle& bundle);

// Multiplicative factors (Z0, Z1) with the truncation index; already stored in
// the bundle, re-derivable here for an arbitrary supplied Z for testing.
struct ItoWatanabeFactors {
    AdaptedProcess Z0;
    AdaptedProcess Z1;
    int t0_index;  // first k with min_omega Z_k = 0 (or K+1)
};
ItoWatanabeFactors ito_watanabe(const RandomTimeModel& model, const AzemaBundle& bundle);

}  // namespace filtlab
