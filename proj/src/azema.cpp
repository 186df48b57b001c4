#include "filtlab/azema.hpp"

#include <cmath>
#include <limits>

#include "filtlab/cond_exp.hpp"

namespace filtlab {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

// Cumulative sums per scenario, in time order.  Increments are block-constant
// doubles, so block members accumulate bit-identical values.
AdaptedProcess accumulate_rows(const std::vector<std::vector<double>>& increments, Filt tag) {
    const int points = static_cast<int>(increments.size());
    const int n = static_cast<int>(increments.front().size());
    AdaptedProcess out(points, n, tag);
    for (int i = 0; i < n; ++i) {
        double run = 0.0;
        for (int k = 0; k < points; ++k) {
            run += increments[static_cast<size_t>(k)][static_cast<size_t>(i)];
            out.at(k, i) = run;
        }
    }
    return out;
}

}  // namespace

AzemaBundle azema_bundle(const RandomTimeModel& model) {
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    const Filtration& f = model.f();

    AzemaBundle bundle;
    bundle.Z = AdaptedProcess(K + 1, n, Filt::F);
    std::vector<std::vector<double>> dA(static_cast<size_t>(K + 1),
                                        std::vector<double>(static_cast<size_t>(n), 0.0));
    std::vector<std::vector<double>> da = dA;

    for (int k = 0; k <= K; ++k) {
        std::vector<double> alive(static_cast<size_t>(n)), hit(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            alive[static_cast<size_t>(i)] = model.tau(i) > k ? 1.0 : 0.0;
            hit[static_cast<size_t>(i)] = model.tau(i) == k ? 1.0 : 0.0;
        }
        bundle.Z.row(k) = cond_exp_values(alive, f.at(k), w);
        dA[static_cast<size_t>(k)] = cond_exp_values(hit, f.at(k), w);
        const Partition& lagged = (k == 0) ? Partition::trivial(n) : f.at(k - 1);
        da[static_cast<size_t>(k)] = cond_exp_values(hit, lagged, w);
    }

    bundle.A = accumulate_rows(dA, Filt::F);
    bundle.a = accumulate_rows(da, Filt::F);

    bundle.m = AdaptedProcess(K + 1, n, Filt::F);
    bundle.mu = AdaptedProcess(K + 1, n, Filt::F);
    for (int k = 0; k <= K; ++k)
        for (int i = 0; i < n; ++i) {
            bundle.m.at(k, i) = bundle.Z.at(k, i) + bundle.a.at(k, i);
            bundle.mu.at(k, i) = bundle.A.at(k, i) + bundle.Z.at(k, i);
        }

    // dLambda_k = da_k / Z_{k-1}; da_k <= Z_{k-1} block-wise, so 0/0 only occurs
    // on blocks that are already extinct, where the increment is genuinely zero.
    std::vector<std::vector<double>> dLambda(static_cast<size_t>(K + 1),
                                             std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int k = 1; k <= K; ++k)
        for (int i = 0; i < n; ++i) {
            const double zprev = bundle.Z.at(k - 1, i);
            const double inc = da[static_cast<size_t>(k)][static_cast<size_t>(i)];
            dLambda[static_cast<size_t>(k)][static_cast<size_t>(i)] = (inc == 0.0) ? 0.0 : inc / zprev;
        }
    bundle.Lambda = accumulate_rows(dLambda, Filt::F);

    // Gamma on the open region {Z > 0}; the partial-domain flag is the first
    // grid index at which any scenario's Z vanishes.
    bundle.gamma_valid_until = K + 1;
    bundle.Gamma = AdaptedProcess(K + 1, n, Filt::F);
    for (int k = 0; k <= K; ++k) {
        bool all_positive = true;
        for (int i = 0; i < n; ++i) {
            const double z = bundle.Z.at(k, i);
            bundle.Gamma.at(k, i) = z > 0.0 ? -std::log(z) : nan_value;
            all_positive = all_positive && z > 0.0;
        }
        if (!all_positive && bundle.gamma_valid_until == K + 1) bundle.gamma_valid_until = k;
    }

    const ItoWatanabeFactors factors = ito_watanabe(model, bundle);
    bundle.Z0 = factors.Z0;
    bundle.Z1 = factors.Z1;
    bundle.t0_index = factors.t0_index;
    return bundle;
}

ItoWatanabeFactors ito_watanabe(const RandomTimeModel& model, const AzemaBundle& bundle) {
    const int n = model.scenarios();
    const int K = model.steps();
    ItoWatanabeFactors out;
    out.Z0 = AdaptedProcess(K + 1, n, Filt::F, nan_value);
    out.Z1 = AdaptedProcess(K + 1, n, Filt::F, nan_value);
    out.t0_index = bundle.gamma_valid_until;

    for (int i = 0; i < n; ++i) {
        double z1 = 1.0;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) z1 *= 1.0 - bundle.delta_Lambda(k, i);
            const double z = bundle.Z.at(k, i);
            if (k < out.t0_index && z1 > 0.0) {
                out.Z1.at(k, i) = z1;
                out.Z0.at(k, i) = z / z1;
            }
        }
    }
    return out;
}

AdaptedProcess compensated_default_martingale(const RandomTimeModel& model,
                                              const AzemaBundle& bundle) {
    const int n = model.scenarios();
    const int K = model.steps();
    AdaptedProcess N(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i) {
        double compensator = 0.0;
        for (int k = 0; k <= K; ++k) {
            if (k >= 1 && model.tau(i) >= k) {
                FILTLAB_REQUIRE(bundle.Z.at(k - 1, i) > 0.0, DegenerateHazardError,
                                "compensator undefined: Z vanished on a live scenario");
                compensator += bundle.delta_Lambda(k, i);
            }
            N.at(k, i) = (model.defaulted_by(i, k) ? 1.0 : 0.0) - compensator;
        }
    }
    return N;
}

AdaptedProcess integral_against(const AdaptedProcess& integrand, const AdaptedProcess& x,
                                Filt tag) {
    FILTLAB_REQUIRE(integrand.points() == x.points() && integrand.scenarios() == x.scenarios(),
                    InvalidSpaceError, "integral_against: shape mismatch");
    AdaptedProcess out(x.points(), x.scenarios(), tag);
    for (int i = 0; i < x.scenarios(); ++i) {
        double run = 0.0;
        for (int k = 1; k < x.points(); ++k) {
            run += integrand.at(k, i) * (x.at(k, i) - x.at(k - 1, i));
            out.at(k, i) = run;
        }
    }
    return out;
}

StoppedDecomposition jeulin_yor_stopped_decomposition(const AdaptedProcess& martingale,
                                                      const RandomTimeModel& model,
                                                      const AzemaBundle& bundle) {
    const int n = model.scenarios();
    const int K = model.steps();
    const auto& w = model.weights();
    FILTLAB_REQUIRE(martingale.points() == K + 1 && martingale.scenarios() == n, InvalidSpaceError,
                    "jeulin-yor: martingale shape mismatch");
    FILTLAB_REQUIRE(is_adapted(martingale, model.f()), MeasurabilityError,
                    "jeulin-yor: input must be F-adapted");

    // Predictable drift rate: E[dM dmu | F_{k-1}] / Z_{k-1}, block-wise.
    std::vector<std::vector<double>> rate(static_cast<size_t>(K + 1),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int k = 1; k <= K; ++k) {
        std::vector<double> cross(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            cross[static_cast<size_t>(i)] = (martingale.at(k, i) - martingale.at(k - 1, i)) *
                                            (bundle.mu.at(k, i) - bundle.mu.at(k - 1, i));
        const auto bracket = cond_exp_values(cross, model.f().at(k - 1), w);
        for (int i = 0; i < n; ++i) {
            if (model.tau(i) < k) continue;  // only charged while tau >= t_k
            const double zprev = bundle.Z.at(k - 1, i);
            FILTLAB_REQUIRE(zprev > 0.0, DegenerateHazardError,
                            "jeulin-yor: Z vanished on a live scenario");
            rate[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                bracket[static_cast<size_t>(i)] / zprev;
        }
    }

    StoppedDecomposition out;
    out.drift = accumulate_rows(rate, Filt::G);
    out.m_tilde = AdaptedProcess(K + 1, n, Filt::G);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= K; ++k) {
            const int stopped = std::min(k, model.tau(i));
            out.m_tilde.at(k, i) = martingale.at(stopped, i) - out.drift.at(k, i);
        }
    return out;
}

}  // namespace filtlab
