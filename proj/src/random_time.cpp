#include "filtlab/random_time.hpp"

#include <utility>

namespace filtlab {

namespace {

Filtration enlarge_filtration(const FiniteFilteredSpace& base, const std::vector<int>& tau) {
    const int n = base.scenarios();
    FILTLAB_REQUIRE(static_cast<int>(tau.size()) == n, InvalidSpaceError,
                    "tau needs one value per scenario");
    std::vector<Partition> parts;
    parts.reserve(static_cast<size_t>(base.grid().points()));
    for (int k = 0; k < base.grid().points(); ++k) {
        // Label by tau when it has happened, by "alive" otherwise.
        std::vector<int> label(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            label[static_cast<size_t>(i)] = (tau[static_cast<size_t>(i)] <= k)
                                                ? tau[static_cast<size_t>(i)]
                                                : -1;
        parts.push_back(join_partitions(base.filtration().at(k), Partition::group_by(label)));
    }
    return Filtration(std::move(parts));
}

}  // namespace

RandomTimeModel::RandomTimeModel(FiniteFilteredSpace base, std::vector<int> tau)
    : base_(std::move(base)), tau_(std::move(tau)), enlarged_(enlarge_filtration(base_, tau_)) {
    FILTLAB_REQUIRE(static_cast<int>(tau_.size()) == base_.scenarios(), InvalidSpaceError,
                    "tau needs one value per scenario");
    const int K = base_.steps();
    for (int t : tau_)
        FILTLAB_REQUIRE((t >= 1 && t <= K) || t == tau_infinite, InvalidSpaceError,
                        "tau values must lie on the grid (index 1..K) or be infinite");
    // tau is a G stopping time by construction; assert it anyway.
    for (int k = 0; k <= K; ++k) {
        for (const auto& block : enlarged_.at(k).blocks()) {
            const bool first = defaulted_by(block.front(), k);
            for (int scenario : block)
                FILTLAB_REQUIRE(defaulted_by(scenario, k) == first, InternalInconsistencyError,
                                "enlargement failed to make tau a stopping time");
        }
    }
}

RandomTimeModel RandomTimeModel::reweighted(std::vector<double> new_weights) const {
    FiniteFilteredSpace space(std::move(new_weights), base_.grid(), base_.filtration());
    return RandomTimeModel(std::move(space), tau_);
}

RandomTimeModel enlarge_progressively(FiniteFilteredSpace space, std::vector<int> tau) {
    return RandomTimeModel(std::move(space), std::move(tau));
}

RandomTimeModel cox_construct(const FiniteFilteredSpace& space, const HazardSpec& hazard) {
    const int n = space.scenarios();
    const int K = space.steps();
    const auto& h = hazard.per_step;
    FILTLAB_REQUIRE(h.points() == space.grid().points() && h.scenarios() == n, InvalidSpaceError,
                    "cox_construct: hazard table shape mismatch");
    FILTLAB_REQUIRE(is_predictable(h, space.filtration()), MeasurabilityError,
                    "cox_construct: hazard must be F-predictable");
    for (int k = 1; k <= K; ++k)
        for (int i = 0; i < n; ++i)
            FILTLAB_REQUIRE(h.at(k, i) >= 0.0 && h.at(k, i) < 1.0, InvalidSpaceError,
                            "cox_construct: hazard values must lie in [0,1)");

    // Product space atoms: (base scenario, default step k) and (base scenario, never).
    std::vector<double> weights;
    std::vector<int> tau;
    std::vector<int> parent;  // base scenario of each atom
    for (int i = 0; i < n; ++i) {
        double survival = 1.0;
        for (int k = 1; k <= K; ++k) {
            const double atom = survival * h.at(k, i);
            if (atom > 0.0) {
                weights.push_back(space.weight(i) * atom);
                tau.push_back(k);
                parent.push_back(i);
            }
            survival *= 1.0 - h.at(k, i);
        }
        if (survival > 0.0) {
            weights.push_back(space.weight(i) * survival);
            tau.push_back(tau_infinite);
            parent.push_back(i);
        }
    }

    // Pull the base filtration back through the parent map; the default
    // coordinate itself is invisible to F.
    std::vector<Partition> parts;
    parts.reserve(static_cast<size_t>(space.grid().points()));
    for (int k = 0; k <= K; ++k) {
        std::vector<int> label(parent.size());
        for (size_t a = 0; a < parent.size(); ++a)
            label[a] = space.filtration().at(k).block_of(parent[a]);
        parts.push_back(Partition::group_by(label));
    }
    FiniteFilteredSpace product(std::move(weights), space.grid(), Filtration(std::move(parts)));
    return RandomTimeModel(std::move(product), std::move(tau));
}

RandomTimeModel cox_construct(const FiniteFilteredSpace& space, double hazard) {
    AdaptedProcess h(space.grid().points(), space.scenarios(), Filt::F, hazard);
    for (int i = 0; i < space.scenarios(); ++i) h.at(0, i) = 0.0;
    return cox_construct(space, HazardSpec{h});
}

}  // namespace filtlab
