#pragma once

#include <vector>

#include "filtlab/errors.hpp"
#include "filtlab/space.hpp"

namespace filtlab {

// A terminal-measurable quantity: one real per scenario.
class RandomVariable {
public:
    RandomVariable() = default;
    explicit RandomVariable(std::vector<double> values) : values_(std::move(values)) {}
    static RandomVariable constant(int n, double c) {
        return RandomVariable(std::vector<double>(static_cast<size_t>(n), c));
    }

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_.at(static_cast<size_t>(i)); }
    double& operator[](int i) { return values_.at(static_cast<size_t>(i)); }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const RandomVariable&) const = default;

private:
    std::vector<double> values_;
};

// Which filtration a process claims to be adapted to.
enum class Filt { F, G };

// A real value per (grid time, scenario), constant on the blocks of the tagged
// filtration at each time.  Block-constancy is maintained by construction:
// everything that builds one of these assigns block-wise.
class AdaptedProcess {
public:
    AdaptedProcess() = default;
    AdaptedProcess(int points, int scenarios, Filt tag, double init = 0.0)
        : tag_(tag),
          values_(static_cast<size_t>(points),
                  std::vector<double>(static_cast<size_t>(scenarios), init)) {}

    static AdaptedProcess constant(int points, int scenarios, double c, Filt tag = Filt::F) {
        return AdaptedProcess(points, scenarios, tag, c);
    }
    // Deterministic path: value depends on the time index only.
    static AdaptedProcess deterministic(const std::vector<double>& per_time, int scenarios,
                                        Filt tag = Filt::F);

    Filt tag() const { return tag_; }
    void set_tag(Filt t) { tag_ = t; }
    int points() const { return static_cast<int>(values_.size()); }
    int scenarios() const { return values_.empty() ? 0 : static_cast<int>(values_.front().size()); }

    double at(int k, int scenario) const {
        return values_.at(static_cast<size_t>(k)).at(static_cast<size_t>(scenario));
    }
    double& at(int k, int scenario) {
        return values_.at(static_cast<size_t>(k)).at(static_cast<size_t>(scenario));
    }
    const std::vector<double>& row(int k) const { return values_.at(static_cast<size_t>(k)); }
    std::vector<double>& row(int k) { return values_.at(static_cast<size_t>(k)); }

    RandomVariable terminal() const { return RandomVariable(values_.back()); }

    bool operator==(const AdaptedProcess&) const = default;

private:
    Filt tag_ = Filt::F;
    std::vector<std::vector<double>> values_;  // [time][scenario]
};

// Exact adaptedness: values constant on each block of `filtration` at each time.
bool is_adapted(const AdaptedProcess& x, const Filtration& filtration);

// Discrete predictability: the value at t_k is measurable for the partition at
// t_{k-1}; at k = 0 the convention F_{t_{-1}} = trivial applies.
bool is_predictable(const AdaptedProcess& x, const Filtration& filtration);

// Largest within-block spread; for processes derived from block-wise
// conditional expectations the exact checks above are too strict, rounding
// leaves spreads of order machine epsilon.
double adaptedness_defect(const AdaptedProcess& x, const Filtration& filtration);
double predictability_defect(const AdaptedProcess& x, const Filtration& filtration);

}  // namespace filtlab
