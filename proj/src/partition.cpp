#include "filtlab/partition.hpp"

#include <utility>

namespace filtlab {

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) { return x.front() < y.front(); });
}

}  // namespace

Partition::Partition(int n_scenarios, std::vector<std::vector<int>> blocks)
    : n_(n_scenarios), blocks_(std::move(blocks)) {
    FILTLAB_REQUIRE(n_ > 0, InvalidSpaceError, "partition needs at least one scenario");
    for (const auto& b : blocks_)
        FILTLAB_REQUIRE(!b.empty(), InvalidSpaceError, "partition has an empty block");
    canonicalize(blocks_);
    block_of_.assign(static_cast<size_t>(n_), -1);
    for (int b = 0; b < block_count(); ++b) {
        for (int scenario : blocks_[static_cast<size_t>(b)]) {
            FILTLAB_REQUIRE(scenario >= 0 && scenario < n_, InvalidSpaceError,
                            "partition block refers to an unknown scenario");
            FILTLAB_REQUIRE(block_of_[static_cast<size_t>(scenario)] == -1, InvalidSpaceError,
                            "scenario appears in two blocks");
            block_of_[static_cast<size_t>(scenario)] = b;
        }
    }
    for (int i = 0; i < n_; ++i)
        FILTLAB_REQUIRE(block_of_[static_cast<size_t>(i)] >= 0, InvalidSpaceError,
                        "scenario missing from every block");
}

Partition Partition::trivial(int n) {
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    return Partition(n, {all});
}

Partition Partition::singletons(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) blocks.push_back({i});
    return Partition(n, std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (n_ != coarser.size()) return false;
    for (const auto& b : blocks_) {
        const int target = coarser.block_of(b.front());
        for (int scenario : b)
            if (coarser.block_of(scenario) != target) return false;
    }
    return true;
}

Partition join_partitions(const Partition& a, const Partition& b) {
    FILTLAB_REQUIRE(a.size() == b.size(), InvalidSpaceError,
                    "join: partitions live on different scenario sets");
    std::vector<std::pair<int, int>> labels(static_cast<size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i)
        labels[static_cast<size_t>(i)] = {a.block_of(i), b.block_of(i)};
    return Partition::group_by(labels);
}

}  // namespace filtlab
