#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "filtlab/errors.hpp"

namespace filtlab {

// A partition of the scenario set {0, ..., n-1}, stored canonically: every
// block sorted ascending, blocks ordered by least member.  With the canonical
// form, partition equality is plain syntactic equality.
class Partition {
public:
    Partition() = default;
    Partition(int n_scenarios, std::vector<std::vector<int>> blocks);

    static Partition trivial(int n);
    static Partition singletons(int n);

    // Groups scenarios that share a label.
    template <class Label>
    static Partition group_by(const std::vector<Label>& labels) {
        std::map<Label, std::vector<int>> groups;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            groups[labels[static_cast<size_t>(i)]].push_back(i);
        std::vector<std::vector<int>> blocks;
        blocks.reserve(groups.size());
        for (auto& [key, members] : groups) blocks.push_back(std::move(members));
        return Partition(static_cast<int>(labels.size()), std::move(blocks));
    }

    int size() const { return n_; }  // number of scenarios
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<int>& block(int b) const { return blocks_.at(static_cast<size_t>(b)); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int scenario) const { return block_of_.at(static_cast<size_t>(scenario)); }

    // True iff every block of *this is contained in a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& other) const {
        return n_ == other.n_ && blocks_ == other.blocks_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

// Coarsest common refinement of two partitions (the sigma-algebra join).
// Commutative, associative, idempotent.
Partition join_partitions(const Partition& a, const Partition& b);

}  // namespace filtlab
