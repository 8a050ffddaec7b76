// view.hpp - cumulative node view with per-round frontier and distance-weighted delta
#pragma once

#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "netview/graph.hpp"

namespace netview {

// Holds N_{i,t} (including the owner), the frontier N_i^{(t)} and delta_i.
class ViewCore {
public:
    ViewCore() = default;
    ViewCore(NodeId self, const NodeSet& neighbours, std::size_t n);

    // Round t fusion: frontier = (union of received) \ view, delta += (t+1)|frontier|.
    void fuse(const std::vector<const NodeSet*>& received, int t);

    bool contains(NodeId v) const { return v < bits_.size() && bits_.test(v); }
    bool includes(const NodeSet& s) const;
    // s ⊆ view before the latest fusion
    bool included_before_round(const NodeSet& s) const;

    const NodeSet& frontier() const { return frontier_; }
    std::size_t size() const { return count_; }
    std::int64_t delta() const { return delta_; }
    NodeSet members() const;
    Fraction closeness() const;

private:
    boost::dynamic_bitset<> bits_;
    std::size_t count_ = 0;
    NodeSet frontier_;
    std::int64_t delta_ = 0;
};

bool sorted_disjoint(const NodeSet& a, const NodeSet& b);
NodeSet sorted_union(const NodeSet& a, const NodeSet& b);
void insert_sorted(NodeSet& s, NodeId v);
bool contains_sorted(const NodeSet& s, NodeId v);

}  // namespace netview
