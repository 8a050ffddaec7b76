#include "netview/view.hpp"

#include <algorithm>

namespace netview {

ViewCore::ViewCore(NodeId self, const NodeSet& neighbours, std::size_t n)
    : bits_(n), frontier_(neighbours), delta_(static_cast<std::int64_t>(neighbours.size())) {
    bits_.set(self);
    for (NodeId v : neighbours) bits_.set(v);
    count_ = bits_.count();
}

void ViewCore::fuse(const std::vector<const NodeSet*>& received, int t) {
    NodeSet fresh;
    for (const NodeSet* s : received)
        for (NodeId v : *s)
            if (!bits_.test(v)) fresh.push_back(v);
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    for (NodeId v : fresh) bits_.set(v);
    count_ += fresh.size();
    delta_ += static_cast<std::int64_t>(t + 1) * static_cast<std::int64_t>(fresh.size());
    frontier_ = std::move(fresh);
}

bool ViewCore::includes(const NodeSet& s) const {
    return std::all_of(s.begin(), s.end(), [this](NodeId v) { return contains(v); });
}

bool ViewCore::included_before_round(const NodeSet& s) const {
    return includes(s) && sorted_disjoint(s, frontier_);
}

NodeSet ViewCore::members() const {
    NodeSet out;
    out.reserve(count_);
    for (auto k = bits_.find_first(); k != boost::dynamic_bitset<>::npos; k = bits_.find_next(k))
        out.push_back(static_cast<NodeId>(k));
    return out;
}

Fraction ViewCore::closeness() const {
    if (delta_ == 0) return Fraction(0);
    return Fraction(static_cast<std::int64_t>(count_) - 1, delta_);
}

bool sorted_disjoint(const NodeSet& a, const NodeSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return true;
}

NodeSet sorted_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void insert_sorted(NodeSet& s, NodeId v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

bool contains_sorted(const NodeSet& s, NodeId v) {
    return std::binary_search(s.begin(), s.end(), v);
}

}  // namespace netview
