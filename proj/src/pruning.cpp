#include "netview/pruning.hpp"

#include <algorithm>
#include <stdexcept>

namespace netview {

NodeSet leaves_detection(NodeId self, const NodeSet& neighbours, const OneHopCache& q) {
    NodeSet out;
    auto check = [&](NodeId j) {
        auto it = q.find(j);
        if (it != q.end() && it->second.size() == 1) out.push_back(j);
    };
    for (NodeId j : neighbours) check(j);
    check(self);
    std::sort(out.begin(), out.end());
    return out;
}

NodeSet triangle_detection(const NodeSet& scan, const OneHopCache& q) {
    auto adjacent = [&q](NodeId f, NodeId g) {
        auto a = q.find(g);
        if (a != q.end() && contains_sorted(a->second, f)) return true;
        auto b = q.find(f);
        return b != q.end() && contains_sorted(b->second, g);
    };
    NodeSet out;
    for (NodeId j : scan) {
        auto it = q.find(j);
        if (it == q.end() || it->second.size() != 2) continue;
        if (adjacent(it->second[0], it->second[1])) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodeSet further_pruning_detection(NodeId self, const std::vector<ReceivedFrontier>& received,
                                  const ViewCore& view, std::size_t live, std::size_t inbound) {
    NodeSet out;
    for (const auto& r : received)
        if (view.included_before_round(*r.frontier)) out.push_back(r.sender);
    if (live == 1 && inbound == 1 && !view.frontier().empty()) out.push_back(self);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PruningNode::PruningNode(NodeId id, NodeSet neighbours, int D, std::size_t n)
    : id_(id), neighbours_(std::move(neighbours)), D_(D) {
    if (D < 1) throw std::invalid_argument("D must be at least 1");
    if (neighbours_.empty()) throw std::invalid_argument("node has no neighbours");
    view_ = ViewCore(id_, neighbours_, n);
    nbr_ended_.assign(neighbours_.size(), 0);
    in_open_.assign(neighbours_.size(), 1);
    out_open_.assign(neighbours_.size(), 1);
    h_.assign(static_cast<std::size_t>(D) + 1, 0);
    u_.assign(static_cast<std::size_t>(D) + 1, 0);
}

std::size_t PruningNode::local_index(NodeId j) const {
    auto it = std::lower_bound(neighbours_.begin(), neighbours_.end(), j);
    if (it == neighbours_.end() || *it != j) throw std::out_of_range("not a neighbour");
    return static_cast<std::size_t>(it - neighbours_.begin());
}

const NodeSet& PruningNode::pruned_round() const {
    static const NodeSet empty;
    return history_.empty() ? empty : history_.back();
}

NodeSet PruningNode::active_neighbours() const {
    NodeSet out;
    for (std::size_t k = 0; k < neighbours_.size(); ++k)
        if (!nbr_ended_[k] && in_open_[k]) out.push_back(neighbours_[k]);
    return out;
}

NodeSet PruningNode::outbound_neighbours() const {
    NodeSet out;
    for (std::size_t k = 0; k < neighbours_.size(); ++k)
        if (!nbr_ended_[k] && out_open_[k]) out.push_back(neighbours_[k]);
    return out;
}

std::vector<Outgoing> PruningNode::one_hop() {
    std::vector<Outgoing> out;
    if (is_ended()) {
        T_actual_ = std::min(t_, D_);
        estimate_ = closeness();
        return out;
    }
    for (std::size_t k = 0; k < neighbours_.size(); ++k)
        if (!nbr_ended_[k] && out_open_[k]) out.push_back({neighbours_[k], {id_, view_.frontier()}});
    sent_ += out.size();
    return out;
}

void PruningNode::receive(NeighbouringMessage m) {
    if (!in_open_[local_index(m.sender)]) throw std::logic_error("message over a closed link");
    inbox_.push_back(std::move(m));
}

void PruningNode::update() {
    if (is_ended()) throw std::logic_error("update on ended node");
    ++t_;
    received_ += inbox_.size();

    std::size_t live = 0, inbound = 0;
    NodeSet inbound_set;
    for (std::size_t k = 0; k < neighbours_.size(); ++k) {
        if (nbr_ended_[k]) continue;
        if (in_open_[k] || out_open_[k]) ++live;
        if (in_open_[k]) {
            ++inbound;
            inbound_set.push_back(neighbours_[k]);
        }
    }

    std::vector<const NodeSet*> sets;
    for (auto& m : inbox_) sets.push_back(&m.frontier);
    view_.fuse(sets, t_);

    NodeSet found;
    if (t_ == 1) {
        for (auto& m : inbox_) q_[m.sender] = m.frontier;
        q_[id_] = neighbours_;
        found = leaves_detection(id_, neighbours_, q_);
        insert_sorted(inbound_set, id_);
        found = sorted_union(found, triangle_detection(inbound_set, q_));
    } else {
        std::vector<ReceivedFrontier> rec;
        for (auto& m : inbox_) rec.push_back({m.sender, &m.frontier});
        found = further_pruning_detection(id_, rec, view_, live, inbound);
    }
    inbox_.clear();

    for (NodeId j : found) {
        if (j == id_) continue;
        auto k = local_index(j);
        if (in_open_[k] && !nbr_ended_[k]) {
            in_open_[k] = 0;
            ++u_[t_];
        }
    }
    pruned_all_ = sorted_union(pruned_all_, found);
    history_.push_back(found);

    if (view_.frontier().empty()) {
        cause_ = EndCause::equilibrium;
        H_ = t_;
    } else if (contains_sorted(found, id_)) {
        cause_ = EndCause::pruned;
        L_ = t_;
    } else if (t_ == D_) {
        cause_ = EndCause::round_limit;
    }
    if (is_ended()) {
        T_actual_ = std::min(t_, D_);
        estimate_ = closeness();
    }
}

void PruningNode::detected_by(NodeId j, int round) {
    out_open_[local_index(j)] = 0;
    pruned_by_.emplace_back(j, round);
}

void PruningNode::neighbour_ended(NodeId j, EndCause cause, int round) {
    auto k = local_index(j);
    if (nbr_ended_[k]) return;
    nbr_ended_[k] = 1;
    if (!in_open_[k]) return;
    in_open_[k] = 0;
    if (round < 0 || static_cast<std::size_t>(round) >= u_.size()) return;
    if (cause == EndCause::pruned) ++u_[round];
    if (cause == EndCause::equilibrium) ++h_[round];
}

}  // namespace netview
