#include "netview/ytq.hpp"

#include <algorithm>
#include <stdexcept>

namespace netview {

const char* to_string(EndCause c) {
    switch (c) {
        case EndCause::none: return "running";
        case EndCause::equilibrium: return "equilibrium";
        case EndCause::pruned: return "pruned";
        case EndCause::round_limit: return "round_limit";
    }
    return "?";
}

YtqNode::YtqNode(NodeId id, NodeSet neighbours, int D, std::size_t n)
    : id_(id), neighbours_(std::move(neighbours)), D_(D) {
    if (D < 1) throw std::invalid_argument("D must be at least 1");
    if (neighbours_.empty()) throw std::invalid_argument("node has no neighbours");
    view_ = ViewCore(id_, neighbours_, n);
    nbr_ended_.assign(neighbours_.size(), 0);
    h_.assign(static_cast<std::size_t>(D) + 1, 0);
}

std::size_t YtqNode::local_index(NodeId j) const {
    auto it = std::lower_bound(neighbours_.begin(), neighbours_.end(), j);
    if (it == neighbours_.end() || *it != j) throw std::out_of_range("not a neighbour");
    return static_cast<std::size_t>(it - neighbours_.begin());
}

std::vector<Outgoing> YtqNode::one_hop() {
    std::vector<Outgoing> out;
    if (is_ended()) {
        T_actual_ = std::min(t_, D_);
        estimate_ = closeness();
        return out;
    }
    for (std::size_t k = 0; k < neighbours_.size(); ++k) {
        if (nbr_ended_[k]) continue;
        out.push_back({neighbours_[k], {id_, view_.frontier()}});
    }
    sent_ += out.size();
    return out;
}

void YtqNode::receive(NeighbouringMessage m) {
    inbox_.push_back(std::move(m));
}

void YtqNode::update() {
    if (is_ended()) throw std::logic_error("update on ended node");
    ++t_;
    received_ += inbox_.size();
    std::vector<const NodeSet*> sets;
    sets.reserve(inbox_.size());
    for (auto& m : inbox_) sets.push_back(&m.frontier);
    view_.fuse(sets, t_);
    inbox_.clear();

    if (view_.frontier().empty()) {
        cause_ = EndCause::equilibrium;
        H_ = t_;
    } else if (t_ == D_) {
        cause_ = EndCause::round_limit;
    }
    if (is_ended()) {
        T_actual_ = std::min(t_, D_);
        estimate_ = closeness();
    }
}

void YtqNode::neighbour_ended(NodeId j, EndCause cause, int round) {
    auto k = local_index(j);
    if (nbr_ended_[k]) return;
    nbr_ended_[k] = 1;
    if (cause == EndCause::equilibrium && round >= 0 && static_cast<std::size_t>(round) < h_.size()) ++h_[round];
}

}  // namespace netview
