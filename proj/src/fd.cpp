#include "netview/fd.hpp"

#include <algorithm>
#include <stdexcept>

namespace netview {

NodeSet endpoints(const EdgeSet& s) {
    NodeSet out;
    out.reserve(2 * s.size());
    for (auto e : s) {
        out.push_back(e.u);
        out.push_back(e.v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SignalKey key_of(const Signal& s) {
    return {s.S, s.Q, s.subject};
}

std::string to_string(const Signal& s) {
    std::string subj = s.Q == 0 ? std::to_string(s.subject.u)
                                : std::to_string(s.subject.u) + "-" + std::to_string(s.subject.v);
    return "Signal(" + std::to_string(s.S) + "," + std::to_string(s.Q) + "," + std::to_string(s.origin) + "," +
           subj + ")";
}

bool is_persistent(const Signal& sig, SignalMemory& memory) {
    auto k = key_of(sig);
    if (memory.count(k)) return false;
    memory.insert(k);
    memory.erase(SignalKey{1 - sig.S, sig.Q, sig.subject});
    return true;
}

FdNode::FdNode(NodeId id, NodeSet neighbours, int D, int T, std::size_t n)
    : id_(id), neighbours_(std::move(neighbours)), D_(D), T_(T) {
    if (D < 1) throw std::invalid_argument("D must be at least 1");
    if (T < 1) throw std::invalid_argument("T must be at least 1 round");
    if (neighbours_.empty()) throw std::invalid_argument("node has no neighbours");
    for (NodeId j : neighbours_) s_view_.insert(make_edge(id_, j));
    s_frontier_.assign(s_view_.begin(), s_view_.end());
    view_ = ViewCore(id_, neighbours_, n);
    const auto d = neighbours_.size();
    nbr_ended_.assign(d, 0);
    in_open_.assign(d, 1);
    out_open_.assign(d, 1);
    heard_.assign(d, 0);
    last_heard_.assign(d, 0);
    pending_.resize(d);
    h_.assign(static_cast<std::size_t>(D) + 1, 0);
    u_.assign(static_cast<std::size_t>(D) + 1, 0);
}

std::size_t FdNode::local_index(NodeId j) const {
    auto it = std::lower_bound(neighbours_.begin(), neighbours_.end(), j);
    if (it == neighbours_.end() || *it != j) throw std::out_of_range("not a neighbour");
    return static_cast<std::size_t>(it - neighbours_.begin());
}

NodeSet FdNode::final_node_view() const {
    NodeSet v = endpoints(final_edges_);
    insert_sorted(v, id_);
    return v;
}

NodeSet FdNode::e_down() const {
    NodeSet out;
    for (NodeId j : neighbours_)
        if (s_down_.count(make_edge(id_, j))) out.push_back(j);
    return out;
}

bool FdNode::signal_allowed(std::size_t k) const {
    NodeId j = neighbours_[k];
    return heard_[k] && !nbr_ended_[k] && !n_down_.count(j) && !s_down_.count(make_edge(id_, j));
}

void FdNode::broadcast(const Signal& s) {
    for (std::size_t k = 0; k < neighbours_.size(); ++k)
        if (!nbr_ended_[k] && !n_down_.count(neighbours_[k])) pending_[k].push_back(s);
}

void FdNode::emit(const Signal& s) {
    if (is_persistent(s, gamma_)) broadcast(s);
}

void FdNode::note(int round, std::string what) {
    log_.push_back({round, id_, std::move(what)});
}

void FdNode::snapshot_down(int round) {
    NodeSet nd(n_down_.begin(), n_down_.end());
    EdgeSet sd(s_down_.begin(), s_down_.end());
    if (!down_history_.empty() && down_history_.back().n_down == nd && down_history_.back().s_down == sd) return;
    if (down_history_.empty() && nd.empty() && sd.empty()) return;
    down_history_.push_back({round, std::move(nd), std::move(sd)});
}

std::vector<FdPacket> FdNode::one_hop(int now) {
    now_ = now;
    std::vector<FdPacket> out;
    auto take_signals = [this](std::size_t k) {
        std::vector<Signal> sigs;
        if (signal_allowed(k)) {
            sigs.assign(pending_[k].begin(), pending_[k].end());
            pending_[k].clear();
        }
        signals_sent_ += sigs.size();
        return sigs;
    };

    if (is_ended()) {
        if (!wants_final_ || final_done_) return out;
        for (std::size_t k = 0; k < neighbours_.size(); ++k) {
            NodeId j = neighbours_[k];
            if (nbr_ended_[k] || n_down_.count(j)) continue;
            out.push_back({id_, j, PacketKind::final_message, {}, take_signals(k)});
            ++final_sent_;
        }
        final_done_ = true;
        return out;
    }

    for (std::size_t k = 0; k < neighbours_.size(); ++k) {
        NodeId j = neighbours_[k];
        bool msg = !nbr_ended_[k] && out_open_[k] && !n_down_.count(j);
        auto sigs = take_signals(k);
        if (msg) {
            out.push_back({id_, j, PacketKind::neighbouring, s_frontier_, std::move(sigs)});
            ++sent_;
        } else if (!sigs.empty()) {
            out.push_back({id_, j, PacketKind::signal_only, {}, std::move(sigs)});
        }
    }
    return out;
}

void FdNode::receive(FdDelivery d) {
    inbox_.push_back(std::move(d));
}

std::optional<Signal> FdNode::node_failure_detection(NodeId j, int now) {
    auto k = local_index(j);
    if (nbr_ended_[k] || n_down_.count(j)) return std::nullopt;
    if (now - last_heard_[k] <= T_) return std::nullopt;
    n_down_.insert(j);
    auto sig = Signal::node(0, id_, j);
    emit(sig);
    note(now, "node failure detected: " + std::to_string(j));
    return sig;
}

bool FdNode::edge_failure_detection(NodeId j, bool corrupted) {
    if (!corrupted) return false;
    auto e = make_edge(id_, j);
    if (!s_down_.count(e)) {
        s_down_.insert(e);
        emit(Signal::edge(0, id_, e));
        note(now_, "edge failure detected: " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    return true;
}

std::vector<Signal> FdNode::recovery_detection(NodeId j, bool has_failed) {
    std::vector<Signal> out;
    if (has_failed) return out;
    if (n_down_.count(j)) {
        n_down_.erase(j);
        out.push_back(Signal::node(1, id_, j));
        note(now_, "node recovery detected: " + std::to_string(j));
    }
    auto e = make_edge(id_, j);
    if (s_down_.count(e)) {
        s_down_.erase(e);
        out.push_back(Signal::edge(1, id_, e));
        note(now_, "edge recovery detected: " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    for (auto& s : out) emit(s);
    return out;
}

std::vector<Signal> FdNode::forward_failure_signals() {
    std::vector<Signal> relayed;
    while (!P_.empty()) {
        Signal sig = P_.front();
        P_.pop_front();
        if ((sig.S != 0 && sig.S != 1) || (sig.Q != 0 && sig.Q != 1))
            throw std::runtime_error("malformed signal " + to_string(sig));
        if (!is_persistent(sig, gamma_)) continue;
        if (sig.Q == 0) {
            NodeId c = sig.subject.u;
            if (sig.S == 0 && c != id_) n_down_.insert(c);
            if (sig.S == 1) n_down_.erase(c);
        } else {
            if (sig.S == 0) s_down_.insert(sig.subject);
            if (sig.S == 1) s_down_.erase(sig.subject);
        }
        broadcast(sig);
        relayed.push_back(sig);
    }
    return relayed;
}

void FdNode::final_iteration() {
    final_edges_.clear();
    for (auto e : s_view_) {
        if (s_down_.count(e) || n_down_.count(e.u) || n_down_.count(e.v)) continue;
        final_edges_.push_back(e);
    }
}

void FdNode::on_recover(int now) {
    std::fill(last_heard_.begin(), last_heard_.end(), now);
}

void FdNode::update(int now) {
    if (is_ended()) throw std::logic_error("update on ended node");
    now_ = now;
    ++t_;
    auto tally = [this](std::vector<std::int64_t>& v, int round) {
        if (round >= 0 && static_cast<std::size_t>(round) < v.size()) ++v[round];
    };

    std::vector<std::pair<NodeId, const EdgeSet*>> clean;
    for (auto& d : inbox_) {
        NodeId j = d.packet.sender;
        auto k = local_index(j);
        last_heard_[k] = now;
        if (d.packet.kind == PacketKind::neighbouring) {
            ++received_;
            if (d.corrupted) ++corrupted_;
        }
        if (d.packet.kind == PacketKind::final_message) ++final_received_;
        bool down = edge_failure_detection(j, d.corrupted);
        recovery_detection(j, down);
        if (down) continue;
        heard_[k] = 1;
        signals_received_ += d.packet.signals.size();
        for (auto& s : d.packet.signals) P_.push_back(s);
        if (d.packet.kind == PacketKind::final_message) {
            if (!nbr_ended_[k]) {
                nbr_ended_[k] = 1;
                pending_[k].clear();
                if (in_open_[k]) {
                    in_open_[k] = 0;
                    tally(h_, t_ - 1);
                }
            }
        } else if (d.packet.kind == PacketKind::neighbouring && in_open_[k]) {
            clean.emplace_back(j, &d.packet.frontier);
        }
    }

    for (std::size_t k = 0; k < neighbours_.size(); ++k)
        if (!nbr_ended_[k] && in_open_[k]) node_failure_detection(neighbours_[k], now);
    forward_failure_signals();

    std::size_t live = 0, inbound = 0;
    NodeSet inbound_set;
    for (std::size_t k = 0; k < neighbours_.size(); ++k) {
        if (nbr_ended_[k] || n_down_.count(neighbours_[k])) continue;
        if (in_open_[k] || out_open_[k]) ++live;
        if (in_open_[k]) {
            ++inbound;
            inbound_set.push_back(neighbours_[k]);
        }
    }

    EdgeSet fresh;
    for (auto& [j, fr] : clean)
        for (auto e : *fr)
            if (!s_view_.count(e)) fresh.push_back(e);
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    s_view_.insert(fresh.begin(), fresh.end());
    s_frontier_ = std::move(fresh);
    NodeSet lifted = endpoints(s_frontier_);
    view_.fuse({&lifted}, t_);

    std::vector<NodeSet> ends;
    ends.reserve(clean.size());
    for (auto& c : clean) ends.push_back(endpoints(*c.second));

    NodeSet found;
    if (t_ == 1) {
        for (std::size_t m = 0; m < clean.size(); ++m) {
            NodeSet q = ends[m];
            q.erase(std::remove(q.begin(), q.end(), clean[m].first), q.end());
            q_[clean[m].first] = std::move(q);
        }
        q_[id_] = neighbours_;
        found = leaves_detection(id_, neighbours_, q_);
        insert_sorted(inbound_set, id_);
        found = sorted_union(found, triangle_detection(inbound_set, q_));
    } else {
        std::vector<ReceivedFrontier> rec;
        for (std::size_t m = 0; m < clean.size(); ++m) rec.push_back({clean[m].first, &ends[m]});
        found = further_pruning_detection(id_, rec, view_, live, inbound);
    }
    for (NodeId j : found) {
        if (j == id_) continue;
        auto k = local_index(j);
        if (in_open_[k] && !nbr_ended_[k]) {
            in_open_[k] = 0;
            tally(u_, t_);
        }
    }
    history_.push_back(found);

    if (view_.frontier().empty()) {
        if (holds_records() && t_ < D_) {
            note(now, "equilibrium suppressed while failure records are held");
        } else {
            cause_ = EndCause::equilibrium;
            H_ = t_;
            wants_final_ = t_ < D_;
        }
    } else if (contains_sorted(found, id_)) {
        cause_ = EndCause::pruned;
        L_ = t_;
    } else if (t_ >= D_) {
        cause_ = EndCause::round_limit;
    }
    inbox_.clear();
    snapshot_down(now);
    if (is_ended()) final_iteration();
}

void FdNode::detected_by(NodeId j, int /*round*/) {
    out_open_[local_index(j)] = 0;
}

void FdNode::neighbour_pruned(NodeId j, int round) {
    auto k = local_index(j);
    if (nbr_ended_[k]) return;
    nbr_ended_[k] = 1;
    pending_[k].clear();
    if (!in_open_[k]) return;
    in_open_[k] = 0;
    if (round >= 0 && static_cast<std::size_t>(round) < u_.size()) ++u_[round];
}

}  // namespace netview
