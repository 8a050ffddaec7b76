// pruning.hpp - leaf / triangle / no-news pruning on top of the baseline flooding
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "netview/ytq.hpp"

namespace netview {

// Q_{ij}: neighbour j's one-hop set as received in round 1; Q_{ii} = N_i.
using OneHopCache = std::map<NodeId, NodeSet>;

// Every j in N_i ∪ {i} with |Q_ij| = 1.
NodeSet leaves_detection(NodeId self, const NodeSet& neighbours, const OneHopCache& q);

// Every scanned j with |Q_ij| = 2 whose two neighbours are adjacent.
NodeSet triangle_detection(const NodeSet& scan, const OneHopCache& q);

struct ReceivedFrontier {
    NodeId sender;
    const NodeSet* frontier;
};

// Rounds >= 2. Senders whose frontier brings nothing new, plus self when it hangs off
// a single live neighbour that still feeds it and it still learns something.
NodeSet further_pruning_detection(NodeId self, const std::vector<ReceivedFrontier>& received,
                                  const ViewCore& view, std::size_t live, std::size_t inbound);

class PruningNode {
public:
    PruningNode(NodeId id, NodeSet neighbours, int D, std::size_t n);

    std::vector<Outgoing> one_hop();
    void receive(NeighbouringMessage m);
    void update();
    bool is_ended() const { return cause_ != EndCause::none; }

    // Engine bookkeeping applied after every update of a round.
    void detected_by(NodeId j, int round);
    void neighbour_ended(NodeId j, EndCause cause, int round);

    Fraction closeness() const { return self_pruned() ? Fraction(0) : view_.closeness(); }
    const std::optional<Fraction>& closeness_estimate() const { return estimate_; }
    int T_actual() const { return T_actual_; }

    NodeId id() const { return id_; }
    const NodeSet& neighbours() const { return neighbours_; }
    int t() const { return t_; }
    int D() const { return D_; }
    EndCause end_cause() const { return cause_; }
    bool self_pruned() const { return cause_ == EndCause::pruned; }
    std::optional<int> H() const { return H_; }
    std::optional<int> L() const { return L_; }
    const ViewCore& view() const { return view_; }
    std::uint64_t received() const { return received_; }
    std::uint64_t sent() const { return sent_; }

    // F_i^{(t)} of the latest round and the per-round history (index t-1).
    const NodeSet& pruned_round() const;
    const std::vector<NodeSet>& detection_history() const { return history_; }
    const NodeSet& pruned_all() const { return pruned_all_; }
    const OneHopCache& first_hop_cache() const { return q_; }
    // Neighbours that still send to this node / that this node still sends to.
    NodeSet active_neighbours() const;
    NodeSet outbound_neighbours() const;
    const std::vector<std::pair<NodeId, int>>& pruned_by() const { return pruned_by_; }

    const std::vector<std::int64_t>& h_tally() const { return h_; }
    const std::vector<std::int64_t>& u_tally() const { return u_; }

private:
    std::size_t local_index(NodeId j) const;

    NodeId id_;
    NodeSet neighbours_;
    int D_;
    int t_ = 0;
    ViewCore view_;
    std::vector<NeighbouringMessage> inbox_;
    std::vector<char> nbr_ended_;
    std::vector<char> in_open_;   // j -> i
    std::vector<char> out_open_;  // i -> j
    OneHopCache q_;
    std::vector<NodeSet> history_;
    NodeSet pruned_all_;
    std::vector<std::pair<NodeId, int>> pruned_by_;
    EndCause cause_ = EndCause::none;
    std::optional<int> H_;
    std::optional<int> L_;
    std::optional<Fraction> estimate_;
    int T_actual_ = 0;
    std::uint64_t received_ = 0;
    std::uint64_t sent_ = 0;
    std::vector<std::int64_t> h_;
    std::vector<std::int64_t> u_;
};

}  // namespace netview
