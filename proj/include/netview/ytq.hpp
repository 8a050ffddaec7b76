// ytq.hpp - baseline view-construction state machine (every node floods its frontier)
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netview/graph.hpp"
#include "netview/view.hpp"

namespace netview {

enum class EndCause { none, equilibrium, pruned, round_limit };

const char* to_string(EndCause c);

struct NeighbouringMessage {
    NodeId sender = 0;
    NodeSet frontier;
};

struct Outgoing {
    NodeId dest = 0;
    NeighbouringMessage msg;
};

class YtqNode {
public:
    YtqNode(NodeId id, NodeSet neighbours, int D, std::size_t n);

    // Messages for this round; an ended node sends nothing and finalizes its estimate.
    std::vector<Outgoing> one_hop();
    void receive(NeighbouringMessage m);
    void update();
    bool is_ended() const { return cause_ != EndCause::none; }

    // Engine bookkeeping: neighbour j stopped at `round`.
    void neighbour_ended(NodeId j, EndCause cause, int round);

    Fraction closeness() const { return view_.closeness(); }
    const std::optional<Fraction>& closeness_estimate() const { return estimate_; }
    int T_actual() const { return T_actual_; }

    NodeId id() const { return id_; }
    const NodeSet& neighbours() const { return neighbours_; }
    int t() const { return t_; }
    int D() const { return D_; }
    EndCause end_cause() const { return cause_; }
    std::optional<int> H() const { return H_; }
    const ViewCore& view() const { return view_; }
    std::uint64_t received() const { return received_; }
    std::uint64_t sent() const { return sent_; }
    // h_i^{(l)} indexed by round l; entry 0 is always 0.
    const std::vector<std::int64_t>& h_tally() const { return h_; }

private:
    std::size_t local_index(NodeId j) const;

    NodeId id_;
    NodeSet neighbours_;
    int D_;
    int t_ = 0;
    ViewCore view_;
    std::vector<NeighbouringMessage> inbox_;
    std::vector<char> nbr_ended_;
    EndCause cause_ = EndCause::none;
    std::optional<int> H_;
    std::optional<Fraction> estimate_;
    int T_actual_ = 0;
    std::uint64_t received_ = 0;
    std::uint64_t sent_ = 0;
    std::vector<std::int64_t> h_;
};

}  // namespace netview
