// fd.hpp - pruning protocol over edge-set views with failure/recovery detection
#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netview/pruning.hpp"

namespace netview {

using EdgeSet = std::vector<Edge>;  // sorted, unique

NodeSet endpoints(const EdgeSet& s);

// Signal(S, Q, origin, subject). S: 0 failure / 1 recovery. Q: 0 node / 1 edge.
// A node subject c is stored as the degenerate pair (c, c).
struct Signal {
    int S = 0;
    int Q = 0;
    NodeId origin = 0;
    Edge subject;

    static Signal node(int S, NodeId origin, NodeId c) { return {S, 0, origin, Edge{c, c}}; }
    static Signal edge(int S, NodeId origin, Edge e) { return {S, 1, origin, e}; }
    bool operator==(const Signal&) const = default;
};

struct SignalKey {
    int S = 0;
    int Q = 0;
    Edge subject;
    auto operator<=>(const SignalKey&) const = default;
};

SignalKey key_of(const Signal& s);
std::string to_string(const Signal& s);

using SignalMemory = std::set<SignalKey>;  // Γ_i

// True the first time a signal is seen; stores it and drops its negation.
bool is_persistent(const Signal& sig, SignalMemory& memory);

enum class PacketKind { neighbouring, final_message, signal_only };

struct FdPacket {
    NodeId sender = 0;
    NodeId dest = 0;
    PacketKind kind = PacketKind::neighbouring;
    EdgeSet frontier;
    std::vector<Signal> signals;
};

// A delivery carries the checksum verdict as a corruption bit.
struct FdDelivery {
    FdPacket packet;
    bool corrupted = false;
};

struct FdLogEntry {
    int round = 0;
    NodeId node = 0;
    std::string what;
};

struct DownSnapshot {
    int round = 0;
    NodeSet n_down;
    EdgeSet s_down;
};

class FdNode {
public:
    FdNode(NodeId id, NodeSet neighbours, int D, int T, std::size_t n);

    // Neighbouring messages, the one-off final message, and signal envelopes.
    std::vector<FdPacket> one_hop(int now);
    void receive(FdDelivery d);
    void update(int now);

    void detected_by(NodeId j, int round);
    void neighbour_pruned(NodeId j, int round);
    void on_recover(int now);

    bool is_ended() const { return cause_ != EndCause::none; }
    // Ended and nothing left to transmit.
    bool finished() const { return is_ended() && !(wants_final_ && !final_done_); }

    // Subroutines, public so they can be exercised directly.
    std::optional<Signal> node_failure_detection(NodeId j, int now);
    bool edge_failure_detection(NodeId j, bool corrupted);
    std::vector<Signal> recovery_detection(NodeId j, bool has_failed);
    std::vector<Signal> forward_failure_signals();
    void final_iteration();

    NodeId id() const { return id_; }
    const NodeSet& neighbours() const { return neighbours_; }
    int t() const { return t_; }
    int D() const { return D_; }
    int T() const { return T_; }
    EndCause end_cause() const { return cause_; }
    bool self_pruned() const { return cause_ == EndCause::pruned; }
    std::optional<int> H() const { return H_; }
    std::optional<int> L() const { return L_; }
    Fraction closeness() const { return self_pruned() ? Fraction(0) : view_.closeness(); }

    const ViewCore& view() const { return view_; }
    const EdgeSet& edge_frontier() const { return s_frontier_; }
    EdgeSet edge_view() const { return {s_view_.begin(), s_view_.end()}; }
    const EdgeSet& final_edge_view() const { return final_edges_; }
    NodeSet final_node_view() const;

    const SignalMemory& gamma() const { return gamma_; }
    NodeSet n_down() const { return {n_down_.begin(), n_down_.end()}; }
    EdgeSet s_down() const { return {s_down_.begin(), s_down_.end()}; }
    NodeSet e_down() const;
    bool holds_records() const { return !n_down_.empty() || !s_down_.empty(); }

    const std::vector<NodeSet>& detection_history() const { return history_; }
    const std::vector<DownSnapshot>& down_history() const { return down_history_; }
    const std::vector<FdLogEntry>& log() const { return log_; }

    std::uint64_t received() const { return received_; }
    std::uint64_t sent() const { return sent_; }
    std::uint64_t corrupted() const { return corrupted_; }
    std::uint64_t final_sent() const { return final_sent_; }
    std::uint64_t final_received() const { return final_received_; }
    std::uint64_t signals_sent() const { return signals_sent_; }
    std::uint64_t signals_received() const { return signals_received_; }
    const std::vector<std::int64_t>& h_tally() const { return h_; }
    const std::vector<std::int64_t>& u_tally() const { return u_; }

private:
    std::size_t local_index(NodeId j) const;
    bool signal_allowed(std::size_t k) const;
    void broadcast(const Signal& s);
    void emit(const Signal& s);
    void note(int round, std::string what);
    void snapshot_down(int round);

    NodeId id_;
    NodeSet neighbours_;
    int D_;
    int T_;
    int t_ = 0;
    int now_ = 0;

    std::set<Edge> s_view_;
    EdgeSet s_frontier_;
    ViewCore view_;  // endpoints of s_view_ plus self
    EdgeSet final_edges_;

    std::vector<FdDelivery> inbox_;
    std::vector<char> nbr_ended_;
    std::vector<char> in_open_;
    std::vector<char> out_open_;
    std::vector<char> heard_;
    std::vector<int> last_heard_;
    std::vector<std::deque<Signal>> pending_;

    std::deque<Signal> P_;
    SignalMemory gamma_;
    std::set<NodeId> n_down_;
    std::set<Edge> s_down_;

    OneHopCache q_;
    std::vector<NodeSet> history_;
    EndCause cause_ = EndCause::none;
    std::optional<int> H_;
    std::optional<int> L_;
    bool wants_final_ = false;
    bool final_done_ = false;

    std::vector<DownSnapshot> down_history_;
    std::vector<FdLogEntry> log_;

    std::uint64_t received_ = 0;
    std::uint64_t sent_ = 0;
    std::uint64_t corrupted_ = 0;
    std::uint64_t final_sent_ = 0;
    std::uint64_t final_received_ = 0;
    std::uint64_t signals_sent_ = 0;
    std::uint64_t signals_received_ = 0;
    std::vector<std::int64_t> h_;
    std::vector<std::int64_t> u_;
};

}  // namespace netview
