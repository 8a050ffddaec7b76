// sim.hpp - deterministic round engine: send, deliver (ascending sender), update, bookkeeping
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netview/fd.hpp"
#include "netview/graph.hpp"
#include "netview/schedule.hpp"

namespace netview {

enum class Protocol { ytq, pruning, fd };

const char* to_string(Protocol p);
Protocol parse_protocol(const std::string& s);

struct NodeReport {
    NodeId id = 0;
    std::size_t degree = 0;
    std::uint64_t received = 0;  // neighbouring messages: Y_i or P_i
    std::uint64_t sent = 0;
    std::uint64_t final_sent = 0;
    std::uint64_t final_received = 0;
    std::uint64_t signals_sent = 0;
    std::uint64_t signals_received = 0;
    std::uint64_t corrupted = 0;
    std::optional<int> L;  // nullopt stands for +inf
    std::optional<int> H;
    EndCause end = EndCause::none;
    int rounds = 0;  // T = min(t, D)
    bool self_pruned = false;
    Fraction closeness{0};
    NodeSet final_view;
    EdgeSet final_edge_view;           // fd, after cleanup
    std::vector<NodeSet> detections;   // F_i^{(t)}, index t-1
    std::vector<std::int64_t> h;       // per round
    std::vector<std::int64_t> u;
    std::vector<NodeSet> view_history; // only with RunOptions::record_views
    std::vector<DownSnapshot> down_history;
    std::vector<SignalKey> gamma;
};

struct PruneEvent {
    NodeId pruner = 0;
    NodeId pruned = 0;
    int round = 0;
};

struct RunReport {
    Protocol protocol = Protocol::ytq;
    int D = 1;
    int T = 1;
    std::uint64_t seed = 0;
    int rounds = 0;
    std::vector<NodeReport> nodes;
    std::vector<PruneEvent> prune_events;
    std::vector<FdLogEntry> log;
    FailureSchedule schedule;
};

struct RunOptions {
    int T = 1;
    std::uint64_t seed = 0;
    FailureSchedule schedule;
    bool record_views = false;
};

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunReport run(const Graph& g, Protocol protocol, int D, const RunOptions& options = {});

struct MessageCounts {
    std::vector<std::uint64_t> per_node;
    std::uint64_t total = 0;
    double mean = 0.0;
    std::uint64_t max = 0;
};

MessageCounts count_messages(const RunReport& r);

// Trace cell for node i at round t: the detected set, or ⊥ / ⊤ once the node has
// stopped (pruned / equilibrium) in an earlier round.
std::string trace_cell(const RunReport& r, NodeId i, int t, std::string (*label)(NodeId) = nullptr);

}  // namespace netview
