#include "netview/sim.hpp"

#include <algorithm>
#include <map>

#include "netview/pruning.hpp"
#include "netview/ytq.hpp"

namespace netview {

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::ytq: return "ytq";
        case Protocol::pruning: return "pruning";
        case Protocol::fd: return "fd";
    }
    return "?";
}

Protocol parse_protocol(const std::string& s) {
    if (s == "ytq") return Protocol::ytq;
    if (s == "pruning") return Protocol::pruning;
    if (s == "fd") return Protocol::fd;
    throw std::invalid_argument("unknown protocol '" + s + "'");
}

namespace {

void check_graph(const Graph& g) {
    if (g.size() < 2) throw SimError("simulation needs at least two nodes");
    if (!g.is_connected()) throw SimError("simulation graph must be connected");
}

template <typename Node>
RunReport run_flooding(const Graph& g, Protocol protocol, int D, const RunOptions& opt) {
    const std::size_t n = g.size();
    std::vector<Node> nodes;
    nodes.reserve(n);
    for (NodeId i = 0; i < n; ++i) nodes.emplace_back(i, g.neighbours(i), D, n);

    RunReport rep;
    rep.protocol = protocol;
    rep.D = D;
    rep.T = opt.T;
    rep.seed = opt.seed;
    std::vector<std::vector<NodeSet>> views(opt.record_views ? n : 0);

    int r = 0;
    while (r < D && std::any_of(nodes.begin(), nodes.end(), [](auto& x) { return !x.is_ended(); })) {
        ++r;
        for (auto& node : nodes)
            for (auto& o : node.one_hop()) {
                if (nodes[o.dest].is_ended()) throw SimError("message addressed to an ended node");
                nodes[o.dest].receive(std::move(o.msg));
            }

        std::vector<NodeId> updated;
        for (auto& node : nodes) {
            if (node.is_ended()) continue;
            node.update();
            updated.push_back(node.id());
            if (opt.record_views) views[node.id()].push_back(node.view().members());
        }

        if constexpr (std::is_same_v<Node, PruningNode>) {
            for (NodeId i : updated)
                for (NodeId j : nodes[i].pruned_round()) {
                    if (j == i) continue;
                    nodes[j].detected_by(i, r);
                    rep.prune_events.push_back({i, j, r});
                }
        }
        for (NodeId i : updated) {
            if (!nodes[i].is_ended()) continue;
            for (NodeId j : g.neighbours(i)) nodes[j].neighbour_ended(i, nodes[i].end_cause(), r);
        }
    }
    rep.rounds = r;

    for (auto& node : nodes) {
        node.one_hop();  // finalizes T and the estimate
        NodeReport nr;
        nr.id = node.id();
        nr.degree = node.neighbours().size();
        nr.received = node.received();
        nr.sent = node.sent();
        nr.H = node.H();
        nr.end = node.end_cause();
        nr.rounds = node.T_actual();
        nr.closeness = *node.closeness_estimate();
        nr.final_view = node.view().members();
        nr.h = node.h_tally();
        if constexpr (std::is_same_v<Node, PruningNode>) {
            nr.L = node.L();
            nr.self_pruned = node.self_pruned();
            nr.detections = node.detection_history();
            nr.u = node.u_tally();
        } else {
            nr.u.assign(nr.h.size(), 0);
        }
        if (opt.record_views) nr.view_history = std::move(views[node.id()]);
        rep.nodes.push_back(std::move(nr));
    }
    return rep;
}

RunReport run_fd(const Graph& g, int D, const RunOptions& opt) {
    const std::size_t n = g.size();
    if (!opt.schedule.empty()) {
        auto ref = run_flooding<PruningNode>(g, Protocol::pruning, D, {});
        std::vector<std::optional<int>> L(n);
        for (auto& nr : ref.nodes) L[nr.id] = nr.L;
        try {
            validate_schedule(g, opt.schedule, L);
        } catch (const ScheduleError& e) {
            throw SimError(std::string("invalid failure schedule: ") + e.what());
        }
    }

    std::vector<FdNode> nodes;
    nodes.reserve(n);
    for (NodeId i = 0; i < n; ++i) nodes.emplace_back(i, g.neighbours(i), D, opt.T, n);

    RunReport rep;
    rep.protocol = Protocol::fd;
    rep.D = D;
    rep.T = opt.T;
    rep.seed = opt.seed;
    rep.schedule = opt.schedule;
    std::vector<std::vector<NodeSet>> views(opt.record_views ? n : 0);

    std::map<int, std::vector<const FailureEvent*>> by_round;
    int last_event = 0;
    for (auto& e : opt.schedule) {
        by_round[e.round].push_back(&e);
        last_event = std::max(last_event, e.round);
    }
    std::vector<char> failed(n, 0);
    std::vector<int> pending_recover(n, 0);
    for (auto& e : opt.schedule)
        if (e.kind == TargetKind::node && e.action == FailureAction::recover) ++pending_recover[e.node];
    std::set<Edge> failed_edges;
    const int cap = 2 * D + last_event + 2;

    auto settled = [&](NodeId i) { return nodes[i].finished() || (failed[i] && pending_recover[i] == 0); };

    int r = 0;
    while (r < cap) {
        bool all_settled = true;
        for (NodeId i = 0; i < n; ++i) all_settled = all_settled && settled(i);
        if (all_settled && r >= last_event) break;
        ++r;

        if (auto it = by_round.find(r); it != by_round.end()) {
            for (auto* e : it->second) {
                bool fail = e->action == FailureAction::fail;
                if (e->kind == TargetKind::node) {
                    failed[e->node] = fail;
                    if (!fail) {
                        --pending_recover[e->node];
                        nodes[e->node].on_recover(r);
                    }
                    rep.log.push_back({r, e->node, fail ? "node failed" : "node recovered"});
                } else {
                    if (fail)
                        failed_edges.insert(e->edge);
                    else
                        failed_edges.erase(e->edge);
                    rep.log.push_back({r, e->edge.u,
                                       std::string(fail ? "edge failed " : "edge recovered ") +
                                           std::to_string(e->edge.u) + "-" + std::to_string(e->edge.v)});
                }
            }
        }

        for (NodeId i = 0; i < n; ++i) {
            if (failed[i]) continue;
            for (auto& p : nodes[i].one_hop(r)) {
                NodeId dst = p.dest;
                if (failed[dst] || nodes[dst].is_ended()) continue;
                bool corrupted = failed_edges.count(make_edge(p.sender, dst)) > 0;
                nodes[dst].receive({std::move(p), corrupted});
            }
        }

        std::vector<NodeId> updated;
        for (NodeId i = 0; i < n; ++i) {
            if (failed[i] || nodes[i].is_ended()) continue;
            nodes[i].update(r);
            updated.push_back(i);
            if (opt.record_views) views[i].push_back(nodes[i].view().members());
        }

        const bool failures_active =
            !failed_edges.empty() || std::any_of(failed.begin(), failed.end(), [](char c) { return c; });
        for (NodeId i : updated) {
            const auto& hist = nodes[i].detection_history();
            for (NodeId j : hist.back()) {
                if (j == i) continue;
                nodes[j].detected_by(i, r);
                rep.prune_events.push_back({i, j, r});
            }
        }
        for (NodeId i : updated) {
            if (!nodes[i].is_ended()) continue;
            if (nodes[i].end_cause() == EndCause::pruned)
                for (NodeId j : g.neighbours(i)) nodes[j].neighbour_pruned(i, r);
            if (nodes[i].end_cause() == EndCause::equilibrium && failures_active)
                rep.log.push_back({r, i, "equilibrium reached while failures are active (possibly premature)"});
        }
    }
    rep.rounds = r;

    for (auto& node : nodes) {
        NodeReport nr;
        nr.id = node.id();
        nr.degree = node.neighbours().size();
        nr.received = node.received();
        nr.sent = node.sent();
        nr.final_sent = node.final_sent();
        nr.final_received = node.final_received();
        nr.signals_sent = node.signals_sent();
        nr.signals_received = node.signals_received();
        nr.corrupted = node.corrupted();
        nr.L = node.L();
        nr.H = node.H();
        nr.end = node.end_cause();
        nr.rounds = std::min(node.t(), D);
        nr.self_pruned = node.self_pruned();
        nr.closeness = node.closeness();
        nr.final_view = node.view().members();
        nr.final_edge_view = node.is_ended() ? node.final_edge_view() : node.edge_view();
        nr.detections = node.detection_history();
        nr.h = node.h_tally();
        nr.u = node.u_tally();
        nr.down_history = node.down_history();
        nr.gamma.assign(node.gamma().begin(), node.gamma().end());
        if (opt.record_views) nr.view_history = std::move(views[node.id()]);
        for (auto& l : node.log()) rep.log.push_back(l);
        rep.nodes.push_back(std::move(nr));
    }
    std::stable_sort(rep.log.begin(), rep.log.end(), [](auto& a, auto& b) { return a.round < b.round; });
    return rep;
}

}  // namespace

RunReport run(const Graph& g, Protocol protocol, int D, const RunOptions& options) {
    if (D < 1) throw SimError("D must be at least 1");
    if (options.T < 1) throw SimError("T must be at least 1");
    check_graph(g);
    if (protocol != Protocol::fd && !options.schedule.empty())
        throw SimError("failure schedules are only supported by the fd protocol");
    switch (protocol) {
        case Protocol::ytq: return run_flooding<YtqNode>(g, protocol, D, options);
        case Protocol::pruning: return run_flooding<PruningNode>(g, protocol, D, options);
        case Protocol::fd: return run_fd(g, D, options);
    }
    throw SimError("unknown protocol");
}

MessageCounts count_messages(const RunReport& r) {
    MessageCounts c;
    for (auto& nr : r.nodes) {
        c.per_node.push_back(nr.received);
        c.total += nr.received;
        c.max = std::max(c.max, nr.received);
    }
    if (!r.nodes.empty()) c.mean = static_cast<double>(c.total) / static_cast<double>(r.nodes.size());
    return c;
}

std::string trace_cell(const RunReport& r, NodeId i, int t, std::string (*label)(NodeId)) {
    const auto& nr = r.nodes.at(i);
    if (t > static_cast<int>(nr.detections.size())) {
        if (nr.end == EndCause::pruned) return "⊥";
        if (nr.end == EndCause::equilibrium) return "⊤";
        return "";
    }
    const auto& s = nr.detections[static_cast<std::size_t>(t) - 1];
    if (s.empty()) return "∅";
    std::string out;
    for (NodeId v : s) {
        if (!out.empty()) out += ",";
        out += label ? label(v) : std::to_string(v);
    }
    return out;
}

}  // namespace netview
