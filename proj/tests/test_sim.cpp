#include <gtest/gtest.h>

#include <numeric>

#include "netview/report_io.hpp"
#include "netview/sim.hpp"
#include "test_util.hpp"

using namespace netview;
using namespace netview::testing;

namespace {

// Same graph with node ids permuted; a relabelling must not change any per-node outcome.
Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (auto x : g.edges()) e.emplace_back(perm[x.u], perm[x.v]);
    return Graph(g.size(), e);
}

}  // namespace

TEST(Run, GoldenPruningSummary) {
    auto r = run(golden_graph(), Protocol::pruning, 4);
    EXPECT_EQ(r.rounds, 3);
    for (NodeId i : {0u, 4u, 5u, 8u, 9u}) {
        EXPECT_EQ(r.nodes[i].L, 1);
        EXPECT_TRUE(r.nodes[i].self_pruned);
        EXPECT_EQ(r.nodes[i].closeness, Fraction(0));
    }
}

TEST(Run, DeterministicReports) {
    for (auto proto : {Protocol::ytq, Protocol::pruning, Protocol::fd}) {
        auto g = small_family(1)[0];
        auto a = report_to_json(run(g, proto, 7));
        auto b = report_to_json(run(g, proto, 7));
        EXPECT_EQ(a, b) << to_string(proto);
    }
}

TEST(Run, RejectsBadInputs) {
    EXPECT_THROW(run(golden_graph(), Protocol::ytq, 0), SimError);
    EXPECT_THROW(run(Graph(3, {{0, 1}}), Protocol::ytq, 2), SimError);
    EXPECT_THROW(run(Graph(1, {}), Protocol::ytq, 2), SimError);
    RunOptions opt;
    opt.schedule = parse_schedule("2 edge 2-6 fail");
    EXPECT_THROW(run(golden_graph(), Protocol::ytq, 4, opt), SimError);
    EXPECT_NO_THROW(run(golden_graph(), Protocol::fd, 4, opt));
    EXPECT_THROW(parse_protocol("gossip"), std::invalid_argument);
}

TEST(CountMessages, YtqOneRoundGivesDegrees) {
    auto g = golden_graph();
    auto c = count_messages(run(g, Protocol::ytq, 1));
    for (NodeId i = 0; i < g.size(); ++i) EXPECT_EQ(c.per_node[i], g.degree(i));
    EXPECT_EQ(c.total, 2 * g.edge_count());
    EXPECT_DOUBLE_EQ(c.mean, 2.0);
    EXPECT_EQ(c.max, 3u);
}

TEST(CountMessages, SingleEdge) {
    auto c = count_messages(run(path_graph(2), Protocol::ytq, 1));
    EXPECT_EQ(c.per_node, (std::vector<std::uint64_t>{1, 1}));
}

TEST(CountMessages, PruningNeverReceivesMore) {
    auto g = golden_graph();
    for (int D = 1; D <= 8; ++D) {
        auto y = count_messages(run(g, Protocol::ytq, D));
        auto p = count_messages(run(g, Protocol::pruning, D));
        for (NodeId i = 0; i < g.size(); ++i) EXPECT_GE(y.per_node[i], p.per_node[i]) << "D=" << D;
    }
}

TEST(RunProperties, SentEqualsReceivedFailureFree) {
    for (auto& g : small_family(6))
        for (auto proto : {Protocol::ytq, Protocol::pruning}) {
            auto r = run(g, proto, 12);
            std::uint64_t s = 0, v = 0;
            for (auto& n : r.nodes) {
                s += n.sent;
                v += n.received;
            }
            EXPECT_EQ(s, v);
        }
}

TEST(RunProperties, DeliveryOrderDoesNotMatter) {
    // Relabelling changes the ascending-sender delivery order at every node.
    for (auto& g : small_family(4)) {
        std::vector<NodeId> perm(g.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        auto h = relabel(g, perm);
        for (auto proto : {Protocol::ytq, Protocol::pruning, Protocol::fd}) {
            auto a = run(g, proto, 9);
            auto b = run(h, proto, 9);
            for (NodeId i = 0; i < g.size(); ++i) {
                const auto& x = a.nodes[i];
                const auto& y = b.nodes[perm[i]];
                EXPECT_EQ(x.received, y.received);
                EXPECT_EQ(x.L, y.L);
                EXPECT_EQ(x.H, y.H);
                EXPECT_EQ(x.closeness, y.closeness);
                EXPECT_EQ(x.final_view.size(), y.final_view.size());
            }
        }
    }
}

TEST(RunProperties, PhaseAtomicityRoundOneViews) {
    // After round 1 every node knows exactly its 2-hop ball; nothing sent in round 1 leaks further.
    auto g = small_family(1)[0];
    RunOptions opt;
    opt.record_views = true;
    auto r = run(g, Protocol::ytq, 3, opt);
    for (NodeId i = 0; i < g.size(); ++i) {
        auto d = bfs_distances(g, i);
        NodeSet ball;
        for (NodeId v = 0; v < g.size(); ++v)
            if (d[v] <= 2) ball.push_back(v);
        EXPECT_EQ(r.nodes[i].view_history.at(0), ball);
    }
}

TEST(TraceCell, MarkersAndLabels) {
    auto r = run(golden_graph(), Protocol::pruning, 4);
    EXPECT_EQ(trace_cell(r, 3, 1, golden_label), "v5,v6");
    EXPECT_EQ(trace_cell(r, 3, 1), "4,5");
    EXPECT_EQ(trace_cell(r, 4, 2), "⊥");
    EXPECT_EQ(trace_cell(r, 2, 4), "⊤");
    EXPECT_EQ(trace_cell(r, 2, 2), "∅");
}
