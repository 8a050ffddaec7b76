#include <gtest/gtest.h>

#include "netview/sim.hpp"
#include "netview/ytq.hpp"
#include "test_util.hpp"

using namespace netview;
using namespace netview::testing;

namespace {

// Drives every node of g through `rounds` rounds by hand.
std::vector<YtqNode> drive(const Graph& g, int D, int rounds) {
    std::vector<YtqNode> nodes;
    for (NodeId i = 0; i < g.size(); ++i) nodes.emplace_back(i, g.neighbours(i), D, g.size());
    for (int r = 0; r < rounds; ++r) {
        for (auto& n : nodes)
            for (auto& o : n.one_hop()) nodes[o.dest].receive(o.msg);
        std::vector<NodeId> ended;
        for (auto& n : nodes)
            if (!n.is_ended()) {
                n.update();
                if (n.is_ended()) ended.push_back(n.id());
            }
        for (NodeId i : ended)
            for (NodeId j : g.neighbours(i)) nodes[j].neighbour_ended(i, nodes[i].end_cause(), r + 1);
    }
    return nodes;
}

}  // namespace

TEST(YtqInit, ConstructorState) {
    YtqNode a(0, {1, 2}, 5, 3);
    EXPECT_EQ(a.view().delta(), 2);
    EXPECT_EQ(a.view().frontier(), (NodeSet{1, 2}));
    EXPECT_EQ(a.t(), 0);
    EXPECT_FALSE(a.is_ended());
    EXPECT_THROW(YtqNode(0, {}, 3, 3), std::invalid_argument);
    EXPECT_THROW(YtqNode(0, {1}, 0, 3), std::invalid_argument);
    auto g = golden_graph();
    YtqNode v5(4, g.neighbours(4), 6, g.size());
    EXPECT_EQ(v5.view().delta(), 1);
}

TEST(YtqOneHop, OneMessagePerNeighbourCarryingFrontier) {
    YtqNode a(0, {1, 2, 3}, 4, 4);
    auto out = a.one_hop();
    ASSERT_EQ(out.size(), 3u);
    for (auto& o : out) {
        EXPECT_EQ(o.msg.sender, 0u);
        EXPECT_EQ(o.msg.frontier, (NodeSet{1, 2, 3}));
    }
}

TEST(YtqOneHop, EndedNodeSendsNothingAndFinalizes) {
    auto nodes = drive(complete_graph(3), 4, 1);
    ASSERT_TRUE(nodes[0].is_ended());
    EXPECT_TRUE(nodes[0].one_hop().empty());
    ASSERT_TRUE(nodes[0].closeness_estimate().has_value());
    EXPECT_EQ(*nodes[0].closeness_estimate(), Fraction(1));
    EXPECT_EQ(nodes[0].T_actual(), 1);
}

TEST(YtqUpdate, GoldenV3AfterRoundOne) {
    auto nodes = drive(golden_graph(), 6, 1);
    EXPECT_EQ(nodes[2].view().frontier(), (NodeSet{3, 7}));  // v4, v8
}

TEST(YtqUpdate, CompleteGraphEquilibriumAfterOneRound) {
    auto nodes = drive(complete_graph(3), 5, 1);
    for (auto& n : nodes) {
        EXPECT_TRUE(n.view().frontier().empty());
        EXPECT_EQ(n.end_cause(), EndCause::equilibrium);
        EXPECT_EQ(n.H(), 1);
    }
}

TEST(YtqIsEnded, RoundLimit) {
    auto nodes = drive(path_graph(6), 2, 2);
    for (auto& n : nodes) EXPECT_TRUE(n.is_ended());
    EXPECT_EQ(nodes[0].end_cause(), EndCause::round_limit);
}

TEST(YtqCloseness, PathCenterWithOneRound) {
    auto r = run(path_graph(3), Protocol::ytq, 1);
    EXPECT_EQ(r.nodes[1].closeness, Fraction(1));
}

TEST(YtqCloseness, ExactWhenDAtLeastDiameter) {
    auto g = golden_graph();
    auto r = run(g, Protocol::ytq, 6);
    for (NodeId i = 0; i < g.size(); ++i) {
        EXPECT_EQ(r.nodes[i].closeness, closeness_exact(g, i)) << golden_label(i);
        EXPECT_EQ(r.nodes[i].final_view.size(), 10u);
    }
}

TEST(YtqProperties, FrontierIsExactShellAndEquilibriumAtEccentricity) {
    for (auto& g : small_family()) {
        int D = diameter(g);
        RunOptions opt;
        opt.record_views = true;
        auto r = run(g, Protocol::ytq, D, opt);
        for (NodeId i = 0; i < g.size(); ++i) {
            auto dist = bfs_distances(g, i);
            const auto& nr = r.nodes[i];
            for (std::size_t t = 1; t <= nr.view_history.size(); ++t) {
                NodeSet ball;
                for (NodeId v = 0; v < g.size(); ++v)
                    if (dist[v] <= static_cast<int>(t) + 1) ball.push_back(v);
                EXPECT_EQ(nr.view_history[t - 1], ball);
            }
            EXPECT_EQ(nr.H, eccentricity_exact(g, i));
            std::int64_t sum = 0;
            for (int x : dist) sum += x;
            EXPECT_EQ(nr.closeness, Fraction(static_cast<std::int64_t>(g.size()) - 1, sum));
        }
    }
}
