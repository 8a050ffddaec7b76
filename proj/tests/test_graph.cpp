#include <gtest/gtest.h>

#include "netview/graph.hpp"
#include "test_util.hpp"

using namespace netview;
using namespace netview::testing;

TEST(EdgeList, TwoEdgePath) {
    auto lg = load_edge_list("0 1\n1 2");
    EXPECT_EQ(lg.graph.size(), 3u);
    EXPECT_EQ(lg.graph.edge_count(), 2u);
    EXPECT_EQ(lg.graph, path_graph(3));
}

TEST(EdgeList, CommentsDuplicatesSelfLoops) {
    auto lg = load_edge_list("# c\n5 9\n9 5\n5 5");
    EXPECT_EQ(lg.graph.size(), 2u);
    EXPECT_EQ(lg.graph.edge_count(), 1u);
    EXPECT_EQ(lg.original_ids, (std::vector<std::int64_t>{5, 9}));
}

TEST(EdgeList, LargestComponentOfDisjointEdges) {
    auto lg = load_edge_list("0 1\n2 3");
    EXPECT_FALSE(lg.graph.is_connected());
    auto c = largest_component(lg.graph);
    EXPECT_EQ(c.graph.size(), 2u);
    EXPECT_EQ(c.graph.edge_count(), 1u);
    EXPECT_TRUE(c.graph.is_connected());
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
    try {
        load_edge_list("0 1\n# ok\n1 x\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(load_edge_list("# only comments\n"), ParseError);
    EXPECT_THROW(load_edge_list("7\n"), ParseError);
}

TEST(EdgeList, MissingFile) {
    EXPECT_THROW(load_edge_list_file("/nonexistent/graph.txt"), FileNotFound);
}

TEST(EdgeList, SaveLoadRoundTrip) {
    for (auto& g : small_family(4)) {
        auto back = load_edge_list(save_edge_list(g));
        std::vector<Edge> mapped;
        for (auto e : back.graph.edges())
            mapped.push_back(make_edge(static_cast<NodeId>(back.original_ids[e.u]),
                                       static_cast<NodeId>(back.original_ids[e.v])));
        std::sort(mapped.begin(), mapped.end());
        EXPECT_EQ(mapped, g.edges());
    }
    EXPECT_EQ(save_edge_list(path_graph(3)), "0 1\n1 2\n");
}

TEST(Bfs, PathAndStar) {
    EXPECT_EQ(bfs_distances(path_graph(3), 0), (std::vector<int>{0, 1, 2}));
    auto d = bfs_distances(star_graph(4), 0);
    for (NodeId i = 1; i <= 4; ++i) EXPECT_EQ(d[i], 1);
}

TEST(Bfs, GoldenFromV3) {
    auto d = bfs_distances(golden_graph(), 2);
    EXPECT_EQ(*std::max_element(d.begin(), d.end()), 3);
}

TEST(Closeness, PathThree) {
    auto g = path_graph(3);
    EXPECT_EQ(closeness_exact(g, 1), Fraction(1));
    EXPECT_EQ(closeness_exact(g, 0), Fraction(2, 3));
    EXPECT_THROW(closeness_exact(Graph(1, {}), 0), std::domain_error);
}

TEST(Closeness, GoldenV3IsMaximal) {
    auto g = golden_graph();
    auto c = closeness_all(g);
    for (NodeId i = 0; i < g.size(); ++i)
        if (i != 2) EXPECT_LT(c[i], c[2]) << golden_label(i);
}

TEST(Eccentricity, GoldenColumn) {
    auto g = golden_graph();
    EXPECT_EQ(eccentricities(g), (std::vector<int>{4, 4, 3, 5, 6, 6, 4, 5, 6, 6}));
    EXPECT_EQ(diameter(g), 6);
    EXPECT_EQ(eccentricity_exact(path_graph(3), 1), 1);
    EXPECT_EQ(eccentricity_exact(complete_graph(4), 2), 1);
}

TEST(Eccentricity, DiameterOfFamilies) {
    EXPECT_EQ(diameter(complete_graph(6)), 1);
    for (std::size_t k = 2; k < 9; ++k) EXPECT_EQ(diameter(path_graph(k)), static_cast<int>(k) - 1);
}

TEST(Golden, LeavesAndTriangleCorner) {
    auto g = golden_graph();
    EXPECT_EQ(g.size(), 10u);
    EXPECT_EQ(g.edge_count(), 10u);
    EXPECT_EQ(g.degree(0), 2u);
    EXPECT_TRUE(g.has_edge(1, 2));  // v1's neighbours v2, v3 are adjacent
    NodeSet leaves;
    for (NodeId i = 0; i < g.size(); ++i)
        if (g.degree(i) == 1) leaves.push_back(i);
    EXPECT_EQ(leaves, (NodeSet{4, 5, 8, 9}));
}

TEST(GraphProperties, OraclesOnRandomFamily) {
    for (auto& g : small_family()) {
        ASSERT_TRUE(g.is_connected());
        auto ecc = eccentricities(g);
        for (auto e : g.edges()) EXPECT_LE(std::abs(ecc[e.u] - ecc[e.v]), 1);
        int diam = diameter(g), rad = radius(g);
        EXPECT_LE(rad, diam);
        EXPECT_LE(diam, 2 * rad);
        for (NodeId i = 0; i < g.size(); ++i) {
            auto c = closeness_exact(g, i);
            EXPECT_GT(c, Fraction(0));
            EXPECT_LE(c, Fraction(1));
            EXPECT_EQ(c == Fraction(1), g.degree(i) + 1 == g.size());
            auto d = bfs_distances(g, i);
            EXPECT_EQ(d[i], 0);
            for (auto e : g.edges()) EXPECT_LE(std::abs(d[e.u] - d[e.v]), 1);
        }
    }
    EXPECT_EQ(closeness_exact(star_graph(5), 0), Fraction(1));
}

TEST(Geometric, DeterministicPerSeed) {
    GeometricParams p;
    p.n = 100;
    p.seed = 7;
    auto a = random_geometric(p);
    auto b = random_geometric(p);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.points, b.points);
    p.seed = 8;
    EXPECT_NE(random_geometric(p).graph, a.graph);
}

TEST(Geometric, MinimalTwoNodeGraph) {
    GeometricParams p;
    p.n = 2;
    auto g = random_geometric(p);
    EXPECT_EQ(g.graph.edge_count(), 1u);
    EXPECT_TRUE(g.graph.is_connected());
}

TEST(Geometric, PointsDistinctAndEdgesByRange) {
    GeometricParams p;
    p.n = 150;
    p.seed = 3;
    auto gg = random_geometric(p);
    ASSERT_TRUE(gg.graph.is_connected());
    std::set<std::pair<int, int>> seen(gg.points.begin(), gg.points.end());
    EXPECT_EQ(seen.size(), gg.points.size());
    for (NodeId i = 0; i < p.n; ++i)
        for (NodeId j = i + 1; j < p.n; ++j) {
            int dx = gg.points[i].first - gg.points[j].first;
            int dy = gg.points[i].second - gg.points[j].second;
            EXPECT_EQ(gg.graph.has_edge(i, j), dx * dx + dy * dy < 64);
            EXPECT_TRUE(gg.points[i].first >= 0 && gg.points[i].first < 200);
        }
}

TEST(Geometric, RejectionSamplerGivesUpWithAttemptCount) {
    GeometricParams p;
    p.n = 60;
    p.sampler = GeometricSampler::rejection;
    p.max_attempts = 20;
    try {
        random_geometric(p);
        FAIL() << "sparse uniform samples should not be connected";
    } catch (const GenerationError& e) {
        EXPECT_EQ(e.attempts(), 20);
    }
    p.n = 2;
    p.grid = 3;  // every pair of cells on a 3x3 grid is within range
    EXPECT_EQ(random_geometric(p).graph.edge_count(), 1u);
}

TEST(Geometric, FamilyEdgeCountsAndDiameters) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        GeometricParams p;
        p.n = 50 + (s * 47) % 451;
        p.seed = s;
        auto g = random_geometric(p).graph;
        EXPECT_GE(g.edge_count(), 50u);
        EXPECT_LE(g.edge_count(), 2000u);
        if (p.n >= 100) EXPECT_GE(diameter(g), 20);
    }
}
