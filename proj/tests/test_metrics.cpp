#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "netview/metrics.hpp"
#include "test_util.hpp"

using namespace netview;
using namespace netview::testing;

namespace {

// Two-sided sign-flip permutation p-value of W+, the brute-force oracle.
double permutation_p(const std::vector<double>& d) {
    std::vector<double> nz;
    for (double x : d)
        if (x != 0) nz.push_back(x);
    std::vector<double> mag;
    for (double x : nz) mag.push_back(std::fabs(x));
    auto ranks = average_ranks(mag);
    double w = 0;
    for (std::size_t i = 0; i < nz.size(); ++i)
        if (nz[i] > 0) w += ranks[i];
    std::size_t lo = 0, hi = 0, all = std::size_t{1} << nz.size();
    for (std::size_t mask = 0; mask < all; ++mask) {
        double s = 0;
        for (std::size_t i = 0; i < nz.size(); ++i)
            if (mask >> i & 1) s += ranks[i];
        if (s <= w + 1e-9) ++lo;
        if (s >= w - 1e-9) ++hi;
    }
    return std::min(1.0, 2.0 * static_cast<double>(std::min(lo, hi)) / static_cast<double>(all));
}

void expect_formulas_match(const Graph& g, int D) {
    auto y = run(g, Protocol::ytq, D);
    auto p = run(g, Protocol::pruning, D);
    auto ty = count_trace(y);
    auto tp = count_trace(p);
    auto joint = joint_trace(ty, tp);
    for (NodeId i = 0; i < g.size(); ++i) {
        auto Y = y_formula(ty, i);
        auto P = p_formula(tp, i);
        EXPECT_EQ(Y, static_cast<std::int64_t>(y.nodes[i].received)) << "node " << i << " D=" << D;
        EXPECT_EQ(P, static_cast<std::int64_t>(p.nodes[i].received)) << "node " << i << " D=" << D;
        EXPECT_EQ(delta_formula(joint, i), Y - P) << "node " << i << " D=" << D;
        EXPECT_GE(Y - P, 0);
    }
}

}  // namespace

TEST(YFormula, Examples) {
    CountTrace t;
    t.D = 5;
    t.nodes.push_back({3, std::nullopt, std::nullopt, std::vector<std::int64_t>(6, 0), std::vector<std::int64_t>(6, 0)});
    EXPECT_EQ(y_formula(t, 0), 15);  // d*D
    EXPECT_EQ(p_formula(t, 0), 15);
    EXPECT_EQ(delta_formula(t, 0), 0);
    auto k3 = count_trace(run(complete_graph(3), Protocol::ytq, 4));
    for (NodeId i = 0; i < 3; ++i) EXPECT_EQ(y_formula(k3, i), 2);
}

TEST(PFormula, GoldenLeafReceivesOneMessage) {
    auto tp = count_trace(run(golden_graph(), Protocol::pruning, 4));
    EXPECT_EQ(p_formula(tp, 4), 1);  // v5
}

TEST(DeltaFormula, GoldenV2SavesMessages) {
    auto g = golden_graph();
    auto joint = joint_trace(count_trace(run(g, Protocol::ytq, 6)), count_trace(run(g, Protocol::pruning, 6)));
    EXPECT_GT(delta_formula(joint, 1), 0);
}

TEST(Formulas, MatchSimulationOnGoldenEveryD) {
    for (int D = 1; D <= 8; ++D) expect_formulas_match(golden_graph(), D);
}

TEST(Formulas, MatchSimulationOnFamily) {
    for (auto& g : small_family(10))
        for (int D : {1, 3, 10, diameter(g)}) expect_formulas_match(g, D);
    for (std::size_t k = 3; k < 8; ++k) {
        expect_formulas_match(path_graph(k), 4);
        expect_formulas_match(cycle_graph(k), 4);
        expect_formulas_match(star_graph(k), 2);
    }
}

TEST(CentralNodeDistance, Examples) {
    auto g = golden_graph();
    for (auto proto : {Protocol::ytq, Protocol::pruning}) {
        auto r = run(g, proto, 6);
        std::vector<Fraction> est;
        for (auto& n : r.nodes) est.push_back(n.closeness);
        EXPECT_EQ(central_node_distance(g, est), 0);
    }
    auto p = path_graph(5);
    std::vector<Fraction> flat(5, Fraction(1, 2));
    EXPECT_EQ(central_node_distance(p, flat), 2);  // lowest-id tie-break picks node 0
    auto s = star_graph(3);
    EXPECT_EQ(central_node_distance(s, std::vector<Fraction>(4, Fraction(1))), 0);
    EXPECT_THROW(central_node_distance(s, flat), std::invalid_argument);
}

TEST(RankCorrelation, IdentityReversalAndTies) {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> r{5, 4, 3, 2, 1};
    EXPECT_DOUBLE_EQ(spearman_rho(x, x), 1.0);
    EXPECT_DOUBLE_EQ(kendall_tau(x, x), 1.0);
    EXPECT_DOUBLE_EQ(spearman_rho(x, r), -1.0);
    EXPECT_DOUBLE_EQ(kendall_tau(x, r), -1.0);
    EXPECT_EQ(average_ranks({10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
    // tau-b with ties: x = 1 1 2 3, y = 1 2 3 4, concordant 5, tied-in-x 1 -> 5/sqrt(5*6)
    EXPECT_NEAR(kendall_tau({1, 1, 2, 3}, {1, 2, 3, 4}), 5.0 / std::sqrt(30.0), 1e-12);
    EXPECT_THROW(spearman_rho({1, 2}, {1}), std::invalid_argument);
}

TEST(RankCorrelation, InvariantUnderMonotoneTransforms) {
    std::vector<double> x{3.2, 1.0, 4.5, 2.2, 9.1, 0.5, 7.7, 4.5};
    std::vector<double> y{1.0, 0.3, 2.0, 0.9, 3.3, 0.1, 1.5, 2.5};
    std::vector<double> fx, gy;
    for (double v : x) fx.push_back(std::exp(v));
    for (double v : y) gy.push_back(v * v * v + 7);
    EXPECT_NEAR(spearman_rho(x, y), spearman_rho(fx, gy), 1e-12);
    EXPECT_NEAR(kendall_tau(x, y), kendall_tau(fx, gy), 1e-12);
}

TEST(RankCorrelation, EccentricityCentralityTracksCloseness) {
    for (auto& g : small_family(4)) {
        auto ecc = eccentricities(g);
        auto clo = closeness_all(g);
        std::vector<double> a, b;
        for (NodeId i = 0; i < g.size(); ++i) {
            a.push_back(1.0 / ecc[i]);
            b.push_back(to_double(clo[i]));
        }
        EXPECT_GT(spearman_rho(a, b), 0.0);
        EXPECT_GT(kendall_tau(a, b), 0.0);
    }
}

TEST(Wilcoxon, EqualSamplesGivePOne) {
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7};
    auto r = wilcoxon_signed_rank(x, x);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.n_used, 0u);
}

TEST(Wilcoxon, DominatedPairsAreSignificant) {
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
        x.push_back(10.0 + i * 0.7);
        y.push_back(10.0 + i * 0.7 - 1.0 - (i % 4) * 0.25);
    }
    auto r = wilcoxon_signed_rank(x, y);
    EXPECT_LT(r.p_value, 0.01);
    EXPECT_FALSE(r.exact);
    EXPECT_GT(r.z, 0);
    EXPECT_TRUE(is_large_effect(r.effect_size));
    EXPECT_FALSE(is_large_effect(0.79));
}

TEST(Wilcoxon, ExactBranchMatchesPermutationOracle) {
    std::vector<std::vector<double>> diffs{
        {1.5, -0.5, 2.0, 3.0, -1.0, 4.0, 0.7, 2.2},
        {1, 1, -1, 2, 2, -2, 3, 0, 3},  // ties and a zero
        {-3, -2, -1, 4},
        {5, 4, 3, 2, 1, 6, 7, 8, 9, 10, 11, 12},
    };
    for (auto& d : diffs) {
        std::vector<double> zero(d.size(), 0.0);
        auto r = wilcoxon_signed_rank(d, zero);
        EXPECT_TRUE(r.exact);
        EXPECT_NEAR(r.p_value, permutation_p(d), 1e-12);
        EXPECT_GE(r.p_value, 0.0);
        EXPECT_LE(r.p_value, 1.0);
    }
}

TEST(Wilcoxon, NormalApproximationWithTieCorrection) {
    std::vector<double> d;
    for (int i = 1; i <= 30; ++i) d.push_back((i % 3 == 0 ? -1.0 : 1.0) * ((i + 1) / 2));
    std::vector<double> zero(d.size(), 0.0);
    auto r = wilcoxon_signed_rank(d, zero);
    EXPECT_FALSE(r.exact);
    // magnitudes come in 15 tied pairs: tie term 15 * (8 - 2)
    double n = 30, mu = n * (n + 1) / 4, var = n * (n + 1) * (2 * n + 1) / 24 - 15.0 * 6 / 48;
    EXPECT_NEAR(r.z, (r.statistic - mu) / std::sqrt(var), 1e-12);
    EXPECT_NEAR(r.p_value, std::erfc(std::fabs(r.z) / std::sqrt(2.0)), 1e-12);
}

TEST(Stats, MeanStddevHistogram) {
    EXPECT_DOUBLE_EQ(mean({1, 2, 3, 4}), 2.5);
    EXPECT_NEAR(stddev({1, 2, 3, 4}), std::sqrt(5.0 / 3.0), 1e-12);
    auto h = histogram({20, 21, 22, 25, 27}, 2.0);
    EXPECT_DOUBLE_EQ(h.origin, 20.0);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 1, 1, 1}));
    EXPECT_THROW(histogram({1}, 0), std::invalid_argument);
}

TEST(Stats, SamplesCsvRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "netview_metrics_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "s.csv";
    std::vector<double> v{1.5, 2.25, -3};
    write_samples_csv(path, "messages", v);
    EXPECT_EQ(read_samples_csv(path), v);
    EXPECT_EQ(read_samples_csv(path, "messages"), v);
    EXPECT_THROW(read_samples_csv(path, "nope"), std::runtime_error);
    EXPECT_THROW(read_samples_csv(dir / "missing.csv"), FileNotFound);
    std::filesystem::remove_all(dir);
}
