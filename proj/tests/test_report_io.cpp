#include <gtest/gtest.h>

#include "netview/report_io.hpp"
#include "test_util.hpp"

using namespace netview;
using namespace netview::testing;

TEST(Fraction, StringRoundTrip) {
    EXPECT_EQ(fraction_string(Fraction(9, 21)), "3/7");
    EXPECT_EQ(parse_fraction("3/7"), Fraction(3, 7));
    EXPECT_EQ(parse_fraction("2"), Fraction(2));
}

TEST(ReportJson, RoundTripAllProtocols) {
    RunOptions opt;
    opt.schedule = parse_schedule("2 edge 2-6 fail\n4 edge 2-6 recover\n");
    std::vector<RunReport> reports{run(golden_graph(), Protocol::ytq, 4), run(golden_graph(), Protocol::pruning, 4),
                                   run(golden_graph(), Protocol::fd, 8, opt)};
    for (auto& r : reports) {
        auto j = report_to_json(r);
        auto back = report_from_json(j);
        EXPECT_EQ(report_to_json(back), j);
        EXPECT_EQ(back.nodes.size(), r.nodes.size());
        EXPECT_EQ(back.schedule, r.schedule);
    }
}

TEST(ReportCsv, NodesAndTrace) {
    auto r = run(golden_graph(), Protocol::pruning, 4);
    auto nodes = nodes_csv(r, golden_label);
    EXPECT_EQ(nodes.substr(0, nodes.find('\n')),
              "id,degree,received,sent,final_sent,final_received,signals_sent,signals_received,"
              "L,H,end,rounds,self_pruned,closeness,closeness_float,view_size");
    EXPECT_NE(nodes.find("v5,1,1,"), std::string::npos);
    auto trace = trace_csv(r, golden_label);
    EXPECT_NE(trace.find("v3,\"v1\",\"∅\",\"v2,v7\",\"⊤\""), std::string::npos);
    EXPECT_NE(trace.find("v4,\"v5,v6\",\"v4\",\"⊥\",\"⊥\""), std::string::npos);
}

TEST(ReportCsv, DownHistory) {
    RunOptions opt;
    opt.schedule = parse_schedule("2 edge 2-6 fail\n");
    auto csv = down_history_csv(run(golden_graph(), Protocol::fd, 8, opt));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "round,node,n_down,s_down");
    EXPECT_NE(csv.find("2-6"), std::string::npos);
}
