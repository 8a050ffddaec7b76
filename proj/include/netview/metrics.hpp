// metrics.hpp - closed-form message counts, leader quality, rank statistics
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netview/graph.hpp"
#include "netview/sim.hpp"

namespace netview {

// Per-node counts driving the summations. h/u are indexed by round l (entry 0 is 0):
// h = neighbours whose stream stopped at l through equilibrium, u = through pruning.
struct NodeCountTrace {
    std::int64_t d = 0;
    std::optional<int> H;  // nullopt = +inf
    std::optional<int> L;
    std::vector<std::int64_t> h;
    std::vector<std::int64_t> u;
};

struct CountTrace {
    int D = 1;
    std::vector<NodeCountTrace> nodes;
};

CountTrace count_trace(const RunReport& r);

// The savings sum needs a single h on both sides: h and H from the ytq run, L from the pruning
// run, u = closures the pruning run adds on top of the ytq run (partial sums >= 0).
CountTrace joint_trace(const CountTrace& ytq, const CountTrace& pruning);

std::int64_t y_formula(const CountTrace& trace, NodeId i);
std::int64_t p_formula(const CountTrace& trace, NodeId i);
std::int64_t delta_formula(const CountTrace& joint, NodeId i);

// Lowest id among the maxima.
NodeId argmax_lowest(const std::vector<Fraction>& v);
NodeId argmax_lowest(const std::vector<double>& v);

int central_node_distance(const Graph& g, const std::vector<Fraction>& estimates);
int central_node_distance(const Graph& g, const std::vector<Fraction>& estimates,
                          const std::vector<Fraction>& exact);

std::vector<double> average_ranks(const std::vector<double>& x);
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);  // tau-b

struct StatResult {
    double statistic = 0.0;  // W+
    double p_value = 1.0;
    double effect_size = 0.0;  // Cohen's d on paired differences
    std::size_t n_used = 0;   // non-zero differences
    bool exact = false;
    double z = 0.0;
};

StatResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y);
bool is_large_effect(double e);

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);  // sample (n-1)

// Samples vectors as CSV: a header line then one value per row, or a named column.
std::vector<double> read_samples_csv(const std::filesystem::path& path, const std::string& column = "");
void write_samples_csv(const std::filesystem::path& path, const std::string& column, const std::vector<double>& v);

struct Histogram {
    double binwidth = 1.0;
    double origin = 0.0;
    std::vector<std::size_t> counts;
};
Histogram histogram(const std::vector<double>& v, double binwidth);

}  // namespace netview
