#include "netview/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace netview {

CountTrace count_trace(const RunReport& r) {
    CountTrace t;
    t.D = r.D;
    for (auto& nr : r.nodes) {
        NodeCountTrace n;
        n.d = static_cast<std::int64_t>(nr.degree);
        n.H = nr.H;
        n.L = nr.L;
        n.h = nr.h;
        n.u = nr.u;
        n.h.resize(static_cast<std::size_t>(r.D) + 1, 0);
        n.u.resize(static_cast<std::size_t>(r.D) + 1, 0);
        t.nodes.push_back(std::move(n));
    }
    return t;
}

CountTrace joint_trace(const CountTrace& ytq, const CountTrace& pruning) {
    if (ytq.D != pruning.D || ytq.nodes.size() != pruning.nodes.size())
        throw std::invalid_argument("traces come from different runs");
    CountTrace j;
    j.D = ytq.D;
    for (std::size_t i = 0; i < ytq.nodes.size(); ++i) {
        const auto& y = ytq.nodes[i];
        const auto& p = pruning.nodes[i];
        NodeCountTrace n;
        n.d = y.d;
        n.H = y.H;
        n.L = p.L;
        n.h = y.h;
        n.u.resize(n.h.size(), 0);
        for (std::size_t l = 0; l < n.u.size(); ++l) n.u[l] = p.h[l] + p.u[l] - y.h[l];
        j.nodes.push_back(std::move(n));
    }
    return j;
}

namespace {

int upper(int D, const std::optional<int>& a, const std::optional<int>& b = std::nullopt) {
    int m = D;
    if (a) m = std::min(m, *a);
    if (b) m = std::min(m, *b);
    return m;
}

std::int64_t at(const std::vector<std::int64_t>& v, int l) {
    return l >= 0 && static_cast<std::size_t>(l) < v.size() ? v[l] : 0;
}

}  // namespace

std::int64_t y_formula(const CountTrace& trace, NodeId i) {
    const auto& n = trace.nodes.at(i);
    std::int64_t total = 0, closed = 0;
    for (int t = 1; t <= upper(trace.D, n.H); ++t) {
        closed += at(n.h, t - 1);
        total += n.d - closed;
    }
    return total;
}

std::int64_t p_formula(const CountTrace& trace, NodeId i) {
    const auto& n = trace.nodes.at(i);
    std::int64_t total = 0, closed = 0;
    for (int t = 1; t <= upper(trace.D, n.H, n.L); ++t) {
        closed += at(n.h, t - 1) + at(n.u, t - 1);
        total += n.d - closed;
    }
    return total;
}

std::int64_t delta_formula(const CountTrace& joint, NodeId i) {
    const auto& n = joint.nodes.at(i);
    const int m = upper(joint.D, n.H, n.L);
    const int top = upper(joint.D, n.H);
    std::int64_t first = 0, second = 0, su = 0, sh = 0;
    for (int t = 1; t <= top; ++t) {
        su += at(n.u, t - 1);
        sh += at(n.h, t - 1);
        if (t <= m)
            first += su;
        else
            second += n.d - sh;
    }
    return first + second;
}

NodeId argmax_lowest(const std::vector<Fraction>& v) {
    if (v.empty()) throw std::invalid_argument("argmax of empty vector");
    NodeId best = 0;
    for (NodeId i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

NodeId argmax_lowest(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("argmax of empty vector");
    NodeId best = 0;
    for (NodeId i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

int central_node_distance(const Graph& g, const std::vector<Fraction>& estimates,
                          const std::vector<Fraction>& exact) {
    if (estimates.size() != g.size() || exact.size() != g.size())
        throw std::invalid_argument("estimates must cover every node");
    NodeId a = argmax_lowest(exact);
    NodeId b = argmax_lowest(estimates);
    return bfs_distances(g, a)[b];
}

int central_node_distance(const Graph& g, const std::vector<Fraction>& estimates) {
    return central_node_distance(g, estimates, closeness_all(g));
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

namespace {

void check_pair(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_n) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (x.size() < min_n) throw std::invalid_argument("not enough samples");
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = mean(a), mb = mean(b);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0 || sbb == 0) return std::numeric_limits<double>::quiet_NaN();
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, 2);
    return pearson(average_ranks(x), average_ranks(y));
}

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, 2);
    const std::size_t n = x.size();
    double conc = 0, disc = 0, tx = 0, ty = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0 && dy == 0) continue;
            if (dx == 0) {
                ++tx;
            } else if (dy == 0) {
                ++ty;
            } else if ((dx > 0) == (dy > 0)) {
                ++conc;
            } else {
                ++disc;
            }
        }
    double denom = std::sqrt((conc + disc + tx) * (conc + disc + ty));
    if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
    return (conc - disc) / denom;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v), s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

StatResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, 1);
    std::vector<double> diff;
    for (std::size_t i = 0; i < x.size(); ++i) diff.push_back(x[i] - y[i]);

    StatResult res;
    double sd = stddev(diff), md = mean(diff);
    if (sd > 0)
        res.effect_size = md / sd;
    else if (md != 0)
        res.effect_size = std::copysign(std::numeric_limits<double>::infinity(), md);

    std::vector<double> nz;
    for (double d : diff)
        if (d != 0) nz.push_back(d);
    res.n_used = nz.size();
    if (nz.empty()) {
        res.p_value = 1.0;
        return res;
    }

    std::vector<double> mag;
    for (double d : nz) mag.push_back(std::fabs(d));
    auto ranks = average_ranks(mag);
    double wplus = 0;
    for (std::size_t i = 0; i < nz.size(); ++i)
        if (nz[i] > 0) wplus += ranks[i];
    res.statistic = wplus;
    const double n = static_cast<double>(nz.size());

    if (nz.size() <= 25) {
        // Null distribution of doubled W+ over all 2^n sign patterns.
        std::vector<int> r2;
        int total = 0;
        for (double r : ranks) {
            r2.push_back(static_cast<int>(std::lround(2 * r)));
            total += r2.back();
        }
        std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
        ways[0] = 1;
        int reach = 0;
        for (int r : r2) {
            for (int s = reach; s >= 0; --s)
                if (ways[s] != 0) ways[s + r] += ways[s];
            reach += r;
        }
        double all = std::ldexp(1.0, static_cast<int>(nz.size()));
        int w2 = static_cast<int>(std::lround(2 * wplus));
        double lo = 0, hi = 0;
        for (int s = 0; s <= total; ++s) {
            if (s <= w2) lo += ways[s];
            if (s >= w2) hi += ways[s];
        }
        res.exact = true;
        res.p_value = std::min(1.0, 2.0 * std::min(lo, hi) / all);
    } else {
        double tie = 0;
        auto sorted = mag;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            double t = static_cast<double>(j - i);
            tie += t * t * t - t;
            i = j;
        }
        double mu = n * (n + 1) / 4.0;
        double var = n * (n + 1) * (2 * n + 1) / 24.0 - tie / 48.0;
        res.z = var > 0 ? (wplus - mu) / std::sqrt(var) : 0.0;
        res.p_value = std::min(1.0, std::erfc(std::fabs(res.z) / std::sqrt(2.0)));
    }
    return res;
}

bool is_large_effect(double e) {
    return std::fabs(e) >= 0.8;
}

std::vector<double> read_samples_csv(const std::filesystem::path& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    std::string line;
    if (!std::getline(in, line)) return {};
    auto header = split(line);
    std::size_t col = 0;
    if (!column.empty()) {
        auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end()) throw std::runtime_error("column '" + column + "' not found in " + path.string());
        col = static_cast<std::size_t>(it - header.begin());
    }
    std::vector<double> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split(line);
        if (col >= cells.size()) throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": short row");
        try {
            out.push_back(std::stod(cells[col]));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    return out;
}

void write_samples_csv(const std::filesystem::path& path, const std::string& column, const std::vector<double>& v) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << column << "\n";
    out.precision(17);
    for (double x : v) out << x << "\n";
}

Histogram histogram(const std::vector<double>& v, double binwidth) {
    if (binwidth <= 0) throw std::invalid_argument("binwidth must be positive");
    Histogram h;
    h.binwidth = binwidth;
    if (v.empty()) return h;
    double lo = *std::min_element(v.begin(), v.end());
    h.origin = std::floor(lo / binwidth) * binwidth;
    for (double x : v) {
        auto b = static_cast<std::size_t>(std::floor((x - h.origin) / binwidth));
        if (b >= h.counts.size()) h.counts.resize(b + 1, 0);
        ++h.counts[b];
    }
    return h;
}

}  // namespace netview
