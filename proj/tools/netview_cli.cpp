// netview - experiment runner: generate graphs, run protocols, compare reports, rank statistics
#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "netview/metrics.hpp"
#include "netview/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netview;

namespace {

constexpr int kExitMissingFile = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitUnpaired = 4;
constexpr int kExitInput = 5;

const std::vector<int> kQualitySweep{2, 6, 10, 14, 18, 22, 26};

struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnpairedReports : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path resolve_out(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("NETVIEW_OUT_DIR"); env && *env) return env;
    return "netview_out";
}

std::vector<fs::path> expand(const std::vector<std::string>& inputs, const std::string& ext) {
    std::vector<fs::path> out;
    for (auto& s : inputs) {
        fs::path p(s);
        if (!fs::exists(p)) throw FileNotFound(p);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (auto& e : fs::recursive_directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ext) found.push_back(e.path());
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::size_t count = 50;
    std::size_t n_min = 50;
    std::size_t n_max = 500;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    int grid = 200;
    int range = 8;
    int sweeps = 20;
    bool rejection = false;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    fs::path out = resolve_out(a.out);
    std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
    if (a.n > 0) {
        jobs.emplace_back(a.n, a.seed);
    } else {
        if (a.n_min < 2 || a.n_min > a.n_max) throw std::invalid_argument("need 2 <= n-min <= n-max");
        std::mt19937_64 rng(a.seed);
        std::uniform_int_distribution<std::size_t> pick(a.n_min, a.n_max);
        for (std::size_t k = 0; k < a.count; ++k) jobs.emplace_back(pick(rng), a.seed * 1000003ULL + k);
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        GeometricParams p;
        p.n = jobs[k].first;
        p.seed = jobs[k].second;
        p.grid = a.grid;
        p.comm_range = a.range;
        p.sweeps = a.sweeps;
        if (a.rejection) p.sampler = GeometricSampler::rejection;
        auto gg = random_geometric(p);
        char name[64];
        std::snprintf(name, sizeof name, "geo_n%zu_s%llu", p.n, static_cast<unsigned long long>(p.seed));
        json meta{{"n", gg.graph.size()},
                  {"m", gg.graph.edge_count()},
                  {"diameter", diameter(gg.graph)},
                  {"seed", p.seed},
                  {"grid", p.grid},
                  {"comm_range", p.comm_range},
                  {"sampler", a.rejection ? "rejection" : "connected_chain"},
                  {"attempts", gg.attempts}};
        write_atomic(out / (std::string(name) + ".txt"), save_edge_list(gg.graph));
        write_atomic(out / (std::string(name) + ".json"), meta.dump(2) + "\n");
        spdlog::info("{}: n={} m={} diameter={}", name, meta["n"].get<std::size_t>(), meta["m"].get<std::size_t>(),
                     meta["diameter"].get<int>());
    }
    return 0;
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::vector<std::string> graphs;
    bool golden = false;
    std::vector<std::string> protocols{"ytq", "pruning"};
    std::vector<int> D;
    double D_fraction = 0;
    bool D_diameter = false;
    bool sweep = false;
    std::string schedule;
    int T = 1;
    int reps = 1;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
};

struct NamedGraph {
    std::string name;
    Graph graph;
    bool golden = false;
};

struct Job {
    const NamedGraph* g;
    Protocol protocol;
    int D;
    int rep;
};

struct JobResult {
    std::string graph;
    std::string protocol;
    int D = 0;
    int rep = 0;
    std::size_t n = 0;
    double mean = 0;
    std::uint64_t max = 0;
    std::uint64_t total = 0;
    int cnd = 0;
    std::size_t pruned = 0;
};

std::vector<NamedGraph> load_graphs(const RunArgs& a) {
    std::vector<NamedGraph> out;
    if (a.golden) out.push_back({"golden", golden_graph(), true});
    for (auto& p : expand(a.graphs, ".txt")) {
        auto lg = load_edge_list_file(p);
        Graph g = std::move(lg.graph);
        if (!g.is_connected()) {
            auto c = largest_component(g);
            spdlog::warn("{}: not connected, using largest component ({} of {} nodes)", p.string(), c.graph.size(),
                         g.size());
            g = std::move(c.graph);
        }
        out.push_back({p.stem().string(), std::move(g), false});
    }
    if (out.empty()) throw std::invalid_argument("no graph given (use --graph or --golden)");
    return out;
}

std::vector<int> d_values(const RunArgs& a, const Graph& g) {
    if (a.sweep) return kQualitySweep;
    if (a.D_diameter) return {diameter(g)};
    if (a.D_fraction > 0) return {std::max(1, static_cast<int>(std::ceil(a.D_fraction * diameter(g))))};
    return a.D;
}

void check_invariants(const Graph& g, const RunReport& r) {
    if (r.protocol == Protocol::fd) return;
    std::uint64_t s = 0, v = 0;
    for (auto& n : r.nodes) {
        s += n.sent;
        v += n.received;
    }
    if (s != v) throw InvariantFailure("sent " + std::to_string(s) + " != received " + std::to_string(v));
    auto trace = count_trace(r);
    for (NodeId i = 0; i < g.size(); ++i) {
        auto f = r.protocol == Protocol::ytq ? y_formula(trace, i) : p_formula(trace, i);
        if (f != static_cast<std::int64_t>(r.nodes[i].received))
            throw InvariantFailure("closed-form count mismatch at node " + std::to_string(i));
    }
}

JobResult execute(const Job& job, const RunArgs& a, const FailureSchedule& schedule, const fs::path& out) {
    RunOptions opt;
    opt.T = a.T;
    opt.seed = a.seed + static_cast<std::uint64_t>(job.rep);
    if (job.protocol == Protocol::fd) opt.schedule = schedule;
    auto rep = run(job.g->graph, job.protocol, job.D, opt);
    check_invariants(job.g->graph, rep);

    std::vector<Fraction> est;
    for (auto& n : rep.nodes) est.push_back(n.closeness);
    int cnd = central_node_distance(job.g->graph, est);

    auto label = job.g->golden ? &golden_label : nullptr;
    std::string stem = std::string(to_string(job.protocol)) + "_D" + std::to_string(job.D) + "_r" +
                       std::to_string(job.rep);
    fs::path dir = out / job.g->name;
    json j = report_to_json(rep);
    j["graph"] = job.g->name;
    j["rep"] = job.rep;
    j["n"] = job.g->graph.size();
    j["m"] = job.g->graph.edge_count();
    j["central_node_distance"] = cnd;
    write_atomic(dir / (stem + ".json"), j.dump(1) + "\n");
    write_atomic(dir / (stem + ".nodes.csv"), nodes_csv(rep, label));
    if (job.protocol != Protocol::ytq) write_atomic(dir / (stem + ".trace.csv"), trace_csv(rep, label));
    if (job.protocol == Protocol::fd) write_atomic(dir / (stem + ".down.csv"), down_history_csv(rep));

    auto c = count_messages(rep);
    JobResult res{job.g->name, to_string(job.protocol), job.D, job.rep, job.g->graph.size(), c.mean, c.max, c.total,
                  cnd, 0};
    for (auto& n : rep.nodes) res.pruned += n.self_pruned ? 1 : 0;
    return res;
}

int cmd_run(const RunArgs& a, const std::string& command_line) {
    int policies = (!a.D.empty()) + (a.D_fraction > 0) + a.D_diameter + a.sweep;
    if (policies != 1) throw std::invalid_argument("choose exactly one of --D, --D-fraction, --D-diameter, --sweep");
    for (int d : a.D)
        if (d < 1) throw std::invalid_argument("D values must be positive");
    if (a.reps < 1) throw std::invalid_argument("--reps must be positive");

    std::vector<Protocol> protocols;
    for (auto& p : a.protocols) protocols.push_back(parse_protocol(p));
    FailureSchedule schedule;
    if (!a.schedule.empty()) {
        if (std::find(protocols.begin(), protocols.end(), Protocol::fd) == protocols.end())
            throw std::invalid_argument("--schedule requires the fd protocol");
        schedule = load_schedule_file(a.schedule);
    }

    auto graphs = load_graphs(a);
    fs::path out = resolve_out(a.out);
    std::vector<Job> jobs;
    for (auto& g : graphs)
        for (int D : d_values(a, g.graph))
            for (auto p : protocols)
                for (int r = 0; r < a.reps; ++r) jobs.push_back({&g, p, D, r});

    json config{{"command", command_line},
                {"graphs", json::array()},
                {"protocols", a.protocols},
                {"T", a.T},
                {"reps", a.reps},
                {"seed", a.seed},
                {"schedule", format_schedule(schedule)}};
    for (auto& g : graphs) config["graphs"].push_back({{"name", g.name}, {"n", g.graph.size()}});
    if (a.sweep) config["D"] = kQualitySweep;
    else if (a.D_diameter) config["D"] = "diameter";
    else if (a.D_fraction > 0) config["D_fraction"] = a.D_fraction;
    else config["D"] = a.D;
    write_atomic(out / "config.json", config.dump(2) + "\n");

    std::vector<JobResult> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    unsigned nthreads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size()));
    bool invariant_broken = false;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t k; (k = next++) < jobs.size();) {
            try {
                results[k] = execute(jobs[k], a, schedule, out);
            } catch (const InvariantFailure& e) {
                std::lock_guard lock(mu);
                invariant_broken = true;
                errors[k] = e.what();
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream summary;
    summary << "graph,protocol,D,rep,n,mean_received,max_received,total_received,pruned_nodes,central_node_distance\n";
    int failed = 0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        if (!errors[k].empty()) {
            ++failed;
            spdlog::error("{} {} D={} rep={}: {}", jobs[k].g->name, to_string(jobs[k].protocol), jobs[k].D,
                          jobs[k].rep, errors[k]);
            continue;
        }
        auto& r = results[k];
        summary << r.graph << ',' << r.protocol << ',' << r.D << ',' << r.rep << ',' << r.n << ',' << r.mean << ','
                << r.max << ',' << r.total << ',' << r.pruned << ',' << r.cnd << '\n';
        spdlog::info("{} {} D={}: mean {:.3f} max {} central distance {}", r.graph, r.protocol, r.D, r.mean, r.max,
                     r.cnd);
    }
    write_atomic(out / "summary.csv", summary.str());
    if (invariant_broken) return kExitInvariant;
    return failed ? 1 : 0;
}

// ---------------------------------------------------------------- compare

struct Loaded {
    fs::path path;
    json meta;
    RunReport report;
};

int cmd_compare(const std::vector<std::string>& inputs, double binwidth, const std::string& out_flag) {
    std::map<std::tuple<std::string, int, int>, std::map<std::string, Loaded>> groups;
    for (auto& p : expand(inputs, ".json")) {
        json j = json::parse(read_text(p));
        if (!j.contains("protocol") || !j.contains("nodes")) continue;
        Loaded l{p, j, report_from_json(j)};
        auto key = std::make_tuple(j.value("graph", p.parent_path().filename().string()), l.report.D,
                                   j.value("rep", 0));
        groups[key][to_string(l.report.protocol)] = std::move(l);
    }
    if (groups.empty()) throw std::invalid_argument("no reports found");

    std::vector<std::string> mismatches;
    for (auto& [key, by] : groups)
        if (!by.count("ytq") || !by.count("pruning"))
            mismatches.push_back(std::get<0>(key) + " D=" + std::to_string(std::get<1>(key)) + " rep=" +
                                 std::to_string(std::get<2>(key)) + " lacks " + (by.count("ytq") ? "pruning" : "ytq"));
        else if (by.at("ytq").report.nodes.size() != by.at("pruning").report.nodes.size())
            mismatches.push_back(std::get<0>(key) + " D=" + std::to_string(std::get<1>(key)) + ": node counts differ");
    if (!mismatches.empty()) {
        std::string msg = "unpaired reports:";
        for (auto& m : mismatches) msg += "\n  " + m;
        throw UnpairedReports(msg);
    }

    fs::path out = resolve_out(out_flag);
    std::ostringstream table;
    table << "graph,D,rep,n,ytq_mean,ytq_max,pruning_mean,pruning_max,reduction_pct,delta_mean,delta_min,delta_max,"
             "ytq_central_distance,pruning_central_distance\n";
    std::map<int, std::vector<double>> ytq_means, pr_means;
    std::map<int, std::map<std::string, std::pair<int, int>>> quality;
    std::vector<double> deltas;
    for (auto& [key, by] : groups) {
        auto& y = by.at("ytq");
        auto& p = by.at("pruning");
        auto cy = count_messages(y.report);
        auto cp = count_messages(p.report);
        std::vector<double> d;
        for (std::size_t i = 0; i < cy.per_node.size(); ++i)
            d.push_back(static_cast<double>(cy.per_node[i]) - static_cast<double>(cp.per_node[i]));
        deltas.insert(deltas.end(), d.begin(), d.end());
        double red = cy.mean > 0 ? 100.0 * (cy.mean - cp.mean) / cy.mean : 0.0;
        int qy = y.meta.value("central_node_distance", -1);
        int qp = p.meta.value("central_node_distance", -1);
        table << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << cy.per_node.size()
              << ',' << cy.mean << ',' << cy.max << ',' << cp.mean << ',' << cp.max << ',' << red << ',' << mean(d)
              << ',' << *std::min_element(d.begin(), d.end()) << ',' << *std::max_element(d.begin(), d.end()) << ','
              << qy << ',' << qp << '\n';
        ytq_means[std::get<1>(key)].push_back(cy.mean);
        pr_means[std::get<1>(key)].push_back(cp.mean);
        quality[std::get<1>(key)][std::get<0>(key)] = {qy, qp};
    }
    write_atomic(out / "compare.csv", table.str());

    std::ostringstream wil;
    wil << "D,graphs,ytq_mean,pruning_mean,W_plus,p_value,effect_size,large_effect,exact\n";
    for (auto& [D, ym] : ytq_means) {
        auto& pm = pr_means[D];
        auto s = wilcoxon_signed_rank(ym, pm);
        wil << D << ',' << ym.size() << ',' << mean(ym) << ',' << mean(pm) << ',' << s.statistic << ',' << s.p_value
            << ',' << s.effect_size << ',' << (is_large_effect(s.effect_size) ? 1 : 0) << ',' << (s.exact ? 1 : 0)
            << '\n';
        spdlog::info("D={}: ytq mean {:.3f}, pruning mean {:.3f}, Wilcoxon p={:.3g}, effect {:.3f}", D, mean(ym),
                     mean(pm), s.p_value, s.effect_size);
    }
    write_atomic(out / "wilcoxon.csv", wil.str());

    std::ostringstream q;
    q << "D,graph,ytq_central_distance,pruning_central_distance\n";
    for (auto& [D, row] : quality)
        for (auto& [g, v] : row) q << D << ',' << g << ',' << v.first << ',' << v.second << '\n';
    write_atomic(out / "quality.csv", q.str());

    auto h = histogram(deltas, binwidth);
    std::ostringstream hist;
    hist << "bin_start,bin_end,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        hist << h.origin + static_cast<double>(b) * h.binwidth << ','
             << h.origin + static_cast<double>(b + 1) * h.binwidth << ',' << h.counts[b] << '\n';
    write_atomic(out / "delta_hist.csv", hist.str());

    for (double d : deltas)
        if (d < 0) {
            spdlog::error("negative per-node saving found");
            return kExitInvariant;
        }
    return 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    std::vector<std::string> graphs;
    std::vector<std::string> wilcoxon;
    std::string column;
    std::string histogram_file;
    double binwidth = 2.0;
    std::string out;
};

int cmd_stats(const StatsArgs& a) {
    fs::path out = resolve_out(a.out);
    bool did = false;
    if (!a.graphs.empty()) {
        did = true;
        std::ostringstream csv;
        csv << "graph,n,m,diameter,spearman_rho,kendall_tau\n";
        std::vector<double> rhos, taus, diams;
        for (auto& p : expand(a.graphs, ".txt")) {
            Graph g = load_edge_list_file(p).graph;
            if (!g.is_connected()) g = largest_component(g).graph;
            auto ecc = eccentricities(g);
            auto clo = closeness_all(g);
            std::vector<double> e, c;
            for (NodeId i = 0; i < g.size(); ++i) {
                e.push_back(1.0 / ecc[i]);
                c.push_back(to_double(clo[i]));
            }
            double rho = spearman_rho(e, c), tau = kendall_tau(e, c);
            int diam = *std::max_element(ecc.begin(), ecc.end());
            rhos.push_back(rho);
            taus.push_back(tau);
            diams.push_back(diam);
            csv << p.stem().string() << ',' << g.size() << ',' << g.edge_count() << ',' << diam << ',' << rho << ','
                << tau << '\n';
        }
        write_atomic(out / "correlations.csv", csv.str());
        spdlog::info("Spearman rho {:.4f} +- {:.4f}, Kendall tau {:.4f} +- {:.4f} over {} graphs", mean(rhos),
                     rhos.size() > 1 ? stddev(rhos) : 0.0, mean(taus), taus.size() > 1 ? stddev(taus) : 0.0,
                     rhos.size());
        auto h = histogram(diams, a.binwidth);
        std::ostringstream hist;
        hist << "bin_start,bin_end,count\n";
        for (std::size_t b = 0; b < h.counts.size(); ++b)
            hist << h.origin + static_cast<double>(b) * h.binwidth << ','
                 << h.origin + static_cast<double>(b + 1) * h.binwidth << ',' << h.counts[b] << '\n';
        write_atomic(out / "diameter_hist.csv", hist.str());
    }
    if (!a.wilcoxon.empty()) {
        did = true;
        if (a.wilcoxon.size() != 2) throw std::invalid_argument("--wilcoxon takes two CSV files");
        auto x = read_samples_csv(a.wilcoxon[0], a.column);
        auto y = read_samples_csv(a.wilcoxon[1], a.column);
        auto s = wilcoxon_signed_rank(x, y);
        std::ostringstream csv;
        csv << "n,n_used,W_plus,z,p_value,effect_size,large_effect,exact\n"
            << x.size() << ',' << s.n_used << ',' << s.statistic << ',' << s.z << ',' << s.p_value << ','
            << s.effect_size << ',' << (is_large_effect(s.effect_size) ? 1 : 0) << ',' << (s.exact ? 1 : 0) << '\n';
        write_atomic(out / "wilcoxon.csv", csv.str());
        spdlog::info("Wilcoxon W+={} p={:.4g} effect={:.3f}", s.statistic, s.p_value, s.effect_size);
    }
    if (!a.histogram_file.empty()) {
        did = true;
        auto h = histogram(read_samples_csv(a.histogram_file, a.column), a.binwidth);
        std::ostringstream hist;
        hist << "bin_start,bin_end,count\n";
        for (std::size_t b = 0; b < h.counts.size(); ++b)
            hist << h.origin + static_cast<double>(b) * h.binwidth << ','
                 << h.origin + static_cast<double>(b + 1) * h.binwidth << ',' << h.counts[b] << '\n';
        write_atomic(out / "histogram.csv", hist.str());
    }
    if (!did) throw std::invalid_argument("nothing to do: give --graphs, --wilcoxon or --histogram");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-view construction simulator: YTQ, pruning and failure-detecting pruning"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate connected random geometric graphs");
    g->add_option("--count", gen.count, "Number of graphs in batch mode")->capture_default_str();
    g->add_option("--n-min", gen.n_min, "Smallest N in batch mode")->capture_default_str();
    g->add_option("--n-max", gen.n_max, "Largest N in batch mode")->capture_default_str();
    g->add_option("--n", gen.n, "Generate one graph with exactly this many nodes");
    g->add_option("--seed", gen.seed, "Seed")->capture_default_str();
    g->add_option("--grid", gen.grid, "Grid side")->capture_default_str();
    g->add_option("--range", gen.range, "Communication range (exclusive)")->capture_default_str();
    g->add_option("--sweeps", gen.sweeps, "Chain moves per node")->capture_default_str();
    g->add_flag("--rejection", gen.rejection, "Reject-and-resample instead of the connected chain");
    g->add_option("-o,--out", gen.out, "Output directory (default $NETVIEW_OUT_DIR or ./netview_out)");

    RunArgs run_args;
    auto* r = app.add_subcommand("run", "Run protocols and write reports");
    r->add_option("--graph", run_args.graphs, "Edge-list file or directory of .txt files");
    r->add_flag("--golden", run_args.golden, "Use the ten-node worked example graph");
    r->add_option("--protocol", run_args.protocols, "ytq, pruning, fd")->delimiter(',')->capture_default_str();
    r->add_option("--D", run_args.D, "Fixed D value(s)")->delimiter(',');
    r->add_option("--D-fraction", run_args.D_fraction, "D = ceil(fraction * diameter)");
    r->add_flag("--D-diameter", run_args.D_diameter, "D = diameter");
    r->add_flag("--sweep", run_args.sweep, "D in {2,6,10,14,18,22,26}");
    r->add_option("--schedule", run_args.schedule, "Failure schedule file (fd only)");
    r->add_option("--T", run_args.T, "Failure timeout in rounds")->capture_default_str();
    r->add_option("--reps", run_args.reps, "Repetitions per configuration")->capture_default_str();
    r->add_option("--seed", run_args.seed, "Base seed recorded in reports")->capture_default_str();
    r->add_option("--threads", run_args.threads, "Worker threads (0 = hardware)")->capture_default_str();
    r->add_option("-o,--out", run_args.out, "Output directory (default $NETVIEW_OUT_DIR or ./netview_out)");

    std::vector<std::string> reports;
    double binwidth = 2.0;
    std::string compare_out;
    auto* c = app.add_subcommand("compare", "Pair ytq/pruning reports and emit comparison tables");
    c->add_option("reports", reports, "Report JSON files or directories")->required();
    c->add_option("--binwidth", binwidth, "Histogram bin width for per-node savings")->capture_default_str();
    c->add_option("-o,--out", compare_out, "Output directory (default $NETVIEW_OUT_DIR or ./netview_out)");

    StatsArgs stats;
    auto* s = app.add_subcommand("stats", "Rank correlations over graphs, Wilcoxon on sample CSVs");
    s->add_option("--graphs", stats.graphs, "Edge-list files or directories");
    s->add_option("--wilcoxon", stats.wilcoxon, "Two sample CSV files (paired)")->expected(2);
    s->add_option("--column", stats.column, "CSV column to read (default: first)");
    s->add_option("--histogram", stats.histogram_file, "Sample CSV to bin");
    s->add_option("--binwidth", stats.binwidth, "Histogram bin width")->capture_default_str();
    s->add_option("-o,--out", stats.out, "Output directory (default $NETVIEW_OUT_DIR or ./netview_out)");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

    std::string command_line;
    for (int k = 0; k < argc; ++k) command_line += (k ? " " : "") + std::string(argv[k]);

    try {
        if (*g) return cmd_gen(gen);
        if (*r) return cmd_run(run_args, command_line);
        if (*c) return cmd_compare(reports, binwidth, compare_out);
        if (*s) return cmd_stats(stats);
    } catch (const FileNotFound& e) {
        spdlog::error("file not found: {}", e.path().string());
        return kExitMissingFile;
    } catch (const UnpairedReports& e) {
        spdlog::error("{}", e.what());
        return kExitUnpaired;
    } catch (const InvariantFailure& e) {
        spdlog::error("invariant violated: {}", e.what());
        return kExitInvariant;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitInput;
    }
    return 0;
}
