#include "netview/report_io.hpp"

#include <sstream>

namespace netview {

using nlohmann::json;

std::string fraction_string(const Fraction& f) {
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Fraction(std::stoll(s));
    return Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

namespace {

json opt_int(const std::optional<int>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<int> get_opt_int(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<int>();
}

json edges_json(const EdgeSet& s) {
    json a = json::array();
    for (auto e : s) a.push_back({e.u, e.v});
    return a;
}

EdgeSet edges_from(const json& j) {
    EdgeSet s;
    for (auto& e : j) s.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    return s;
}

EndCause cause_from(const std::string& s) {
    if (s == "equilibrium") return EndCause::equilibrium;
    if (s == "pruned") return EndCause::pruned;
    if (s == "round_limit") return EndCause::round_limit;
    return EndCause::none;
}

}  // namespace

json report_to_json(const RunReport& r) {
    json j;
    j["protocol"] = to_string(r.protocol);
    j["D"] = r.D;
    j["T"] = r.T;
    j["seed"] = r.seed;
    j["rounds"] = r.rounds;
    j["schedule"] = format_schedule(r.schedule);
    json nodes = json::array();
    for (auto& n : r.nodes) {
        json x;
        x["id"] = n.id;
        x["degree"] = n.degree;
        x["received"] = n.received;
        x["sent"] = n.sent;
        x["final_sent"] = n.final_sent;
        x["final_received"] = n.final_received;
        x["signals_sent"] = n.signals_sent;
        x["signals_received"] = n.signals_received;
        x["corrupted"] = n.corrupted;
        x["L"] = opt_int(n.L);
        x["H"] = opt_int(n.H);
        x["end"] = to_string(n.end);
        x["rounds"] = n.rounds;
        x["self_pruned"] = n.self_pruned;
        x["closeness"] = fraction_string(n.closeness);
        x["closeness_float"] = to_double(n.closeness);
        x["final_view"] = n.final_view;
        if (r.protocol == Protocol::fd) x["final_edge_view"] = edges_json(n.final_edge_view);
        x["detections"] = n.detections;
        x["h"] = n.h;
        x["u"] = n.u;
        if (!n.down_history.empty()) {
            json dh = json::array();
            for (auto& s : n.down_history)
                dh.push_back({{"round", s.round}, {"n_down", s.n_down}, {"s_down", edges_json(s.s_down)}});
            x["down_history"] = dh;
        }
        if (r.protocol == Protocol::fd) {
            json g = json::array();
            for (auto& k : n.gamma) g.push_back({{"S", k.S}, {"Q", k.Q}, {"subject", {k.subject.u, k.subject.v}}});
            x["gamma"] = g;
        }
        nodes.push_back(std::move(x));
    }
    j["nodes"] = std::move(nodes);
    json ev = json::array();
    for (auto& e : r.prune_events) ev.push_back({e.pruner, e.pruned, e.round});
    j["prune_events"] = std::move(ev);
    json log = json::array();
    for (auto& l : r.log) log.push_back({{"round", l.round}, {"node", l.node}, {"what", l.what}});
    j["log"] = std::move(log);
    return j;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.protocol = parse_protocol(j.at("protocol").get<std::string>());
    r.D = j.at("D").get<int>();
    r.T = j.value("T", 1);
    r.seed = j.value("seed", std::uint64_t{0});
    r.rounds = j.value("rounds", 0);
    if (j.contains("schedule")) r.schedule = parse_schedule(j.at("schedule").get<std::string>());
    for (auto& x : j.at("nodes")) {
        NodeReport n;
        n.id = x.at("id").get<NodeId>();
        n.degree = x.at("degree").get<std::size_t>();
        n.received = x.at("received").get<std::uint64_t>();
        n.sent = x.value("sent", std::uint64_t{0});
        n.final_sent = x.value("final_sent", std::uint64_t{0});
        n.final_received = x.value("final_received", std::uint64_t{0});
        n.signals_sent = x.value("signals_sent", std::uint64_t{0});
        n.signals_received = x.value("signals_received", std::uint64_t{0});
        n.corrupted = x.value("corrupted", std::uint64_t{0});
        n.L = get_opt_int(x.at("L"));
        n.H = get_opt_int(x.at("H"));
        n.end = cause_from(x.value("end", std::string("running")));
        n.rounds = x.value("rounds", 0);
        n.self_pruned = x.value("self_pruned", false);
        n.closeness = parse_fraction(x.at("closeness").get<std::string>());
        n.final_view = x.at("final_view").get<NodeSet>();
        if (x.contains("final_edge_view")) n.final_edge_view = edges_from(x.at("final_edge_view"));
        n.detections = x.value("detections", std::vector<NodeSet>{});
        n.h = x.value("h", std::vector<std::int64_t>{});
        n.u = x.value("u", std::vector<std::int64_t>{});
        if (x.contains("down_history"))
            for (auto& s : x.at("down_history"))
                n.down_history.push_back(
                    {s.at("round").get<int>(), s.at("n_down").get<NodeSet>(), edges_from(s.at("s_down"))});
        if (x.contains("gamma"))
            for (auto& g : x.at("gamma"))
                n.gamma.push_back({g.at("S").get<int>(), g.at("Q").get<int>(),
                                   Edge{g.at("subject").at(0).get<NodeId>(), g.at("subject").at(1).get<NodeId>()}});
        r.nodes.push_back(std::move(n));
    }
    for (auto& e : j.value("prune_events", json::array()))
        r.prune_events.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<int>()});
    for (auto& l : j.value("log", json::array()))
        r.log.push_back({l.at("round").get<int>(), l.at("node").get<NodeId>(), l.at("what").get<std::string>()});
    return r;
}

std::string nodes_csv(const RunReport& r, std::string (*label)(NodeId)) {
    std::ostringstream out;
    out << "id,degree,received,sent,final_sent,final_received,signals_sent,signals_received,"
           "L,H,end,rounds,self_pruned,closeness,closeness_float,view_size\n";
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("inf"); };
    for (auto& n : r.nodes) {
        out << (label ? label(n.id) : std::to_string(n.id)) << ',' << n.degree << ',' << n.received << ','
            << n.sent << ',' << n.final_sent << ',' << n.final_received << ',' << n.signals_sent << ','
            << n.signals_received << ',' << opt(n.L) << ',' << opt(n.H) << ',' << to_string(n.end) << ','
            << n.rounds << ',' << (n.self_pruned ? 1 : 0) << ',' << fraction_string(n.closeness) << ','
            << to_double(n.closeness) << ',' << n.final_view.size() << '\n';
    }
    return out.str();
}

std::string trace_csv(const RunReport& r, std::string (*label)(NodeId)) {
    std::ostringstream out;
    out << "node";
    for (int t = 1; t <= r.D; ++t) out << ",t" << t;
    out << '\n';
    for (auto& n : r.nodes) {
        out << (label ? label(n.id) : std::to_string(n.id));
        for (int t = 1; t <= r.D; ++t) out << ",\"" << trace_cell(r, n.id, t, label) << '"';
        out << '\n';
    }
    return out.str();
}

std::string down_history_csv(const RunReport& r) {
    std::ostringstream out;
    out << "round,node,n_down,s_down\n";
    for (auto& n : r.nodes)
        for (auto& s : n.down_history) {
            out << s.round << ',' << n.id << ",\"";
            for (std::size_t k = 0; k < s.n_down.size(); ++k) out << (k ? " " : "") << s.n_down[k];
            out << "\",\"";
            for (std::size_t k = 0; k < s.s_down.size(); ++k)
                out << (k ? " " : "") << s.s_down[k].u << '-' << s.s_down[k].v;
            out << "\"\n";
        }
    return out.str();
}

}  // namespace netview
