#include "netview/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace netview {

namespace {

template <typename T>
bool parse_num(std::string_view tok, T& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

std::string target_name(const FailureEvent& e) {
    if (e.kind == TargetKind::node) return "node " + std::to_string(e.node);
    return "edge " + std::to_string(e.edge.u) + "-" + std::to_string(e.edge.v);
}

}  // namespace

FailureSchedule parse_schedule(std::string_view text) {
    FailureSchedule out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string round, kind, id, action, extra;
        if (!(ls >> round)) continue;
        auto fail = [&](const std::string& why) {
            return ScheduleError("schedule line " + std::to_string(lineno) + ": " + why);
        };
        if (!(ls >> kind >> id >> action) || (ls >> extra)) throw fail("expected 'round kind id action'");
        FailureEvent ev;
        if (!parse_num(round, ev.round) || ev.round < 1) throw fail("bad round '" + round + "'");
        if (kind == "node") {
            ev.kind = TargetKind::node;
            if (!parse_num(id, ev.node)) throw fail("bad node id '" + id + "'");
        } else if (kind == "edge") {
            ev.kind = TargetKind::edge;
            auto dash = id.find('-');
            NodeId a = 0, b = 0;
            if (dash == std::string::npos || !parse_num(std::string_view(id).substr(0, dash), a) ||
                !parse_num(std::string_view(id).substr(dash + 1), b) || a == b)
                throw fail("bad edge id '" + id + "'");
            ev.edge = make_edge(a, b);
        } else {
            throw fail("unknown kind '" + kind + "'");
        }
        if (action == "fail")
            ev.action = FailureAction::fail;
        else if (action == "recover")
            ev.action = FailureAction::recover;
        else
            throw fail("unknown action '" + action + "'");
        out.push_back(ev);
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.round < b.round; });
    return out;
}

FailureSchedule load_schedule_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_schedule(ss.str());
}

std::string format_schedule(const FailureSchedule& s) {
    std::string out;
    for (auto& e : s) {
        out += std::to_string(e.round);
        out += e.kind == TargetKind::node ? " node " + std::to_string(e.node)
                                          : " edge " + std::to_string(e.edge.u) + "-" + std::to_string(e.edge.v);
        out += e.action == FailureAction::fail ? " fail\n" : " recover\n";
    }
    return out;
}

void validate_schedule(const Graph& g, const FailureSchedule& s,
                       const std::vector<std::optional<int>>& pruned_round) {
    std::map<std::pair<int, Edge>, std::vector<const FailureEvent*>> per_target;
    for (auto& e : s) {
        if (e.round < 1) throw ScheduleError(target_name(e) + ": round must be >= 1");
        if (e.kind == TargetKind::node) {
            if (e.node >= g.size()) throw ScheduleError(target_name(e) + ": no such node");
            if (e.node < pruned_round.size() && pruned_round[e.node] && e.round >= *pruned_round[e.node])
                throw ScheduleError(target_name(e) + ": node is pruned at round " +
                                    std::to_string(*pruned_round[e.node]) + " and cannot fail");
            per_target[{0, Edge{e.node, e.node}}].push_back(&e);
        } else {
            if (!g.has_edge(e.edge.u, e.edge.v)) throw ScheduleError(target_name(e) + ": no such edge");
            per_target[{1, e.edge}].push_back(&e);
        }
    }
    for (auto& [key, evs] : per_target) {
        std::stable_sort(evs.begin(), evs.end(), [](auto* a, auto* b) { return a->round < b->round; });
        FailureAction expect = FailureAction::fail;
        int last_round = 0;
        for (auto* e : evs) {
            if (e->round == last_round)
                throw ScheduleError(target_name(*e) + ": more than one event in round " + std::to_string(e->round));
            if (e->action != expect) throw ScheduleError(target_name(*e) + ": fail and recover must alternate");
            expect = expect == FailureAction::fail ? FailureAction::recover : FailureAction::fail;
            last_round = e->round;
        }
    }
}

}  // namespace netview
