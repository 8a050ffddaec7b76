// report_io.hpp - RunReport <-> JSON, per-node CSV, pruning trace tables
#pragma once

#include <string>

#include <json.hpp>

#include "netview/sim.hpp"

namespace netview {

std::string fraction_string(const Fraction& f);
Fraction parse_fraction(const std::string& s);

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

// id,degree,received,sent,final_sent,final_received,signals_sent,signals_received,
// L,H,end,rounds,self_pruned,closeness,closeness_float,view_size
std::string nodes_csv(const RunReport& r, std::string (*label)(NodeId) = nullptr);

// One row per node, one column per round, trace cells as in trace_cell().
std::string trace_csv(const RunReport& r, std::string (*label)(NodeId) = nullptr);

// fd only: round,node,n_down,s_down
std::string down_history_csv(const RunReport& r);

}  // namespace netview
