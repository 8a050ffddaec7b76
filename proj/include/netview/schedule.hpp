// schedule.hpp - scripted node/edge failure and recovery events
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netview/graph.hpp"

namespace netview {

enum class TargetKind { node, edge };
enum class FailureAction { fail, recover };

struct FailureEvent {
    int round = 1;
    TargetKind kind = TargetKind::node;
    NodeId node = 0;  // kind == node
    Edge edge;        // kind == edge
    FailureAction action = FailureAction::fail;
    bool operator==(const FailureEvent&) const = default;
};

using FailureSchedule = std::vector<FailureEvent>;

class ScheduleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One event per line: "round node|edge v|u-v fail|recover". '#' starts a comment.
FailureSchedule parse_schedule(std::string_view text);
FailureSchedule load_schedule_file(const std::filesystem::path& path);
std::string format_schedule(const FailureSchedule& s);

// Structural checks plus "pruned nodes can not fail": `pruned_round[v]` is the round at
// which v prunes itself in a failure-free reference run.
void validate_schedule(const Graph& g, const FailureSchedule& s,
                       const std::vector<std::optional<int>>& pruned_round);

}  // namespace netview
