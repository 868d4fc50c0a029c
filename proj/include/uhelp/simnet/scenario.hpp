#pragma once

#include "uhelp/ids.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uhelp::simnet {

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ActionKind { Help, Accept, Decline, Assign, Done, Rate, Cancel, Chat, Call };

std::string_view to_string(ActionKind k) noexcept;
ActionKind action_from_string(std::string_view text);

// One scripted user action. `time` is an offset from the run's clock_start.
// Requests are named by `request`, a label chosen by the script.
struct Action {
    Timestamp time = 0;
    NodeId node;
    ActionKind kind = ActionKind::Help;
    std::string request;

    // help
    std::string activity;
    std::string object;
    std::string description;
    double tau = 0.0;
    int hops = 1;
    Duration end = 0;  // task end date, as an offset from the action time

    std::optional<NodeId> volunteer;  // assign
    std::optional<int> rating;  // rate
    std::optional<NodeId> with;  // chat/call counterpart (defaults to the requester)
};

struct Scenario {
    std::vector<Action> actions;  // sorted by time, stable
};

// JSON: {"actions": [{"time", "node", "action", "request", ...}]}
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::filesystem::path& path);

} // namespace uhelp::simnet
