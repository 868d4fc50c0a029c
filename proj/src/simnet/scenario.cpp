#include "uhelp/simnet/scenario.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace uhelp::simnet {

using json = nlohmann::json;

namespace {

constexpr ActionKind kAllActions[] = {ActionKind::Help, ActionKind::Accept, ActionKind::Decline,
                                      ActionKind::Assign, ActionKind::Done, ActionKind::Rate,
                                      ActionKind::Cancel, ActionKind::Chat, ActionKind::Call};

}

std::string_view to_string(ActionKind k) noexcept
{
    switch (k) {
    case ActionKind::Help: return "help";
    case ActionKind::Accept: return "accept";
    case ActionKind::Decline: return "decline";
    case ActionKind::Assign: return "assign";
    case ActionKind::Done: return "done";
    case ActionKind::Rate: return "rate";
    case ActionKind::Cancel: return "cancel";
    case ActionKind::Chat: return "chat";
    case ActionKind::Call: return "call";
    }
    return "?";
}

ActionKind action_from_string(std::string_view text)
{
    for (auto k : kAllActions)
        if (to_string(k) == text)
            return k;
    throw ScenarioError("unknown action '" + std::string(text) + "'");
}

Scenario parse_scenario(std::string_view json_text)
{
    Scenario sc;
    std::set<std::string> help_labels;
    try {
        const auto j = json::parse(json_text);
        for (const auto& a : j.at("actions")) {
            Action act;
            act.time = a.at("time").get<Timestamp>();
            act.node = NodeId(a.at("node").get<std::string>());
            act.kind = action_from_string(a.at("action").get<std::string>());
            act.request = a.at("request").get<std::string>();
            if (act.time < 0)
                throw ScenarioError("action time must be non-negative");
            switch (act.kind) {
            case ActionKind::Help:
                act.activity = a.at("activity").get<std::string>();
                act.object = a.at("object").get<std::string>();
                act.description = a.value("description", std::string{});
                act.tau = a.at("tau").get<double>();
                act.hops = a.at("hops").get<int>();
                act.end = a.at("end").get<Duration>();
                if (!help_labels.insert(act.request).second)
                    throw ScenarioError("request '" + act.request + "' asked twice");
                if (!(act.tau >= 0.0 && act.tau <= 1.0))
                    throw ScenarioError("tau must lie in [0,1]");
                if (act.hops < 1)
                    throw ScenarioError("hops must be at least 1");
                if (act.end <= 0)
                    throw ScenarioError("end must be after the request");
                break;
            case ActionKind::Assign: act.volunteer = NodeId(a.at("volunteer").get<std::string>()); break;
            case ActionKind::Rate: act.rating = a.at("value").get<int>(); break;
            case ActionKind::Chat:
            case ActionKind::Call:
                if (a.contains("with"))
                    act.with = NodeId(a.at("with").get<std::string>());
                break;
            default: break;
            }
            sc.actions.push_back(std::move(act));
        }
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
    std::stable_sort(sc.actions.begin(), sc.actions.end(),
                     [](const Action& a, const Action& b) { return a.time < b.time; });
    return sc;
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open scenario " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace uhelp::simnet
