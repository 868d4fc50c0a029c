#include "uhelp/protocol/message_io.hpp"

#include "json.hpp"

namespace uhelp::protocol {

using json = nlohmann::ordered_json;

std::string serialize(const FloodMessage& msg)
{
    json j;
    j["task_id"] = msg.request.id.value;
    j["activity"] = msg.request.task.activity.value;
    j["object"] = msg.request.task.object.value;
    j["description"] = msg.request.task.description;
    j["end_date"] = msg.request.end_date;
    j["type"] = std::string(to_string(msg.type));
    j["tau"] = msg.tau;
    j["pathtrust"] = msg.path_trust;
    json path = json::array();
    for (const auto& n : msg.path)
        path.push_back(n.str());
    j["path"] = std::move(path);
    j["deadline"] = msg.deadline;
    j["hops"] = msg.hops;
    if (msg.chosen)
        j["chosen"] = msg.chosen->str();
    return j.dump();
}

FloodMessage deserialize(std::string_view text)
{
    try {
        const auto j = json::parse(text);
        FloodMessage msg;
        msg.request.id = TaskId{j.at("task_id").get<std::uint64_t>()};
        msg.request.task.activity = ConceptId{j.at("activity").get<std::uint32_t>()};
        msg.request.task.object = ConceptId{j.at("object").get<std::uint32_t>()};
        msg.request.task.description = j.at("description").get<std::string>();
        msg.request.end_date = j.at("end_date").get<Timestamp>();
        msg.type = message_type_from_string(j.at("type").get<std::string>());
        msg.tau = j.at("tau").get<double>();
        msg.path_trust = j.at("pathtrust").get<double>();
        for (const auto& n : j.at("path"))
            msg.path.emplace_back(n.get<std::string>());
        msg.deadline = j.at("deadline").get<Timestamp>();
        msg.hops = j.at("hops").get<int>();
        if (j.contains("chosen"))
            msg.chosen = NodeId(j.at("chosen").get<std::string>());
        if (!(msg.tau >= 0.0 && msg.tau <= 1.0) || !(msg.path_trust >= 0.0 && msg.path_trust <= 1.0))
            throw ProtocolError("tau and pathtrust must lie in [0,1]");
        return msg;
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed message: ") + e.what());
    }
}

} // namespace uhelp::protocol
