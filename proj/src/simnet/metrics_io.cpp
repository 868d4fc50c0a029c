#include "uhelp/simnet/metrics_io.hpp"

#include "json.hpp"

#include <sstream>

namespace uhelp::simnet {

using json = nlohmann::ordered_json;
using protocol::MessageType;

namespace {

std::vector<std::string> census_keys()
{
    std::vector<std::string> keys;
    for (auto s : lifecycle::kRequesterStates)
        keys.push_back("requester:" + std::string(lifecycle::to_string(s)));
    for (auto s : lifecycle::kRequesteeStates)
        keys.push_back("requestee:" + std::string(lifecycle::to_string(s)));
    return keys;
}

std::uint64_t census_of(const Metrics& m, const std::string& key)
{
    auto it = m.census.find(key);
    return it == m.census.end() ? 0 : it->second;
}

std::string latencies(const Metrics& m)
{
    std::string out;
    for (const auto& [label, l] : m.first_volunteer_latency) {
        if (!out.empty())
            out += ';';
        out += label + ":" + (l ? std::to_string(*l) : "-");
    }
    return out;
}

} // namespace

std::string metrics_csv_header(const Columns& prefix)
{
    std::ostringstream os;
    for (const auto& [k, v] : prefix)
        os << k << ',';
    os << "help_messages,notneeded_messages,cancelled_messages,direct_messages,dropped,nodes_reached,"
          "volunteers_count,re_flood_events,ratings_recorded,rejected_events,horizon_exceeded,undelivered,"
          "first_volunteer_latency";
    for (const auto& k : census_keys())
        os << ',' << k;
    return os.str();
}

std::string metrics_csv_row(const Metrics& m, const Columns& prefix)
{
    std::ostringstream os;
    for (const auto& [k, v] : prefix)
        os << v << ',';
    os << m.messages(MessageType::Help) << ',' << m.messages(MessageType::NotNeeded) << ','
       << m.messages(MessageType::Cancelled) << ',' << m.direct_messages << ',' << m.dropped << ','
       << m.nodes_reached << ',' << m.volunteers_count << ',' << m.re_flood_events << ',' << m.ratings_recorded
       << ',' << m.rejected_events << ',' << (m.horizon_exceeded ? 1 : 0) << ',' << m.undelivered << ','
       << latencies(m);
    for (const auto& k : census_keys())
        os << ',' << census_of(m, k);
    return os.str();
}

std::string metrics_json_line(const Metrics& m, const Columns& prefix)
{
    json j;
    for (const auto& [k, v] : prefix)
        j[k] = v;
    j["messages_by_type"] = {{"HELP", m.messages(MessageType::Help)},
                             {"NOTNEEDED", m.messages(MessageType::NotNeeded)},
                             {"CANCELLED", m.messages(MessageType::Cancelled)}};
    j["direct_messages"] = m.direct_messages;
    j["dropped"] = m.dropped;
    j["nodes_reached"] = m.nodes_reached;
    j["volunteers_count"] = m.volunteers_count;
    j["re_flood_events"] = m.re_flood_events;
    j["ratings_recorded"] = m.ratings_recorded;
    j["rejected_events"] = m.rejected_events;
    j["horizon_exceeded"] = m.horizon_exceeded;
    j["undelivered"] = m.undelivered;
    json lat = json::object();
    for (const auto& [label, l] : m.first_volunteer_latency)
        lat[label] = l ? json(*l) : json(nullptr);
    j["first_volunteer_latency"] = std::move(lat);
    json census = json::object();
    for (const auto& [k, n] : m.census)
        census[k] = n;
    j["census"] = std::move(census);
    return j.dump();
}

} // namespace uhelp::simnet
