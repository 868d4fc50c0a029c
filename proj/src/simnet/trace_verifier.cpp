#include "uhelp/simnet/trace_verifier.hpp"

#include <map>
#include <set>
#include <sstream>

namespace uhelp::simnet {

namespace {

struct Line {
    std::string kind;
    std::map<std::string, std::string> kv;
};

Line parse(const std::string& text)
{
    Line l;
    std::istringstream is(text);
    std::string tok;
    bool first_bare = true;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            if (first_bare)
                l.kind = tok;
            first_bare = false;
            continue;
        }
        l.kv.emplace(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return l;
}

std::string get(const Line& l, const char* key)
{
    auto it = l.kv.find(key);
    return it == l.kv.end() ? std::string{} : it->second;
}

} // namespace

std::vector<std::string> verify_trace(const std::vector<std::string>& trace, const Metrics& m)
{
    std::vector<std::string> problems;
    std::map<std::string, int> open;  // message id -> outstanding sends
    std::map<std::string, std::uint64_t> sends_by_type;
    std::set<std::string> help_notified;
    std::uint64_t refloods = 0;

    auto settle = [&](const std::string& id, const std::string& what) {
        auto it = open.find(id);
        if (it == open.end() || it->second == 0) {
            problems.push_back(what + " of unsent message " + id);
            return;
        }
        --it->second;
    };

    for (const auto& text : trace) {
        const Line l = parse(text);
        if (l.kind == "send") {
            ++open[get(l, "id")];
            ++sends_by_type[get(l, "type")];
        } else if (l.kind == "direct") {
            ++open[get(l, "id")];
        } else if (l.kind == "recv" || l.kind == "drecv") {
            settle(get(l, "id"), "receipt");
        } else if (l.kind == "undelivered") {
            settle(get(l, "id"), "undelivered entry");
        } else if (l.kind == "notify" && get(l, "type") == "HELP") {
            help_notified.insert(get(l, "node"));
        } else if (l.kind == "reflood") {
            ++refloods;
        }
    }

    for (const auto& [id, n] : open)
        if (n != 0)
            problems.push_back("message " + id + " neither received nor listed as undelivered");
    if (help_notified.size() != m.nodes_reached)
        problems.push_back("nodes_reached " + std::to_string(m.nodes_reached) + " but trace notifies " +
                           std::to_string(help_notified.size()));
    for (auto t : {protocol::MessageType::Help, protocol::MessageType::NotNeeded, protocol::MessageType::Cancelled}) {
        const std::string name(protocol::to_string(t));
        if (sends_by_type[name] != m.messages(t))
            problems.push_back(name + " count " + std::to_string(m.messages(t)) + " but trace sends " +
                               std::to_string(sends_by_type[name]));
    }
    if (refloods != m.re_flood_events)
        problems.push_back("re_flood_events mismatch");
    return problems;
}

} // namespace uhelp::simnet
