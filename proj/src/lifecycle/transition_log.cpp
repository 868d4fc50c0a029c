#include "uhelp/lifecycle/transition_log.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace uhelp::lifecycle {

namespace {

template <typename Int>
Int parse_int(std::string_view text, const char* field)
{
    Int v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw LifecycleError(std::string("bad ") + field + " '" + std::string(text) + "'");
    return v;
}

Outcome outcome_from_string(std::string_view text)
{
    for (auto o : {Outcome::Applied, Outcome::Absorbed, Outcome::Rejected})
        if (to_string(o) == text)
            return o;
    throw LifecycleError("unknown outcome '" + std::string(text) + "'");
}

} // namespace

std::string format_log_entry(const LogEntry& e)
{
    std::ostringstream os;
    os << "t=" << e.clock << " node=" << e.node.str() << " task=" << e.task.value << " role=" << to_string(e.role)
       << " event=" << to_string(e.event) << " from=" << (e.from ? to_string(*e.from) : "-")
       << " to=" << to_string(e.to) << " outcome=" << to_string(e.outcome);
    return os.str();
}

LogEntry parse_log_entry(std::string_view line)
{
    std::map<std::string, std::string, std::less<>> kv;
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw LifecycleError("malformed log token '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto field = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end())
            throw LifecycleError(std::string("log line missing ") + k);
        return it->second;
    };

    LogEntry e;
    e.clock = parse_int<Timestamp>(field("t"), "clock");
    e.node = NodeId(field("node"));
    e.task = TaskId{parse_int<std::uint64_t>(field("task"), "task")};
    e.role = role_from_string(field("role"));
    e.event = event_from_string(field("event"));
    if (field("from") != "-")
        e.from = state_from_string(e.role, field("from"));
    e.to = state_from_string(e.role, field("to"));
    e.outcome = outcome_from_string(field("outcome"));
    return e;
}

void TransitionLog::record(Timestamp clock, const std::optional<State>& from, const Transition& t, EventKind event)
{
    append(LogEntry{clock, t.record.owner, t.record.task, t.record.role, event, from, t.record.state, t.outcome});
}

void TransitionLog::write(std::ostream& out) const
{
    for (const auto& e : entries_)
        out << format_log_entry(e) << '\n';
}

TransitionLog TransitionLog::read(std::istream& in)
{
    TransitionLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        log.append(parse_log_entry(line));
    }
    return log;
}

} // namespace uhelp::lifecycle
