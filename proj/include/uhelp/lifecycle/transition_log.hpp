#pragma once

#include "uhelp/lifecycle/machine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace uhelp::lifecycle {

struct LogEntry {
    Timestamp clock = 0;
    NodeId node;
    TaskId task;
    Role role = Role::Requester;
    EventKind event = EventKind::Click_Help;
    std::optional<State> from;  // empty when the event created the record
    State to;
    Outcome outcome = Outcome::Applied;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

// Line form: t=<clock> node=<id> task=<n> role=<role> event=<kind> from=<state|-> to=<state> outcome=<o>
std::string format_log_entry(const LogEntry& e);
LogEntry parse_log_entry(std::string_view line);

class TransitionLog {
public:
    void append(LogEntry e) { entries_.push_back(std::move(e)); }
    void record(Timestamp clock, const std::optional<State>& from, const Transition& t, EventKind event);

    const std::vector<LogEntry>& entries() const noexcept { return entries_; }
    void write(std::ostream& out) const;
    static TransitionLog read(std::istream& in);

private:
    std::vector<LogEntry> entries_;
};

} // namespace uhelp::lifecycle
