#pragma once

#include "uhelp/lifecycle/states.hpp"

#include <string>
#include <vector>

namespace uhelp::lifecycle {

struct LifecycleEvent {
    EventKind kind = EventKind::Click_Help;
    NodeId actor;  // sender for Msg_*, the clicking user for Click_*
    TaskId task;
    std::optional<NodeId> target;  // Click_Assign: volunteer picked; Msg_NotNeeded: the chosen volunteer
    std::optional<int> rating;  // Click_Rate only
};

enum class EffectKind {
    FloodHelp,
    FloodNotNeeded,
    FloodCancelled,
    SendVolunteer,
    SendAssigned,
    SendNotNeeded,
    SendCancelled,
    SendCancel,
    SendDone,
    RecordRating,
};

std::string_view to_string(EffectKind k) noexcept;

struct Effect {
    EffectKind kind;
    std::optional<NodeId> to;  // direct sends
    std::optional<NodeId> chosen;  // FloodNotNeeded
    std::optional<int> rating;  // RecordRating

    friend bool operator==(const Effect&, const Effect&) = default;
};

enum class Outcome {
    Applied,  // event accepted (state may or may not change)
    Absorbed,  // stale or duplicate input, silently ignored
    Rejected,  // illegal in this state; reported, state unchanged
};

std::string_view to_string(Outcome o) noexcept;

struct Transition {
    RequestRecord record;
    std::vector<Effect> effects;
    Outcome outcome = Outcome::Applied;
    std::string note;
};

// Click_Help: creates the requester's record and asks for the HELP flood.
Transition open_request(TaskId task, const NodeId& owner, const Deadlines& deadlines);

// Msg_Help: creates the requestee's record at Unanswered.
Transition receive_help(TaskId task, const NodeId& owner, const NodeId& requester, const Deadlines& deadlines);

Transition requester_transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock);
Transition requestee_transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock);

// Dispatches on rec.role.
Transition transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock);

// Deadline events due at `clock` that have not fired yet, in deadline order.
// Marks them fired on the record.
std::vector<LifecycleEvent> fire_deadlines(RequestRecord& rec, Timestamp clock);
std::vector<LifecycleEvent> fire_deadlines(std::vector<RequestRecord>& records, Timestamp clock);

} // namespace uhelp::lifecycle
