#pragma once

#include "uhelp/ids.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <variant>

namespace uhelp::lifecycle {

class LifecycleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Role { Requester, Requestee };

enum class RequesterState {
    LookingForVolunteers,
    PendingAssignment1,
    PendingAssignment2,
    Assigned,
    Completed,
    Rated,
    Cancelled,
    Expired,
};

enum class RequesteeState {
    Unanswered,
    Declined,
    Accepted,
    Committed,
    HelpNotNeeded,
    Completed,
    Cancelled,
    Expired,
};

using State = std::variant<RequesterState, RequesteeState>;

enum class Color { Green, Red, Yellow, Grey };

enum class EventKind {
    Click_Help,
    Msg_Volunteer,
    Click_Assign,
    Msg_Done,
    Passed_EndDate,
    Click_Rate,
    Passed_DeadlineV,
    Passed_DeadlineA,
    Click_Cancel,
    Msg_Cancel,
    Click_Chat,
    Msg_Chat,
    Click_Call,
    Msg_Help,
    Click_Decline,
    Click_Accept,
    Msg_Assigned,
    Msg_NotNeeded,
    Msg_Cancelled,
    Click_Done,
};

inline constexpr EventKind kAllEvents[] = {
    EventKind::Click_Help,     EventKind::Msg_Volunteer,    EventKind::Click_Assign,     EventKind::Msg_Done,
    EventKind::Passed_EndDate, EventKind::Click_Rate,       EventKind::Passed_DeadlineV, EventKind::Passed_DeadlineA,
    EventKind::Click_Cancel,   EventKind::Msg_Cancel,       EventKind::Click_Chat,       EventKind::Msg_Chat,
    EventKind::Click_Call,     EventKind::Msg_Help,         EventKind::Click_Decline,    EventKind::Click_Accept,
    EventKind::Msg_Assigned,   EventKind::Msg_NotNeeded,    EventKind::Msg_Cancelled,    EventKind::Click_Done,
};

inline constexpr RequesterState kRequesterStates[] = {
    RequesterState::LookingForVolunteers, RequesterState::PendingAssignment1, RequesterState::PendingAssignment2,
    RequesterState::Assigned,             RequesterState::Completed,          RequesterState::Rated,
    RequesterState::Cancelled,            RequesterState::Expired,
};

inline constexpr RequesteeState kRequesteeStates[] = {
    RequesteeState::Unanswered,    RequesteeState::Declined,  RequesteeState::Accepted,  RequesteeState::Committed,
    RequesteeState::HelpNotNeeded, RequesteeState::Completed, RequesteeState::Cancelled, RequesteeState::Expired,
};

struct Deadlines {
    Timestamp volunteer_by = 0;
    Timestamp assign_by = 0;
    Timestamp end_date = 0;

    friend bool operator==(const Deadlines&, const Deadlines&) = default;
};

// assign_by defaults to the midpoint of volunteer_by and end_date.
Deadlines make_deadlines(Timestamp volunteer_by, Timestamp end_date, std::optional<Timestamp> assign_by = {});

struct FiredDeadlines {
    bool volunteer = false;
    bool assign = false;
    bool end = false;

    friend bool operator==(const FiredDeadlines&, const FiredDeadlines&) = default;
};

struct RequestRecord {
    TaskId task;
    Role role = Role::Requester;
    State state = RequesterState::LookingForVolunteers;
    NodeId owner;
    NodeId requester;  // == owner on the requester side
    std::set<NodeId> volunteers;
    std::optional<NodeId> chosen;
    Deadlines deadlines;
    FiredDeadlines fired;

    friend bool operator==(const RequestRecord&, const RequestRecord&) = default;
};

bool is_terminal(RequesterState s) noexcept;
bool is_terminal(RequesteeState s) noexcept;
bool is_terminal(const State& s) noexcept;

Color color_of(const State& s) noexcept;
Color color_of(const RequestRecord& rec) noexcept;

std::string_view to_string(Role r) noexcept;
std::string_view to_string(RequesterState s) noexcept;
std::string_view to_string(RequesteeState s) noexcept;
std::string_view to_string(const State& s) noexcept;
std::string_view to_string(Color c) noexcept;
std::string_view to_string(EventKind e) noexcept;

Role role_from_string(std::string_view text);
State state_from_string(Role role, std::string_view text);
EventKind event_from_string(std::string_view text);
Color color_from_string(std::string_view text);

// Throws LifecycleError when the record breaks a structural invariant.
void check(const RequestRecord& rec);

} // namespace uhelp::lifecycle
