#include "uhelp/lifecycle/states.hpp"

#include <string>

namespace uhelp::lifecycle {

Deadlines make_deadlines(Timestamp volunteer_by, Timestamp end_date, std::optional<Timestamp> assign_by)
{
    Deadlines d;
    d.volunteer_by = volunteer_by;
    d.end_date = end_date;
    d.assign_by = assign_by ? *assign_by : volunteer_by + (end_date - volunteer_by) / 2;
    if (!(d.volunteer_by <= d.assign_by && d.assign_by <= d.end_date))
        throw LifecycleError("deadlines must satisfy volunteer_by <= assign_by <= end_date");
    return d;
}

bool is_terminal(RequesterState s) noexcept
{
    return s == RequesterState::Rated || s == RequesterState::Cancelled || s == RequesterState::Expired;
}

bool is_terminal(RequesteeState s) noexcept
{
    return s == RequesteeState::HelpNotNeeded || s == RequesteeState::Completed || s == RequesteeState::Cancelled ||
           s == RequesteeState::Expired;
}

bool is_terminal(const State& s) noexcept
{
    return std::visit([](auto v) { return is_terminal(v); }, s);
}

namespace {

Color requester_color(RequesterState s)
{
    switch (s) {
    case RequesterState::LookingForVolunteers: return Color::Yellow;
    case RequesterState::PendingAssignment1: return Color::Green;
    case RequesterState::PendingAssignment2: return Color::Red;
    case RequesterState::Assigned: return Color::Yellow;
    case RequesterState::Completed: return Color::Green;
    case RequesterState::Rated:
    case RequesterState::Cancelled:
    case RequesterState::Expired: return Color::Grey;
    }
    return Color::Grey;
}

Color requestee_color(RequesteeState s)
{
    switch (s) {
    case RequesteeState::Unanswered: return Color::Green;
    case RequesteeState::Accepted: return Color::Yellow;
    case RequesteeState::Committed: return Color::Red;
    default: return Color::Grey;
    }
}

template <typename E, std::size_t N>
E lookup(const E (&all)[N], std::string_view text, const char* what)
{
    for (E e : all)
        if (to_string(e) == text)
            return e;
    throw LifecycleError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

} // namespace

Color color_of(const State& s) noexcept
{
    if (const auto* r = std::get_if<RequesterState>(&s))
        return requester_color(*r);
    return requestee_color(std::get<RequesteeState>(s));
}

Color color_of(const RequestRecord& rec) noexcept
{
    return color_of(rec.state);
}

std::string_view to_string(Role r) noexcept
{
    return r == Role::Requester ? "requester" : "requestee";
}

std::string_view to_string(RequesterState s) noexcept
{
    switch (s) {
    case RequesterState::LookingForVolunteers: return "LookingForVolunteers";
    case RequesterState::PendingAssignment1: return "PendingAssignment1";
    case RequesterState::PendingAssignment2: return "PendingAssignment2";
    case RequesterState::Assigned: return "Assigned";
    case RequesterState::Completed: return "Completed";
    case RequesterState::Rated: return "Rated";
    case RequesterState::Cancelled: return "Cancelled";
    case RequesterState::Expired: return "Expired";
    }
    return "?";
}

std::string_view to_string(RequesteeState s) noexcept
{
    switch (s) {
    case RequesteeState::Unanswered: return "Unanswered";
    case RequesteeState::Declined: return "Declined";
    case RequesteeState::Accepted: return "Accepted";
    case RequesteeState::Committed: return "Committed";
    case RequesteeState::HelpNotNeeded: return "HelpNotNeeded";
    case RequesteeState::Completed: return "Completed";
    case RequesteeState::Cancelled: return "Cancelled";
    case RequesteeState::Expired: return "Expired";
    }
    return "?";
}

std::string_view to_string(const State& s) noexcept
{
    return std::visit([](auto v) { return to_string(v); }, s);
}

std::string_view to_string(Color c) noexcept
{
    switch (c) {
    case Color::Green: return "green";
    case Color::Red: return "red";
    case Color::Yellow: return "yellow";
    case Color::Grey: return "grey";
    }
    return "?";
}

std::string_view to_string(EventKind e) noexcept
{
    switch (e) {
    case EventKind::Click_Help: return "Click_Help";
    case EventKind::Msg_Volunteer: return "Msg_Volunteer";
    case EventKind::Click_Assign: return "Click_Assign";
    case EventKind::Msg_Done: return "Msg_Done";
    case EventKind::Passed_EndDate: return "Passed_EndDate";
    case EventKind::Click_Rate: return "Click_Rate";
    case EventKind::Passed_DeadlineV: return "Passed_DeadlineV";
    case EventKind::Passed_DeadlineA: return "Passed_DeadlineA";
    case EventKind::Click_Cancel: return "Click_Cancel";
    case EventKind::Msg_Cancel: return "Msg_Cancel";
    case EventKind::Click_Chat: return "Click_Chat";
    case EventKind::Msg_Chat: return "Msg_Chat";
    case EventKind::Click_Call: return "Click_Call";
    case EventKind::Msg_Help: return "Msg_Help";
    case EventKind::Click_Decline: return "Click_Decline";
    case EventKind::Click_Accept: return "Click_Accept";
    case EventKind::Msg_Assigned: return "Msg_Assigned";
    case EventKind::Msg_NotNeeded: return "Msg_NotNeeded";
    case EventKind::Msg_Cancelled: return "Msg_Cancelled";
    case EventKind::Click_Done: return "Click_Done";
    }
    return "?";
}

Role role_from_string(std::string_view text)
{
    if (text == "requester")
        return Role::Requester;
    if (text == "requestee")
        return Role::Requestee;
    throw LifecycleError("unknown role '" + std::string(text) + "'");
}

State state_from_string(Role role, std::string_view text)
{
    if (role == Role::Requester)
        return lookup(kRequesterStates, text, "requester state");
    return lookup(kRequesteeStates, text, "requestee state");
}

EventKind event_from_string(std::string_view text)
{
    return lookup(kAllEvents, text, "event");
}

Color color_from_string(std::string_view text)
{
    constexpr Color all[] = {Color::Green, Color::Red, Color::Yellow, Color::Grey};
    return lookup(all, text, "colour");
}

void check(const RequestRecord& rec)
{
    const bool requester_state = std::holds_alternative<RequesterState>(rec.state);
    if (requester_state != (rec.role == Role::Requester))
        throw LifecycleError("state does not match role");
    const auto& d = rec.deadlines;
    if (!(d.volunteer_by <= d.assign_by && d.assign_by <= d.end_date))
        throw LifecycleError("deadlines out of order");
    if (rec.chosen && rec.role == Role::Requester && !rec.volunteers.contains(*rec.chosen))
        throw LifecycleError("chosen volunteer not in volunteer set");
    if (rec.role == Role::Requestee && !rec.volunteers.empty())
        throw LifecycleError("requestee records do not track volunteers");
}

} // namespace uhelp::lifecycle
