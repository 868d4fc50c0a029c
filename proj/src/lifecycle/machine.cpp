#include "uhelp/lifecycle/machine.hpp"

#include "uhelp/trust/rating.hpp"

namespace uhelp::lifecycle {

std::string_view to_string(EffectKind k) noexcept
{
    switch (k) {
    case EffectKind::FloodHelp: return "flood_help";
    case EffectKind::FloodNotNeeded: return "flood_notneeded";
    case EffectKind::FloodCancelled: return "flood_cancelled";
    case EffectKind::SendVolunteer: return "send_volunteer";
    case EffectKind::SendAssigned: return "send_assigned";
    case EffectKind::SendNotNeeded: return "send_notneeded";
    case EffectKind::SendCancelled: return "send_cancelled";
    case EffectKind::SendCancel: return "send_cancel";
    case EffectKind::SendDone: return "send_done";
    case EffectKind::RecordRating: return "record_rating";
    }
    return "?";
}

std::string_view to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::Applied: return "applied";
    case Outcome::Absorbed: return "absorbed";
    case Outcome::Rejected: return "rejected";
    }
    return "?";
}

namespace {

bool is_message(EventKind k)
{
    return to_string(k).starts_with("Msg_");
}

bool is_deadline(EventKind k)
{
    return k == EventKind::Passed_DeadlineV || k == EventKind::Passed_DeadlineA || k == EventKind::Passed_EndDate;
}

bool requester_only(EventKind k)
{
    switch (k) {
    case EventKind::Click_Help:
    case EventKind::Msg_Volunteer:
    case EventKind::Click_Assign:
    case EventKind::Msg_Done:
    case EventKind::Click_Rate:
    case EventKind::Msg_Cancel: return true;
    default: return false;
    }
}

bool requestee_only(EventKind k)
{
    switch (k) {
    case EventKind::Msg_Help:
    case EventKind::Click_Decline:
    case EventKind::Click_Accept:
    case EventKind::Msg_Assigned:
    case EventKind::Msg_NotNeeded:
    case EventKind::Msg_Cancelled:
    case EventKind::Click_Done: return true;
    default: return false;
    }
}

bool volunteering_closed(const RequestRecord& rec, Timestamp clock)
{
    return rec.fired.volunteer || clock >= rec.deadlines.volunteer_by;
}

Transition unchanged(const RequestRecord& rec, Outcome o, std::string note)
{
    return Transition{rec, {}, o, std::move(note)};
}

Transition moved(RequestRecord rec, State to, std::vector<Effect> fx = {})
{
    rec.state = to;
    return Transition{std::move(rec), std::move(fx), Outcome::Applied, {}};
}

Effect send(EffectKind k, const NodeId& to)
{
    return Effect{k, to, std::nullopt, std::nullopt};
}

// Shared handling for terminal states: protocol stragglers and deadline ticks
// are absorbed, user actions are refused.
Transition at_terminal(const RequestRecord& rec, const LifecycleEvent& ev)
{
    if (is_message(ev.kind) || is_deadline(ev.kind))
        return unchanged(rec, Outcome::Absorbed, "terminal state");
    return unchanged(rec, Outcome::Rejected, "terminal state");
}

} // namespace

Transition open_request(TaskId task, const NodeId& owner, const Deadlines& deadlines)
{
    RequestRecord rec;
    rec.task = task;
    rec.role = Role::Requester;
    rec.state = RequesterState::LookingForVolunteers;
    rec.owner = owner;
    rec.requester = owner;
    rec.deadlines = deadlines;
    check(rec);
    return Transition{std::move(rec), {Effect{EffectKind::FloodHelp, {}, {}, {}}}, Outcome::Applied, {}};
}

Transition receive_help(TaskId task, const NodeId& owner, const NodeId& requester, const Deadlines& deadlines)
{
    if (owner == requester)
        throw LifecycleError("requester cannot be its own requestee");
    RequestRecord rec;
    rec.task = task;
    rec.role = Role::Requestee;
    rec.state = RequesteeState::Unanswered;
    rec.owner = owner;
    rec.requester = requester;
    rec.deadlines = deadlines;
    check(rec);
    return Transition{std::move(rec), {}, Outcome::Applied, {}};
}

Transition requester_transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock)
{
    using S = RequesterState;
    if (rec.role != Role::Requester)
        throw LifecycleError("requester_transition on a requestee record");
    if (requestee_only(ev.kind))
        return unchanged(rec, Outcome::Rejected, "not a requester event");

    const S s = std::get<S>(rec.state);
    if (is_terminal(s))
        return at_terminal(rec, ev);

    if (s == S::Completed) {
        if (ev.kind == EventKind::Click_Rate) {
            if (!ev.rating || *ev.rating < trust::kMinRating || *ev.rating > trust::kMaxRating)
                return unchanged(rec, Outcome::Rejected, "rating outside 1..7");
            Effect fx{EffectKind::RecordRating, rec.chosen, std::nullopt, ev.rating};
            return moved(rec, S::Rated, {fx});
        }
        if (is_deadline(ev.kind))
            return unchanged(rec, Outcome::Absorbed, "deadline after completion");
        return unchanged(rec, Outcome::Rejected, "completed request only accepts a rating");
    }

    const bool open = s == S::LookingForVolunteers || s == S::PendingAssignment1;
    const bool pending = s == S::PendingAssignment1 || s == S::PendingAssignment2;

    switch (ev.kind) {
    case EventKind::Click_Help: return unchanged(rec, Outcome::Rejected, "request already open");

    case EventKind::Msg_Volunteer: {
        if (ev.actor == rec.owner)
            return unchanged(rec, Outcome::Rejected, "requester cannot volunteer");
        if (open) {
            RequestRecord next = rec;
            next.volunteers.insert(ev.actor);
            return moved(std::move(next), S::PendingAssignment1);
        }
        if (s == S::Assigned && ev.actor != rec.chosen) {
            Effect fx{EffectKind::SendNotNeeded, ev.actor, rec.chosen, std::nullopt};
            return Transition{rec, {fx}, Outcome::Applied, "late volunteer told help is not needed"};
        }
        return unchanged(rec, Outcome::Rejected, "volunteering closed");
    }

    case EventKind::Click_Assign: {
        if (!pending)
            return unchanged(rec, Outcome::Rejected, "nothing to assign");
        if (!ev.target || !rec.volunteers.contains(*ev.target))
            return unchanged(rec, Outcome::Rejected, "assignee is not a volunteer");
        RequestRecord next = rec;
        next.chosen = *ev.target;
        std::vector<Effect> fx;
        fx.push_back(send(EffectKind::SendAssigned, *ev.target));
        fx.push_back(Effect{EffectKind::FloodNotNeeded, std::nullopt, *ev.target, std::nullopt});
        for (const NodeId& v : rec.volunteers)
            if (v != *ev.target)
                fx.push_back(Effect{EffectKind::SendNotNeeded, v, *ev.target, std::nullopt});
        return moved(std::move(next), S::Assigned, std::move(fx));
    }

    case EventKind::Msg_Done:
        if (s == S::Assigned && rec.chosen == ev.actor)
            return moved(rec, S::Completed);
        return unchanged(rec, Outcome::Rejected, "done from someone not assigned");

    case EventKind::Passed_EndDate:
        if (s == S::Assigned)
            return moved(rec, S::Completed);
        return unchanged(rec, Outcome::Absorbed, "end date not applicable");

    case EventKind::Click_Rate: return unchanged(rec, Outcome::Rejected, "not completed");

    case EventKind::Passed_DeadlineV:
        if (s == S::LookingForVolunteers)
            return moved(rec, S::Expired);
        if (s == S::PendingAssignment1)
            return moved(rec, S::PendingAssignment2);
        return unchanged(rec, Outcome::Absorbed, "volunteer deadline not applicable");

    case EventKind::Passed_DeadlineA:
        if (s == S::PendingAssignment2)
            return moved(rec, S::Expired);
        return unchanged(rec, Outcome::Absorbed, "assignment deadline not applicable");

    case EventKind::Click_Cancel: {
        std::vector<Effect> fx;
        if (s == S::Assigned) {
            fx.push_back(send(EffectKind::SendCancelled, *rec.chosen));
        } else {
            fx.push_back(Effect{EffectKind::FloodCancelled, {}, {}, {}});
            for (const NodeId& v : rec.volunteers)
                fx.push_back(send(EffectKind::SendCancelled, v));
        }
        return moved(rec, S::Cancelled, std::move(fx));
    }

    case EventKind::Msg_Cancel: {
        if (!rec.volunteers.contains(ev.actor))
            return unchanged(rec, Outcome::Absorbed, "unknown or already withdrawn volunteer");
        RequestRecord next = rec;
        next.volunteers.erase(ev.actor);
        if (s == S::Assigned) {
            if (rec.chosen != ev.actor)
                return Transition{std::move(next), {}, Outcome::Applied, "non-chosen volunteer withdrew"};
            next.chosen.reset();
            return moved(std::move(next), S::Cancelled);
        }
        if (!next.volunteers.empty())
            return Transition{std::move(next), {}, Outcome::Applied, {}};
        if (!volunteering_closed(rec, clock))
            return moved(std::move(next), S::LookingForVolunteers);
        return moved(std::move(next), S::Cancelled, {Effect{EffectKind::FloodCancelled, {}, {}, {}}});
    }

    case EventKind::Click_Chat:
    case EventKind::Msg_Chat:
    case EventKind::Click_Call:
        if (s == S::LookingForVolunteers)
            return unchanged(rec, Outcome::Rejected, "no volunteer to talk to");
        return unchanged(rec, Outcome::Applied, {});

    default: break;
    }
    return unchanged(rec, Outcome::Rejected, "unhandled event");
}

Transition requestee_transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock)
{
    using S = RequesteeState;
    if (rec.role != Role::Requestee)
        throw LifecycleError("requestee_transition on a requester record");
    if (requester_only(ev.kind))
        return unchanged(rec, Outcome::Rejected, "not a requestee event");

    const S s = std::get<S>(rec.state);
    if (is_terminal(s))
        return at_terminal(rec, ev);

    const bool from_requester = ev.actor == rec.requester;

    switch (ev.kind) {
    case EventKind::Msg_Help: return unchanged(rec, Outcome::Absorbed, "duplicate request");

    case EventKind::Click_Accept:
        if (s == S::Unanswered || s == S::Declined)
            return moved(rec, S::Accepted, {send(EffectKind::SendVolunteer, rec.requester)});
        return unchanged(rec, Outcome::Rejected, "already volunteered");

    case EventKind::Click_Decline:
        if (s == S::Unanswered)
            return moved(rec, S::Declined);
        return unchanged(rec, Outcome::Rejected, "decline only from unanswered");

    case EventKind::Click_Cancel:
        if (s == S::Accepted) {
            const S to = volunteering_closed(rec, clock) ? S::Cancelled : S::Declined;
            return moved(rec, to, {send(EffectKind::SendCancel, rec.requester)});
        }
        if (s == S::Committed) {
            RequestRecord next = rec;
            next.chosen.reset();
            return moved(std::move(next), S::Cancelled, {send(EffectKind::SendCancel, rec.requester)});
        }
        return unchanged(rec, Outcome::Rejected, "not a volunteer");

    case EventKind::Msg_Assigned:
        if (!from_requester)
            return unchanged(rec, Outcome::Rejected, "assignment from a non-requester");
        if (s == S::Accepted) {
            RequestRecord next = rec;
            next.chosen = rec.owner;
            return moved(std::move(next), S::Committed);
        }
        if (s == S::Committed)
            return unchanged(rec, Outcome::Absorbed, "duplicate assignment");
        return unchanged(rec, Outcome::Rejected, "assigned without volunteering");

    case EventKind::Msg_NotNeeded:
        if (!from_requester)
            return unchanged(rec, Outcome::Rejected, "notice from a non-requester");
        if (ev.target == rec.owner || s == S::Committed)
            return unchanged(rec, Outcome::Absorbed, "addressed to the chosen volunteer");
        return moved(rec, S::HelpNotNeeded);

    case EventKind::Passed_DeadlineV:
        if (s == S::Unanswered || s == S::Declined)
            return moved(rec, S::Expired);
        return unchanged(rec, Outcome::Absorbed, "volunteer deadline not applicable");

    case EventKind::Passed_DeadlineA:
        if (s == S::Accepted)
            return moved(rec, S::Expired);
        return unchanged(rec, Outcome::Absorbed, "assignment deadline not applicable");

    case EventKind::Click_Done:
        if (s == S::Committed)
            return moved(rec, S::Completed, {send(EffectKind::SendDone, rec.requester)});
        return unchanged(rec, Outcome::Rejected, "not committed");

    case EventKind::Passed_EndDate:
        if (s == S::Committed)
            return moved(rec, S::Completed);
        return unchanged(rec, Outcome::Absorbed, "end date not applicable");

    case EventKind::Msg_Cancelled:
        if (!from_requester)
            return unchanged(rec, Outcome::Rejected, "cancellation from a non-requester");
        return moved(rec, S::Cancelled);

    case EventKind::Click_Chat:
    case EventKind::Msg_Chat:
    case EventKind::Click_Call:
        if (s == S::Accepted || s == S::Committed)
            return unchanged(rec, Outcome::Applied, {});
        return unchanged(rec, Outcome::Rejected, "not a volunteer");

    default: break;
    }
    return unchanged(rec, Outcome::Rejected, "unhandled event");
}

Transition transition(const RequestRecord& rec, const LifecycleEvent& ev, Timestamp clock)
{
    return rec.role == Role::Requester ? requester_transition(rec, ev, clock) : requestee_transition(rec, ev, clock);
}

std::vector<LifecycleEvent> fire_deadlines(RequestRecord& rec, Timestamp clock)
{
    std::vector<LifecycleEvent> out;
    auto fire = [&](bool& flag, Timestamp due, EventKind kind) {
        if (!flag && clock >= due) {
            flag = true;
            out.push_back(LifecycleEvent{kind, rec.owner, rec.task, std::nullopt, std::nullopt});
        }
    };
    fire(rec.fired.volunteer, rec.deadlines.volunteer_by, EventKind::Passed_DeadlineV);
    fire(rec.fired.assign, rec.deadlines.assign_by, EventKind::Passed_DeadlineA);
    fire(rec.fired.end, rec.deadlines.end_date, EventKind::Passed_EndDate);
    return out;
}

std::vector<LifecycleEvent> fire_deadlines(std::vector<RequestRecord>& records, Timestamp clock)
{
    std::vector<LifecycleEvent> out;
    for (auto& rec : records) {
        auto evs = fire_deadlines(rec, clock);
        out.insert(out.end(), evs.begin(), evs.end());
    }
    return out;
}

} // namespace uhelp::lifecycle
