#include "uhelp/lifecycle/machine.hpp"
#include "uhelp/lifecycle/states.hpp"
#include "uhelp/lifecycle/transition_log.hpp"

#include "support/fixtures.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace uhelp;
using namespace uhelp::lifecycle;

namespace {

const NodeId r{"r"}, e{"e"}, v1{"v1"}, v2{"v2"}, v9{"v9"};
const Deadlines kDeadlines = make_deadlines(100, 200, 150);

} // namespace

TEST(Lifecycle, MatchesGoldenTable)
{
    const auto report = golden::check_lifecycle_table(test_support::fixture("lifecycle_golden.tsv"));
    EXPECT_EQ(report.rows, 2 * 8 * 20 * 2);
    for (const auto& m : report.mismatches)
        ADD_FAILURE() << m;
}

TEST(Lifecycle, NamesRoundTrip)
{
    for (auto k : kAllEvents)
        EXPECT_EQ(event_from_string(to_string(k)), k);
    for (auto s : kRequesterStates)
        EXPECT_EQ(state_from_string(Role::Requester, to_string(s)), State{s});
    for (auto s : kRequesteeStates)
        EXPECT_EQ(state_from_string(Role::Requestee, to_string(s)), State{s});
    for (auto c : {Color::Green, Color::Red, Color::Yellow, Color::Grey})
        EXPECT_EQ(color_from_string(to_string(c)), c);
    EXPECT_THROW(event_from_string("Click_Nothing"), LifecycleError);
    EXPECT_THROW(state_from_string(Role::Requestee, "Assigned"), LifecycleError);
}

TEST(Lifecycle, DeadlineDefaultsAndValidation)
{
    EXPECT_EQ(make_deadlines(100, 200).assign_by, 150);
    EXPECT_THROW(make_deadlines(200, 100), LifecycleError);
    EXPECT_THROW(make_deadlines(100, 200, 250), LifecycleError);
}

TEST(Lifecycle, AssignNotifiesTheOthers)
{
    auto rec = golden::canonical_record(Role::Requester, RequesterState::PendingAssignment1);
    rec.volunteers = {v1, v2, v9};
    LifecycleEvent ev{EventKind::Click_Assign, r, TaskId{1}, v2, std::nullopt};
    const auto t = requester_transition(rec, ev, 50);
    EXPECT_EQ(t.record.state, State{RequesterState::Assigned});
    EXPECT_EQ(t.record.chosen, v2);
    std::set<NodeId> told;
    for (const auto& f : t.effects) {
        if (f.kind == EffectKind::SendNotNeeded)
            told.insert(*f.to);
        if (f.kind == EffectKind::FloodNotNeeded)
            EXPECT_EQ(f.chosen, v2);
    }
    EXPECT_EQ(told, (std::set<NodeId>{v1, v9}));

    ev.target = NodeId("stranger");
    EXPECT_EQ(requester_transition(rec, ev, 50).outcome, Outcome::Rejected);
}

TEST(Lifecycle, RatingRange)
{
    auto rec = golden::canonical_record(Role::Requester, RequesterState::Completed);
    LifecycleEvent ev{EventKind::Click_Rate, r, TaskId{1}, std::nullopt, 8};
    EXPECT_EQ(requester_transition(rec, ev, 300).outcome, Outcome::Rejected);
    ev.rating = 7;
    const auto t = requester_transition(rec, ev, 300);
    ASSERT_EQ(t.effects.size(), 1u);
    EXPECT_EQ(t.effects[0].to, v1);
    EXPECT_EQ(t.effects[0].rating, 7);
}

TEST(Lifecycle, FireDeadlinesOnceInOrder)
{
    auto rec = golden::canonical_record(Role::Requester, RequesterState::PendingAssignment1);
    EXPECT_TRUE(fire_deadlines(rec, 99).empty());
    const auto all = fire_deadlines(rec, 500);
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].kind, EventKind::Passed_DeadlineV);
    EXPECT_EQ(all[1].kind, EventKind::Passed_DeadlineA);
    EXPECT_EQ(all[2].kind, EventKind::Passed_EndDate);
    for (const auto& ev : all)
        EXPECT_EQ(ev.actor, r);
    EXPECT_TRUE(fire_deadlines(rec, 600).empty());
    EXPECT_EQ(rec.fired, (FiredDeadlines{true, true, true}));

    auto partial = golden::canonical_record(Role::Requestee, RequesteeState::Accepted);
    EXPECT_EQ(fire_deadlines(partial, 100).size(), 1u);
    EXPECT_EQ(fire_deadlines(partial, 150).size(), 1u);
}

// Random schedules drawn from every event kind, with random actors and
// targets, interleaved with clock advances. Afterwards every deadline fires.
TEST(Lifecycle, RandomSchedulesKeepInvariantsAndTerminate)
{
    std::mt19937_64 rng(101);
    const std::vector<NodeId> people{r, e, v1, v2, v9};
    for (int trial = 0; trial < 3000; ++trial) {
        const bool requester = trial % 2 == 0;
        Transition t = requester ? open_request(TaskId{1}, r, kDeadlines) : receive_help(TaskId{1}, e, r, kDeadlines);
        RequestRecord rec = t.record;
        Timestamp clock = 0;
        for (int step = oracle::uniform_int(rng, 0, 25); step > 0; --step) {
            clock += oracle::uniform_int(rng, 0, 20);
            for (const auto& ev : fire_deadlines(rec, clock))
                rec = transition(rec, ev, clock).record;
            LifecycleEvent ev{kAllEvents[oracle::uniform_int(rng, 0, static_cast<int>(std::size(kAllEvents)) - 1)],
                              people[oracle::uniform_int(rng, 0, 4)], TaskId{1}, std::nullopt, std::nullopt};
            if (oracle::uniform(rng) < 0.7)
                ev.target = people[oracle::uniform_int(rng, 0, 4)];
            if (ev.kind == EventKind::Click_Rate)
                ev.rating = oracle::uniform_int(rng, 0, 8);
            const auto next = transition(rec, ev, clock);
            if (next.outcome != Outcome::Applied)
                ASSERT_EQ(next.record, rec) << to_string(ev.kind);
            if (ev.kind == EventKind::Click_Chat || ev.kind == EventKind::Msg_Chat || ev.kind == EventKind::Click_Call)
                ASSERT_EQ(next.record, rec);
            if (is_terminal(rec.state))
                ASSERT_EQ(next.record.state, rec.state);
            ASSERT_NO_THROW(check(next.record));
            rec = next.record;
        }
        for (const auto& ev : fire_deadlines(rec, kDeadlines.end_date))
            rec = transition(rec, ev, kDeadlines.end_date).record;
        // Completed waits for the requester's rating; everything else has
        // settled.
        if (requester && rec.state == State{RequesterState::Completed}) {
            LifecycleEvent rate{EventKind::Click_Rate, r, TaskId{1}, std::nullopt, 4};
            rec = transition(rec, rate, kDeadlines.end_date).record;
        }
        ASSERT_TRUE(is_terminal(rec.state)) << to_string(rec.state);
        ASSERT_EQ(color_of(rec), Color::Grey);
    }
}

TEST(TransitionLog, RoundTrips)
{
    TransitionLog log;
    const auto opened = open_request(TaskId{7}, r, kDeadlines);
    log.record(3, std::nullopt, opened, EventKind::Click_Help);
    LifecycleEvent vol{EventKind::Msg_Volunteer, v1, TaskId{7}, std::nullopt, std::nullopt};
    log.record(9, opened.record.state, requester_transition(opened.record, vol, 9), EventKind::Msg_Volunteer);
    const auto help = receive_help(TaskId{7}, e, r, kDeadlines);
    log.record(4, std::nullopt, help, EventKind::Msg_Help);
    LifecycleEvent done{EventKind::Click_Done, e, TaskId{7}, std::nullopt, std::nullopt};
    log.record(5, help.record.state, requestee_transition(help.record, done, 5), EventKind::Click_Done);

    std::ostringstream out;
    log.write(out);
    std::istringstream in(out.str());
    EXPECT_EQ(TransitionLog::read(in).entries(), log.entries());
    EXPECT_EQ(log.entries()[3].outcome, Outcome::Rejected);
    EXPECT_EQ(format_log_entry(log.entries()[0]),
              "t=3 node=r task=7 role=requester event=Click_Help from=- to=LookingForVolunteers outcome=applied");
    EXPECT_THROW(parse_log_entry("t=3 node=r"), LifecycleError);
}
