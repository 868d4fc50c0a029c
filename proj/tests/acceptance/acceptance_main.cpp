// Acceptance run: one PASS/FAIL line per criterion, detail lines indented
// below it. Exit status is 0 when the failing set equals --expect-red (empty
// by default).

#include "uhelp/cli/commands.hpp"
#include "uhelp/lifecycle/machine.hpp"
#include "uhelp/ontology/similarity.hpp"
#include "uhelp/protocol/path_enumeration.hpp"
#include "uhelp/simnet/graph.hpp"
#include "uhelp/simnet/simulator.hpp"
#include "uhelp/trust/trust_model.hpp"

#include "support/fixtures.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace uhelp;
using protocol::MessageType;
using protocol::TNorm;

namespace {

struct Verdict {
    bool pass = true;
    std::vector<std::string> details;

    void note(std::string s) { details.push_back(std::move(s)); }
    void fail(std::string s)
    {
        pass = false;
        note(std::move(s));
    }
};

// ---- shared corpus

struct Link {
    int a, b;
    double ab, ba;
};

struct Case {
    int n = 0;
    std::vector<Link> links;
    double tau = 0.0;
    int hops = 1;
    double sigma = 0.0;
    simnet::DelayModel delay;
    std::uint64_t seed = 1;
};

std::string v(int i)
{
    return "v" + std::to_string(i);
}

simnet::SocialGraph graph_of(int n, const std::vector<Link>& links)
{
    simnet::SocialGraph g;
    for (int i = 0; i < n; ++i)
        g.add_node(NodeId(v(i)));
    for (const auto& l : links) {
        g.add_edge(NodeId(v(l.a)), NodeId(v(l.b)));
        g.trust.push_back(simnet::TrustSeed{NodeId(v(l.a)), NodeId(v(l.b)), l.ab, std::nullopt});
        g.trust.push_back(simnet::TrustSeed{NodeId(v(l.b)), NodeId(v(l.a)), l.ba, std::nullopt});
    }
    return g;
}

const ontology::Hierarchy& care()
{
    static const auto h = test_support::care_meronomy();
    return h;
}

const ontology::Hierarchy& kids()
{
    static const auto h = test_support::children_taxonomy();
    return h;
}

trust::Ontologies fixture_onto()
{
    return trust::Ontologies{care(), kids()};
}

simnet::Action help_action(double tau, int hops, Duration end = 400)
{
    simnet::Action a;
    a.node = NodeId("v0");
    a.kind = simnet::ActionKind::Help;
    a.request = "q";
    a.activity = "feeding";
    a.object = "baby";
    a.tau = tau;
    a.hops = hops;
    a.end = end;
    return a;
}

simnet::RunResult simulate(const Case& c, TNorm tnorm, std::vector<simnet::Action> extra = {})
{
    simnet::SimConfig cfg;
    cfg.seed = c.seed;
    cfg.delay = c.delay;
    cfg.flood.sigma = c.sigma;
    cfg.flood.tnorm = tnorm;
    simnet::Scenario sc{{help_action(c.tau, c.hops)}};
    for (auto& a : extra)
        sc.actions.push_back(std::move(a));
    return simnet::run(simnet::build_world(graph_of(c.n, c.links), fixture_onto()), sc, cfg);
}

std::vector<Case> random_corpus(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Case> out;
    for (std::size_t i = 0; i < count; ++i) {
        Case c;
        c.n = oracle::uniform_int(rng, 2, 10);
        for (const auto& [a, b] : oracle::random_connected_graph(rng, c.n, oracle::uniform(rng, 0.0, 0.6)))
            c.links.push_back({a, b, oracle::uniform(rng), oracle::uniform(rng)});
        c.tau = oracle::uniform(rng, 0.0, 0.8);
        c.hops = oracle::uniform_int(rng, 1, 6);
        c.sigma = oracle::uniform(rng, 0.0, 0.3);
        c.delay = simnet::DelayModel{static_cast<simnet::DelayKind>(oracle::uniform_int(rng, 0, 2)), 1, 1, 6};
        c.seed = rng();
        out.push_back(std::move(c));
    }
    return out;
}

// ---- 1

Verdict gate_soundness(const std::vector<Case>& corpus)
{
    Verdict v;
    std::size_t deliveries = 0, violations = 0, runs = 0;
    for (const auto& c : corpus) {
        std::map<std::pair<std::string, std::string>, double> link;
        for (const auto& l : c.links) {
            link[{::v(l.a), ::v(l.b)}] = l.ab;
            link[{::v(l.b), ::v(l.a)}] = l.ba;
        }
        for (auto t : {TNorm::Min, TNorm::Product}) {
            ++runs;
            const auto r = simulate(c, t);
            for (const auto& d : r.deliveries) {
                if (d.message.type != MessageType::Help)
                    continue;
                ++deliveries;
                // Recompute the path trust from the link table.
                double pt = 1.0;
                const auto& path = d.message.path;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    pt = protocol::apply(t, link.at({path[i].str(), path[i + 1].str()}), pt);
                pt = protocol::apply(t, link.at({path.back().str(), d.to.str()}), pt);
                const bool bad = d.message.path_trust < c.tau || pt != d.message.path_trust ||
                                 static_cast<int>(path.size()) > c.hops || d.to == NodeId("v0");
                if (bad && violations++ < 3)
                    v.note("violation: to=" + d.to.str() + " path_trust=" + std::to_string(d.message.path_trust) +
                           " hops=" + std::to_string(path.size()));
            }
        }
    }
    if (violations > 0)
        v.pass = false;
    v.note(std::to_string(runs) + " runs on " + std::to_string(corpus.size()) + " graphs, " +
           std::to_string(deliveries) + " HELP deliveries, " + std::to_string(violations) + " violations");
    return v;
}

// ---- 2

Verdict min_no_reflood(const std::vector<Case>& corpus)
{
    Verdict v;
    std::size_t with_reflood = 0;
    std::uint64_t total = 0;
    for (const auto& c : corpus) {
        const auto r = simulate(c, TNorm::Min);
        if (r.metrics.re_flood_events > 0) {
            ++with_reflood;
            total += r.metrics.re_flood_events;
        }
    }
    v.note(std::to_string(with_reflood) + " of " + std::to_string(corpus.size()) + " Min runs re-flooded (" +
           std::to_string(total) + " events)");

    // Smallest witness: A trusts B at 0.3 and C at 0.9; C trusts B at 0.9.
    // B hears A directly (0.3) before A->C->B (0.9) arrives.
    Case tri;
    tri.n = 3;
    tri.links = {{0, 1, 0.3, 0.9}, {0, 2, 0.9, 0.9}, {1, 2, 0.9, 0.9}};
    tri.tau = 0.2;
    tri.hops = 3;
    tri.sigma = 0.1;
    tri.delay = simnet::DelayModel{simnet::DelayKind::Fixed, 1, 1, 1};
    const auto r = simulate(tri, TNorm::Min);
    v.note("triangle witness (fixed delay): re_flood_events=" + std::to_string(r.metrics.re_flood_events));
    if (with_reflood > 0 || r.metrics.re_flood_events > 0)
        v.pass = false;
    return v;
}

// ---- 3

Verdict message_bound()
{
    Verdict v;
    std::size_t graphs = 0, over = 0;
    for (int n = 1; n <= 6; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                slots.emplace_back(a, b);
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            Case c;
            c.n = n;
            protocol::Adjacency adj;
            for (int i = 0; i < n; ++i)
                adj[NodeId(::v(i))];
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (mask & (1u << s)) {
                    c.links.push_back({slots[s].first, slots[s].second, 1.0, 1.0});
                    adj[NodeId(::v(slots[s].first))].insert(NodeId(::v(slots[s].second)));
                    adj[NodeId(::v(slots[s].second))].insert(NodeId(::v(slots[s].first)));
                }
            }
            // connected?
            std::set<NodeId> seen{NodeId("v0")};
            std::vector<NodeId> stack{NodeId("v0")};
            while (!stack.empty()) {
                const auto at = stack.back();
                stack.pop_back();
                for (const auto& f : adj[at])
                    if (seen.insert(f).second)
                        stack.push_back(f);
            }
            if (static_cast<int>(seen.size()) != n)
                continue;
            ++graphs;
            c.tau = 0.0;
            c.hops = n;  // longer than any loop-free path
            c.sigma = 0.0;
            c.delay = simnet::DelayModel{simnet::DelayKind::Fixed, 1, 1, 1};
            const auto helps = simulate(c, TNorm::Product).metrics.messages(MessageType::Help);
            const auto bound = protocol::count_worst_case_messages(adj, NodeId("v0"));
            if (helps > bound && over++ < 3)
                v.note("over bound: n=" + std::to_string(n) + " mask=" + std::to_string(mask));
        }
    }
    v.note("bound: " + std::to_string(graphs) + " connected labelled graphs (n<=6), " + std::to_string(over) +
           " exceed the loop-free path sum");
    if (over > 0)
        v.pass = false;

    for (int n : {3, 4}) {
        Case c;
        c.n = n;
        protocol::Adjacency adj;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) {
                    adj[NodeId(::v(a))].insert(NodeId(::v(b)));
                    if (a < b)
                        c.links.push_back({a, b, 1.0, 1.0});
                }
        c.tau = 0.0;
        c.hops = n;
        c.sigma = 0.0;
        for (auto kind : {simnet::DelayKind::Zero, simnet::DelayKind::Fixed}) {
            c.delay = simnet::DelayModel{kind, 1, 1, 1};
            const auto helps = simulate(c, TNorm::Product).metrics.messages(MessageType::Help);
            const auto oracle_count = protocol::count_worst_case_messages(adj, NodeId("v0"));
            const bool eq = helps == oracle_count;
            const std::string line = "equality K" + std::to_string(n) + " (" +
                                     std::string(simnet::to_string(kind)) + " delay): " + std::to_string(helps) +
                                     " HELP vs " + std::to_string(oracle_count) + " from enumeration";
            if (eq)
                v.note(line);
            else
                v.fail(line);
        }
    }
    return v;
}

// ---- 4

struct Features {
    double l, h, d, sim;
};

void similarity_properties(const ontology::Hierarchy& h, const std::string& name, Verdict& v, std::size_t& checks)
{
    const ontology::SimilarityParams p;
    std::vector<Features> fs;
    for (std::uint32_t a = 0; a < h.size(); ++a) {
        for (std::uint32_t b = 0; b < h.size(); ++b) {
            const ConceptId ca{a}, cb{b};
            const double s = ontology::semantic_similarity(h, ca, cb, p);
            const double back = ontology::semantic_similarity(h, cb, ca, p);
            ++checks;
            if (std::fabs(s - back) > 1e-12)
                v.fail(name + ": asymmetric at " + h.label(ca) + ", " + h.label(cb));
            if (!(s >= 0.0 && s < 1.0))
                v.fail(name + ": out of range at " + h.label(ca) + ", " + h.label(cb));
            const auto sub = ontology::most_specific_subsumer(h, ca, cb);
            fs.push_back({static_cast<double>(ontology::path_distance(h, ca, cb)),
                          static_cast<double>(ontology::depth(h, sub)), ontology::information_content(h, sub), s});
        }
    }
    if (ontology::semantic_similarity(h, h.root(), h.root(), p) != 0.0)
        v.fail(name + ": sim(root, root) != 0");
    // Pairwise dominance: closer, deeper and denser never scores lower.
    for (const auto& x : fs) {
        for (const auto& y : fs) {
            if (x.l <= y.l && x.h >= y.h && x.d >= y.d - 1e-15) {
                ++checks;
                if (x.sim < y.sim - 1e-12) {
                    v.fail(name + ": monotonicity broken");
                    return;
                }
            }
        }
    }
}

Verdict similarity_suite()
{
    Verdict v;
    std::size_t checks = 0;
    similarity_properties(kids(), "taxonomy fixture", v, checks);
    similarity_properties(care(), "meronomy fixture", v, checks);
    std::mt19937_64 rng(404);
    for (int i = 0; i < 100; ++i) {
        const auto h = ontology::Hierarchy::from_edges(ontology::HierarchyKind::Taxonomy, "n0",
                                                       oracle::random_tree(rng, oracle::uniform_int(rng, 1, 25)));
        similarity_properties(h, "random tree " + std::to_string(i), v, checks);
    }
    v.note("2 fixtures + 100 random trees, " + std::to_string(checks) + " checks");
    return v;
}

// ---- 5

struct Onto {
    ontology::Hierarchy m, t;
    oracle::Tree om, ot;
};

Onto random_onto(std::mt19937_64& rng, bool fixtures)
{
    if (fixtures)
        return Onto{care(), kids(), oracle::Tree::from_edges(care().label(care().root()), care().edges()),
                    oracle::Tree::from_edges(kids().label(kids().root()), kids().edges())};
    const auto me = oracle::random_tree(rng, oracle::uniform_int(rng, 1, 12), "a");
    const auto te = oracle::random_tree(rng, oracle::uniform_int(rng, 1, 12), "o");
    return Onto{ontology::Hierarchy::from_edges(ontology::HierarchyKind::Meronomy, "a0", me),
                ontology::Hierarchy::from_edges(ontology::HierarchyKind::Taxonomy, "o0", te),
                oracle::Tree::from_edges("a0", me), oracle::Tree::from_edges("o0", te)};
}

Verdict trust_equivalence()
{
    Verdict v;
    std::mt19937_64 rng(505);
    const std::vector<std::string> people{"R", "U1", "U2", "U3", "V1", "V2"};
    std::size_t compared = 0, own_only = 0;
    double worst = 0.0;
    for (int ledger_no = 0; ledger_no < 150; ++ledger_no) {
        const Onto o = random_onto(rng, ledger_no % 3 == 0);
        const trust::Ontologies onto{o.m, o.t};
        trust::TrustParams tp;
        tp.object_weight = oracle::uniform(rng);
        tp.sharing_policy = trust::SharingPolicy::ManualList;
        ontology::SimilarityParams sp;
        sp.cutoff = oracle::uniform(rng, 0.0, 0.4);

        trust::RatingLedger own(NodeId("R")), all(NodeId("R"));
        std::vector<oracle::R> rs_own, rs_all;
        const int n = oracle::uniform_int(rng, 0, 20);
        for (int i = 0; i < n; ++i) {
            oracle::R r{people[oracle::uniform_int(rng, 0, 3)], people[oracle::uniform_int(rng, 4, 5)],
                        o.om.labels[oracle::uniform_int(rng, 0, static_cast<int>(o.om.labels.size()) - 1)],
                        o.ot.labels[oracle::uniform_int(rng, 0, static_cast<int>(o.ot.labels.size()) - 1)],
                        oracle::uniform_int(rng, 1, 7), oracle::uniform_int(rng, 0, 30)};
            const trust::Rating lib{NodeId(r.requester), NodeId(r.volunteer), o.m.id(r.activity), o.t.id(r.object),
                                    r.value, r.time, std::nullopt};
            all.add_shared(lib);
            rs_all.push_back(r);
            if (r.requester == "R") {
                own.add_shared(lib);
                rs_own.push_back(r);
            }
        }
        for (const auto& vol : {"V1", "V2"}) {
            for (int q = 0; q < 3; ++q) {
                const auto& act = o.om.labels[oracle::uniform_int(rng, 0, static_cast<int>(o.om.labels.size()) - 1)];
                const auto& obj = o.ot.labels[oracle::uniform_int(rng, 0, static_cast<int>(o.ot.labels.size()) - 1)];
                const Timestamp t = oracle::uniform_int(rng, 0, 30);
                const trust::Task task{o.m.id(act), o.t.id(obj), {}};
                const NodeId R("R"), V(vol);

                auto cmp = [&](const char* what, std::optional<double> got, std::optional<double> want) {
                    ++compared;
                    if (got.has_value() != want.has_value()) {
                        v.fail(std::string(what) + ": presence differs");
                        return;
                    }
                    if (got) {
                        worst = std::max(worst, std::fabs(*got - *want));
                        if (std::fabs(*got - *want) > 1e-9)
                            v.fail(std::string(what) + ": " + std::to_string(*got) + " vs " + std::to_string(*want));
                    }
                };
                cmp("object trust", trust::trust_obj(all, R, V, task.object, t, o.t, sp),
                    oracle::trust_obj(rs_all, "R", vol, obj, t, o.ot, sp));
                cmp("activity trust", trust::trust_act(all, R, V, task.activity, t, o.m),
                    oracle::trust_act(rs_all, "R", vol, act, t, o.om));
                const double plain = trust::trust(all, R, V, task, t, onto, tp, sp);
                cmp("trust", plain, oracle::trust(rs_all, "R", vol, act, obj, t, o.om, o.ot, tp, sp));
                cmp("shared trust", trust::trust_shared(all, R, V, task, t, onto, tp, sp),
                    oracle::trust_shared(rs_all, "R", vol, act, obj, t, o.om, o.ot, tp, sp));

                ++own_only;
                const double shared_own = trust::trust_shared(own, R, V, task, t, onto, tp, sp);
                const double plain_own = trust::trust(own, R, V, task, t, onto, tp, sp);
                if (shared_own != plain_own)
                    v.fail("shared trust with raters {R} differs from trust: " + std::to_string(shared_own) +
                           " vs " + std::to_string(plain_own));
            }
        }
    }
    std::ostringstream os;
    os << "150 random ledgers, " << compared << " comparisons, max |diff| " << worst << "; " << own_only
       << " own-rating cases compared exactly";
    v.note(os.str());
    return v;
}

// ---- 6

Verdict meronomy_propagation()
{
    Verdict v;
    std::mt19937_64 rng(606);
    std::size_t direct_checks = 0;
    for (int i = 0; i < 100; ++i) {
        const auto edges = oracle::random_tree(rng, oracle::uniform_int(rng, 1, 30), "a");
        const auto m = ontology::Hierarchy::from_edges(ontology::HierarchyKind::Meronomy, "a0", edges);
        std::map<ConceptId, double> direct;
        for (std::uint32_t c = 0; c < m.size(); ++c)
            if (oracle::uniform(rng) < 0.3)
                direct[ConceptId{c}] = oracle::uniform(rng);
        const auto once = trust::propagate_meronomy(m, direct);
        if (trust::propagate_meronomy(m, once) != once)
            v.fail("not idempotent on random meronomy " + std::to_string(i));
        for (const auto& [c, x] : direct) {
            ++direct_checks;
            if (once.at(c) != x)
                v.fail("direct value overridden at " + m.label(c));
        }
        if (!direct.empty() && once.size() != m.size())
            v.fail("not every node valued on random meronomy " + std::to_string(i));
        const double root_value = oracle::uniform(rng);
        for (const auto& [c, x] : trust::propagate_meronomy(m, {{m.root(), root_value}}))
            if (x != root_value)
                v.fail("root-only value changed at " + m.label(c));
    }
    v.note("100 random meronomies, " + std::to_string(direct_checks) + " direct values checked");
    return v;
}

// ---- 7

Verdict state_machines()
{
    using namespace lifecycle;
    Verdict v;
    const auto report = golden::check_lifecycle_table(test_support::fixture("lifecycle_golden.tsv"));
    for (std::size_t i = 0; i < std::min<std::size_t>(report.mismatches.size(), 5); ++i)
        v.fail("golden: " + report.mismatches[i]);
    if (!report.mismatches.empty())
        v.note(std::to_string(report.mismatches.size()) + " golden rows differ");
    v.note("golden table: " + std::to_string(report.rows) + " rows");

    // Random infinite-style schedules: every event kind, random actors, a
    // rising clock whose deadline events are fired as it passes them. Each
    // schedule runs until the record is terminal, capped far above need.
    std::mt19937_64 rng(707);
    const Deadlines dl = make_deadlines(100, 200, 150);
    const std::vector<NodeId> people{NodeId("r"), NodeId("e"), NodeId("v1"), NodeId("v2")};
    std::size_t stuck = 0, steps_total = 0;
    for (int s = 0; s < 1000; ++s) {
        const bool req = s % 2 == 0;
        RequestRecord rec = req ? open_request(TaskId{1}, NodeId("r"), dl).record
                                : receive_help(TaskId{1}, NodeId("e"), NodeId("r"), dl).record;
        Timestamp clock = 0;
        int step = 0;
        for (; step < 100000 && !is_terminal(rec.state); ++step) {
            clock += oracle::uniform_int(rng, 0, 3);
            for (const auto& ev : fire_deadlines(rec, clock))
                rec = transition(rec, ev, clock).record;
            if (is_terminal(rec.state))
                break;
            LifecycleEvent ev{kAllEvents[oracle::uniform_int(rng, 0, static_cast<int>(std::size(kAllEvents)) - 1)],
                              people[oracle::uniform_int(rng, 0, 3)], TaskId{1}, std::nullopt, std::nullopt};
            if (oracle::uniform(rng) < 0.8)
                ev.target = people[oracle::uniform_int(rng, 0, 3)];
            if (ev.kind == EventKind::Click_Rate)
                ev.rating = oracle::uniform_int(rng, 1, 7);
            rec = transition(rec, ev, clock).record;
        }
        steps_total += static_cast<std::size_t>(step);
        if (!is_terminal(rec.state))
            ++stuck;
    }
    v.note("1000 random schedules, " + std::to_string(stuck) + " never terminated, " + std::to_string(steps_total) +
           " events in total");
    if (stuck > 0)
        v.pass = false;

    // Duplicate protocol messages at terminal states are absorbed untouched.
    std::size_t absorbed = 0;
    auto probe = [&](Role role, const State& st) {
        const auto rec = golden::canonical_record(role, st);
        for (auto k : kAllEvents) {
            const auto name = to_string(k);
            if (!name.starts_with("Msg_"))
                continue;
            for (const auto& who : people) {
                const LifecycleEvent ev{k, who, TaskId{1}, NodeId("v9"), std::nullopt};
                const auto t = transition(rec, ev, 120);
                static const std::set<std::string_view> requester_msgs{"Msg_Volunteer", "Msg_Done", "Msg_Cancel",
                                                                        "Msg_Chat"};
                static const std::set<std::string_view> requestee_msgs{"Msg_Help", "Msg_Assigned", "Msg_NotNeeded",
                                                                        "Msg_Cancelled", "Msg_Chat"};
                const bool own_role = (role == Role::Requester ? requester_msgs : requestee_msgs).contains(name);
                if (!own_role)
                    continue;
                ++absorbed;
                if (t.outcome != Outcome::Absorbed || t.record != rec || !t.effects.empty())
                    v.fail("terminal " + std::string(to_string(st)) + " did not absorb " + std::string(name));
            }
        }
    };
    for (auto st : kRequesterStates)
        if (is_terminal(st))
            probe(Role::Requester, st);
    for (auto st : kRequesteeStates)
        if (is_terminal(st))
            probe(Role::Requestee, st);
    v.note(std::to_string(absorbed) + " duplicate messages at terminal states checked");
    return v;
}

// ---- 8

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Verdict determinism()
{
    Verdict v;
    const auto base = std::filesystem::temp_directory_path() / "uhelp_acceptance_determinism";
    std::filesystem::remove_all(base);
    const std::vector<std::string> files{"metrics.csv", "metrics.jsonl", "trace.log", "transitions.log", "trust.csv"};
    std::map<std::string, std::string> first;
    for (int i = 0; i < 10; ++i) {
        cli::Options opt;
        opt.manifest = test_support::fixture("demo_manifest.json");
        opt.out = base / std::to_string(i);
        std::ostringstream out, err;
        if (cli::cmd_run(opt, out, err) != cli::kExitOk) {
            v.fail("run " + std::to_string(i) + " failed: " + err.str());
            break;
        }
        for (const auto& f : files) {
            const auto bytes = slurp(*opt.out / f);
            if (i == 0)
                first[f] = bytes;
            else if (bytes != first[f])
                v.fail("run " + std::to_string(i) + ": " + f + " differs");
        }
    }
    std::filesystem::remove_all(base);
    v.note("10 runs of the demo manifest, " + std::to_string(files.size()) + " output files compared byte for byte");
    return v;
}

// ---- 9

Verdict broadcast_reach()
{
    Verdict v;
    std::mt19937_64 rng(909);
    std::map<simnet::DelayKind, std::pair<std::size_t, std::size_t>> tally;  // runs, mismatches
    std::optional<std::string> example;
    for (int i = 0; i < 300; ++i) {
        Case c;
        c.n = oracle::uniform_int(rng, 2, 8);
        const double trust = oracle::uniform(rng, 0.3, 1.0);
        for (const auto& [a, b] : oracle::random_connected_graph(rng, c.n, oracle::uniform(rng, 0.0, 0.6)))
            c.links.push_back({a, b, trust, trust});
        c.tau = oracle::uniform(rng, 0.0, trust);
        c.hops = oracle::uniform_int(rng, 1, 6);
        c.sigma = oracle::uniform(rng, 0.0, 0.2);
        c.seed = rng();
        const auto kind = static_cast<simnet::DelayKind>(i % 3);
        c.delay = simnet::DelayModel{kind, 1, 1, 6};
        const auto tnorm = i % 2 ? TNorm::Min : TNorm::Product;

        for (const bool assign : {false, true}) {
            // Both floods must fit before the response deadline (300 for an
            // end date of 400), so act at 100.
            std::vector<simnet::Action> extra;
            const auto helped = simulate(c, tnorm).notified;
            const auto reached = helped.contains("q") && helped.at("q").contains(MessageType::Help)
                                     ? helped.at("q").at(MessageType::Help)
                                     : std::set<NodeId>{};
            simnet::Action act;
            act.time = 100;
            act.node = NodeId("v0");
            act.request = "q";
            if (assign && !reached.empty()) {
                simnet::Action accept;
                accept.time = 50;
                accept.node = *reached.begin();
                accept.kind = simnet::ActionKind::Accept;
                accept.request = "q";
                extra.push_back(accept);
                act.kind = simnet::ActionKind::Assign;
                act.volunteer = *reached.begin();
            } else {
                act.kind = simnet::ActionKind::Cancel;
            }
            extra.push_back(act);
            const auto type = act.kind == simnet::ActionKind::Assign ? MessageType::NotNeeded : MessageType::Cancelled;
            const auto r = simulate(c, tnorm, extra);
            std::set<NodeId> help, second;
            if (r.notified.contains("q")) {
                const auto& q = r.notified.at("q");
                if (q.contains(MessageType::Help))
                    help = q.at(MessageType::Help);
                if (q.contains(type))
                    second = q.at(type);
            }
            auto& [runs, bad] = tally[kind];
            ++runs;
            if (help != second) {
                ++bad;
                if (!example) {
                    std::ostringstream os;
                    os << "first mismatch: " << simnet::to_string(kind) << " delay, n=" << c.n
                       << ", hops=" << c.hops << ", " << protocol::to_string(tnorm) << ", "
                       << protocol::to_string(type) << ": HELP reached " << help.size() << ", second flood reached "
                       << second.size();
                    example = os.str();
                }
            }
        }
    }
    // Targeted witness under random delays: A-B-C triangle with C-D, hops 2.
    // When A->B->C beats A->C, C is reached at its hop limit and the later
    // direct copy brings no gain, so HELP never gets past C; CANCELLED
    // re-floods on every receipt and does reach D.
    {
        Case d;
        d.n = 4;
        d.links = {{0, 1, 0.9, 0.9}, {1, 2, 0.9, 0.9}, {0, 2, 0.9, 0.9}, {2, 3, 0.9, 0.9}};
        d.tau = 0.5;
        d.hops = 2;
        d.sigma = 0.0;
        d.delay = simnet::DelayModel{simnet::DelayKind::Uniform, 1, 1, 6};
        simnet::Action cancel;
        cancel.time = 100;
        cancel.node = NodeId("v0");
        cancel.kind = simnet::ActionKind::Cancel;
        cancel.request = "q";
        std::size_t tried = 0, differ = 0;
        std::optional<std::uint64_t> witness;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            d.seed = seed;
            const auto r = simulate(d, TNorm::Min, {cancel});
            const auto& q = r.notified.at("q");
            const auto help = q.contains(MessageType::Help) ? q.at(MessageType::Help) : std::set<NodeId>{};
            const auto second = q.contains(MessageType::Cancelled) ? q.at(MessageType::Cancelled) : std::set<NodeId>{};
            ++tried;
            tally[simnet::DelayKind::Uniform].first++;
            if (help != second) {
                ++differ;
                tally[simnet::DelayKind::Uniform].second++;
                if (!witness)
                    witness = seed;
            }
        }
        v.note("triangle-with-tail witness, uniform delay 1..6: " + std::to_string(differ) + " of " + std::to_string(tried) +
               " seeds differ" + (witness ? " (first seed " + std::to_string(*witness) + ")" : std::string()));
    }

    for (const auto& [kind, counts] : tally) {
        const std::string line = std::string(simnet::to_string(kind)) + " delay: " + std::to_string(counts.second) +
                                 " of " + std::to_string(counts.first) + " runs with unequal sets";
        if (counts.second > 0)
            v.fail(line);
        else
            v.note(line);
    }
    if (example)
        v.note(*example);
    return v;
}

std::set<std::string> parse_list(const std::string& text)
{
    std::set<std::string> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty())
            out.insert(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"uhelp acceptance criteria"};
    std::string expect_red;
    app.add_option("--expect-red", expect_red, "comma-separated criteria known to fail");
    CLI11_PARSE(app, argc, argv);

    const auto corpus = random_corpus(250, 2024);
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"flooding gate soundness", [&] { return gate_soundness(corpus); }},
        {"Min t-norm never re-floods", [&] { return min_no_reflood(corpus); }},
        {"worst-case HELP message bound", message_bound},
        {"similarity properties", similarity_suite},
        {"trust matches reference implementation", trust_equivalence},
        {"meronomy propagation", meronomy_propagation},
        {"state-machine conformance", state_machines},
        {"end-to-end determinism", determinism},
        {"NOTNEEDED/CANCELLED reach equals HELP reach", broadcast_reach},
    };

    std::set<std::string> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto id = std::to_string(i + 1);
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("threw: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << id << "  " << criteria[i].first << "  (" << ms.count()
                  << " ms)\n";
        for (const auto& d : v.details)
            std::cout << "        " << d << '\n';
        if (!v.pass)
            failed.insert(id);
    }

    const auto expected = parse_list(expect_red);
    std::cout << failed.size() << " of " << criteria.size() << " criteria failed";
    if (!expect_red.empty())
        std::cout << " (expected to fail: " << expect_red << ")";
    std::cout << '\n';
    return failed == expected ? 0 : 1;
}
