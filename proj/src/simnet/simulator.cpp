#include "uhelp/simnet/simulator.hpp"

#include "uhelp/trust/ledger_io.hpp"

#include <queue>
#include <random>
#include <sstream>
#include <variant>

namespace uhelp::simnet {

using lifecycle::EventKind;
using lifecycle::LifecycleEvent;
using lifecycle::Outcome;
using lifecycle::RequestRecord;
using protocol::MessageType;

std::string_view to_string(DelayKind k) noexcept
{
    switch (k) {
    case DelayKind::Zero: return "zero";
    case DelayKind::Fixed: return "fixed";
    case DelayKind::Uniform: return "uniform";
    }
    return "?";
}

DelayKind delay_kind_from_string(std::string_view text)
{
    for (auto k : {DelayKind::Zero, DelayKind::Fixed, DelayKind::Uniform})
        if (to_string(k) == text)
            return k;
    throw SimError("unknown delay model '" + std::string(text) + "'");
}

void DelayModel::validate() const
{
    if (kind == DelayKind::Fixed && fixed < 0)
        throw SimError("fixed delay must be non-negative");
    if (kind == DelayKind::Uniform && !(0 <= lo && lo <= hi))
        throw SimError("uniform delay needs 0 <= lo <= hi");
}

std::uint64_t Metrics::messages(MessageType t) const
{
    auto it = messages_by_type.find(t);
    return it == messages_by_type.end() ? 0 : it->second;
}

void validate_scenario(const Scenario& sc, const World& world)
{
    for (const auto& a : sc.actions) {
        if (!world.nodes.contains(a.node))
            throw ScenarioError("action names unknown node '" + a.node.str() + "'");
        if (a.volunteer && !world.nodes.contains(*a.volunteer))
            throw ScenarioError("assign names unknown node '" + a.volunteer->str() + "'");
        if (a.with && !world.nodes.contains(*a.with))
            throw ScenarioError("chat names unknown node '" + a.with->str() + "'");
        if (a.kind == ActionKind::Help) {
            if (!world.onto.activities.find(a.activity))
                throw ScenarioError("unknown activity '" + a.activity + "'");
            if (!world.onto.objects.find(a.object))
                throw ScenarioError("unknown object '" + a.object + "'");
        }
    }
}

namespace {

struct ActionEv {
    std::size_t index;
};

struct FloodEv {
    NodeId from;
    NodeId to;
    protocol::FloodMessage msg;
    Timestamp sent;
};

struct DirectEv {
    NodeId from;
    NodeId to;
    EventKind kind;
    TaskId task;
    std::optional<NodeId> target;
};

struct DeadlineEv {
    NodeId node;
    TaskId task;
};

struct QueueItem {
    Timestamp time;
    std::uint64_t seq;
    std::variant<ActionEv, FloodEv, DirectEv, DeadlineEv> what;
};

struct Later {
    bool operator()(const QueueItem& a, const QueueItem& b) const
    {
        return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
};

std::optional<EventKind> direct_kind(lifecycle::EffectKind k)
{
    using lifecycle::EffectKind;
    switch (k) {
    case EffectKind::SendVolunteer: return EventKind::Msg_Volunteer;
    case EffectKind::SendAssigned: return EventKind::Msg_Assigned;
    case EffectKind::SendNotNeeded: return EventKind::Msg_NotNeeded;
    case EffectKind::SendCancelled: return EventKind::Msg_Cancelled;
    case EffectKind::SendCancel: return EventKind::Msg_Cancel;
    case EffectKind::SendDone: return EventKind::Msg_Done;
    default: return std::nullopt;
    }
}

EventKind click_for(ActionKind k)
{
    switch (k) {
    case ActionKind::Accept: return EventKind::Click_Accept;
    case ActionKind::Decline: return EventKind::Click_Decline;
    case ActionKind::Assign: return EventKind::Click_Assign;
    case ActionKind::Done: return EventKind::Click_Done;
    case ActionKind::Rate: return EventKind::Click_Rate;
    case ActionKind::Cancel: return EventKind::Click_Cancel;
    case ActionKind::Chat: return EventKind::Click_Chat;
    case ActionKind::Call: return EventKind::Click_Call;
    case ActionKind::Help: break;
    }
    return EventKind::Click_Help;
}

std::string census_key(const RequestRecord& rec)
{
    return std::string(to_string(rec.role)) + ":" + std::string(to_string(rec.state));
}

class Engine {
public:
    Engine(World world, const Scenario& sc, const SimConfig& cfg)
        : world_(std::move(world)), sc_(sc), cfg_(cfg), rng_(cfg.seed), next_task_(cfg.first_task_id)
    {
    }

    RunResult run()
    {
        cfg_.delay.validate();
        cfg_.flood.validate();
        cfg_.trust.validate();
        cfg_.similarity.validate();
        validate_scenario(sc_, world_);

        for (std::size_t i = 0; i < sc_.actions.size(); ++i)
            push(cfg_.clock_start + sc_.actions[i].time, ActionEv{i});

        const Timestamp limit = cfg_.clock_start + cfg_.horizon;
        while (!queue_.empty()) {
            if (queue_.top().time > limit) {
                drain_past_horizon();
                break;
            }
            QueueItem item = queue_.top();
            queue_.pop();
            now_ = item.time;
            std::visit([&](auto& ev) { handle(item.seq, ev); }, item.what);
        }
        finish();
        return std::move(out_);
    }

private:
    void push(Timestamp t, decltype(QueueItem::what) what)
    {
        queue_.push(QueueItem{t, seq_++, std::move(what)});
    }

    Duration delay()
    {
        switch (cfg_.delay.kind) {
        case DelayKind::Zero: return 0;
        case DelayKind::Fixed: return cfg_.delay.fixed;
        case DelayKind::Uniform: {
            const auto span = static_cast<std::uint64_t>(cfg_.delay.hi - cfg_.delay.lo) + 1;
            return cfg_.delay.lo + static_cast<Duration>(rng_() % span);
        }
        }
        return 0;
    }

    void trace(const std::string& line) { out_.trace.push_back("t=" + std::to_string(now_) + " " + line); }

    std::optional<double> link_trust(const NodeId& from, const NodeId& to, const trust::Task& task, Timestamp t)
    {
        return trust::trust_for_policy(world_.ledgers.at(from), from, to, task, t, world_.onto, cfg_.trust,
                                       cfg_.similarity);
    }

    protocol::TrustFn trust_fn()
    {
        return [this](const NodeId& f, const NodeId& t, const trust::Task& task, Timestamp at) {
            return link_trust(f, t, task, at);
        };
    }

    const std::string& label_of(TaskId id) const { return labels_.at(id); }

    // ---- flood traffic

    void emit(const NodeId& at, const protocol::FloodEffects& fx)
    {
        for (const auto& o : fx.sends) {
            const std::uint64_t id = seq_;
            ++out_.metrics.messages_by_type[o.message.type];
            std::ostringstream os;
            os << "send id=" << id << " type=" << to_string(o.message.type) << " task=" << o.message.request.id.value
               << " from=" << at.str() << " to=" << o.to.str()
               << " pathtrust=" << trust::format_double(o.message.path_trust) << " path=" << o.message.path.size();
            trace(os.str());
            push(now_ + delay(), FloodEv{at, o.to, o.message, now_});
        }
        if (fx.notification)
            notify(at, *fx.notification);
    }

    void handle(std::uint64_t id, FloodEv& ev)
    {
        auto& node = world_.nodes.at(ev.to);
        const auto fx = node.propagate(ev.msg, now_, cfg_.flood, trust_fn());
        out_.deliveries.push_back(Delivery{id, ev.sent, now_, ev.from, ev.to, ev.msg, fx.dropped});
        std::ostringstream os;
        os << "recv id=" << id << " type=" << to_string(ev.msg.type) << " task=" << ev.msg.request.id.value
           << " to=" << ev.to.str();
        if (fx.dropped) {
            ++out_.metrics.dropped;
            os << " outcome=dropped reason=" << *fx.dropped;
        } else {
            os << " outcome=accepted";
        }
        trace(os.str());
        if (fx.reflooded) {
            ++out_.metrics.re_flood_events;
            trace("reflood node=" + ev.to.str() + " task=" + std::to_string(ev.msg.request.id.value));
        }
        emit(ev.to, fx);
    }

    void notify(const NodeId& node, const protocol::Notification& n)
    {
        const TaskId task = n.request.id;
        out_.notified[label_of(task)][n.type].insert(node);
        trace("notify node=" + node.str() + " type=" + std::string(to_string(n.type)) +
              " task=" + std::to_string(task.value));

        const auto key = std::pair{node, task};
        if (n.type == MessageType::Help) {
            if (!out_.records.contains(key)) {
                const auto deadlines = lifecycle::make_deadlines(n.deadline, n.request.end_date);
                auto t = lifecycle::receive_help(task, node, n.requester, deadlines);
                out_.records.emplace(key, t.record);
                log(std::nullopt, t, EventKind::Msg_Help);
                schedule_deadlines(node, task, deadlines);
            } else {
                apply(node, task, LifecycleEvent{EventKind::Msg_Help, n.requester, task, {}, {}});
            }
            return;
        }
        if (!out_.records.contains(key)) {
            trace("ignore node=" + node.str() + " task=" + std::to_string(task.value) + " reason=no-record");
            return;
        }
        const EventKind kind = n.type == MessageType::NotNeeded ? EventKind::Msg_NotNeeded : EventKind::Msg_Cancelled;
        apply(node, task, LifecycleEvent{kind, n.requester, task, n.chosen, {}});
    }

    // ---- lifecycle

    void schedule_deadlines(const NodeId& node, TaskId task, const lifecycle::Deadlines& d)
    {
        for (Timestamp t : {d.volunteer_by, d.assign_by, d.end_date})
            push(t, DeadlineEv{node, task});
    }

    void log(const std::optional<lifecycle::State>& from, const lifecycle::Transition& t, EventKind ev)
    {
        out_.log.record(now_, from, t, ev);
        // The log line starts with its own t= field; keep the trace's.
        const std::string line = lifecycle::format_log_entry(out_.log.entries().back());
        trace("lifecycle " + line.substr(line.find(' ') + 1));
    }

    void apply(const NodeId& node, TaskId task, const LifecycleEvent& ev)
    {
        RequestRecord& rec = out_.records.at({node, task});
        const auto from = rec.state;
        const std::size_t volunteers_before = rec.volunteers.size();
        auto t = lifecycle::transition(rec, ev, now_);
        rec = t.record;
        log(from, t, ev.kind);
        if (t.outcome == Outcome::Rejected)
            ++out_.metrics.rejected_events;

        if (ev.kind == EventKind::Msg_Volunteer && rec.volunteers.size() > volunteers_before) {
            ++out_.metrics.volunteers_count;
            auto& latency = out_.metrics.first_volunteer_latency[label_of(task)];
            if (!latency)
                latency = now_ - asked_at_.at(task);
        }
        effects(node, rec, t.effects);
    }

    void effects(const NodeId& node, const RequestRecord& rec, const std::vector<lifecycle::Effect>& fxs)
    {
        using lifecycle::EffectKind;
        for (const auto& fx : fxs) {
            if (fx.kind == EffectKind::FloodNotNeeded || fx.kind == EffectKind::FloodCancelled) {
                const auto type = fx.kind == EffectKind::FloodNotNeeded ? MessageType::NotNeeded : MessageType::Cancelled;
                emit(node, world_.nodes.at(node).initiate_broadcast(rec.task, type, now_, cfg_.flood, trust_fn(),
                                                                    fx.chosen));
            } else if (fx.kind == EffectKind::RecordRating) {
                record_rating(node, rec, *fx.rating);
            } else if (auto kind = direct_kind(fx.kind)) {
                send_direct(node, *fx.to, *kind, rec.task, fx.chosen);
            }
        }
    }

    void send_direct(const NodeId& from, const NodeId& to, EventKind kind, TaskId task, std::optional<NodeId> target)
    {
        const std::uint64_t id = seq_;
        ++out_.metrics.direct_messages;
        trace("direct id=" + std::to_string(id) + " event=" + std::string(to_string(kind)) +
              " task=" + std::to_string(task.value) + " from=" + from.str() + " to=" + to.str());
        push(now_ + delay(), DirectEv{from, to, kind, task, std::move(target)});
    }

    void handle(std::uint64_t id, DirectEv& ev)
    {
        const bool known = out_.records.contains({ev.to, ev.task});
        trace("drecv id=" + std::to_string(id) + " to=" + ev.to.str() +
              " outcome=" + (known ? "accepted" : "no-record"));
        if (known)
            apply(ev.to, ev.task, LifecycleEvent{ev.kind, ev.from, ev.task, ev.target, {}});
    }

    void handle(std::uint64_t, DeadlineEv& ev)
    {
        RequestRecord& rec = out_.records.at({ev.node, ev.task});
        for (const auto& d : lifecycle::fire_deadlines(rec, now_))
            apply(ev.node, ev.task, d);
    }

    void record_rating(const NodeId& node, const RequestRecord& rec, int value)
    {
        const auto& req = requests_.at(rec.task);
        trust::Rating r{node, *rec.chosen, req.task.activity, req.task.object, value, now_, rec.task};
        try {
            world_.ledgers.at(node).record_rating(r);
        } catch (const trust::RatingError& e) {
            trace("rating node=" + node.str() + " outcome=refused reason=" + std::string(e.what()));
            return;
        }
        ++out_.metrics.ratings_recorded;
        trace("rating node=" + node.str() + " volunteer=" + rec.chosen->str() + " value=" + std::to_string(value) +
              " task=" + std::to_string(rec.task.value));
        if (cfg_.trust.sharing_policy != trust::SharingPolicy::None) {
            trust::SharingConfig sc = cfg_.sharing;
            sc.now = now_;
            const auto added = trust::share_ratings(world_.ledgers, cfg_.trust.sharing_policy, sc, world_.onto,
                                                    cfg_.trust, cfg_.similarity);
            trace("share added=" + std::to_string(added));
        }
    }

    // ---- scripted actions

    void handle(std::uint64_t, ActionEv& ev)
    {
        const Action& a = sc_.actions[ev.index];
        const std::string head =
            "action node=" + a.node.str() + " action=" + std::string(to_string(a.kind)) + " request=" + a.request;
        if (a.kind == ActionKind::Help) {
            help(a, head);
            return;
        }
        auto id = ids_.find(a.request);
        if (id == ids_.end()) {
            trace(head + " outcome=unknown-request");
            ++out_.metrics.rejected_events;
            return;
        }
        const TaskId task = id->second;
        if (!out_.records.contains({a.node, task})) {
            trace(head + " outcome=no-record");
            ++out_.metrics.rejected_events;
            return;
        }
        trace(head);
        LifecycleEvent lev{click_for(a.kind), a.node, task, a.volunteer, a.rating};
        apply(a.node, task, lev);

        if ((a.kind == ActionKind::Chat) && out_.log.entries().back().outcome == Outcome::Applied) {
            const RequestRecord& rec = out_.records.at({a.node, task});
            std::optional<NodeId> peer = a.with;
            if (!peer)
                peer = rec.role == lifecycle::Role::Requestee
                           ? std::optional{rec.requester}
                           : (rec.chosen ? rec.chosen
                                         : (rec.volunteers.empty() ? std::nullopt
                                                                   : std::optional{*rec.volunteers.begin()}));
            if (peer)
                send_direct(a.node, *peer, EventKind::Msg_Chat, task, std::nullopt);
        }
    }

    void help(const Action& a, const std::string& head)
    {
        const TaskId task{next_task_++};
        const Timestamp end_date = now_ + a.end;
        protocol::RequestRef req{task,
                                 trust::Task{world_.onto.activities.id(a.activity), world_.onto.objects.id(a.object),
                                             a.description},
                                 end_date};
        const double tau = cfg_.tau_override.value_or(a.tau);
        const int hops = cfg_.hops_override.value_or(a.hops);

        protocol::FloodEffects fx;
        try {
            fx = world_.nodes.at(a.node).initiate_request(req, tau, hops, now_, cfg_.flood, trust_fn());
        } catch (const protocol::ProtocolError& e) {
            trace(head + " outcome=refused reason=" + std::string(e.what()));
            ++out_.metrics.rejected_events;
            return;
        }
        ids_[a.request] = task;
        labels_[task] = a.request;
        requests_[task] = req;
        asked_at_[task] = now_;
        out_.request_ids[a.request] = task;
        out_.metrics.first_volunteer_latency[a.request];
        trace(head + " task=" + std::to_string(task.value) + " tau=" + trust::format_double(tau) +
              " hops=" + std::to_string(hops));

        const Timestamp volunteer_by = protocol::response_deadline(now_, end_date, cfg_.flood);
        const auto deadlines = lifecycle::make_deadlines(volunteer_by, end_date);
        auto t = lifecycle::open_request(task, a.node, deadlines);
        out_.records.emplace(std::pair{a.node, task}, t.record);
        log(std::nullopt, t, EventKind::Click_Help);
        schedule_deadlines(a.node, task, deadlines);
        emit(a.node, fx);
    }

    void drain_past_horizon()
    {
        out_.metrics.horizon_exceeded = true;
        trace("horizon exceeded pending=" + std::to_string(queue_.size()));
        while (!queue_.empty()) {
            const QueueItem item = queue_.top();
            queue_.pop();
            if (std::holds_alternative<FloodEv>(item.what) || std::holds_alternative<DirectEv>(item.what)) {
                ++out_.metrics.undelivered;
                trace("undelivered id=" + std::to_string(item.seq));
            }
        }
    }

    void finish()
    {
        std::set<NodeId> reached;
        for (const auto& [label, by_type] : out_.notified) {
            auto it = by_type.find(MessageType::Help);
            if (it != by_type.end())
                reached.insert(it->second.begin(), it->second.end());
        }
        out_.metrics.nodes_reached = reached.size();
        for (const auto& [key, rec] : out_.records)
            ++out_.metrics.census[census_key(rec)];
        out_.ledgers = world_.ledgers;
    }

    World world_;
    const Scenario& sc_;
    SimConfig cfg_;
    std::mt19937_64 rng_;
    std::priority_queue<QueueItem, std::vector<QueueItem>, Later> queue_;
    std::uint64_t seq_ = 1;
    Timestamp now_ = 0;
    std::uint64_t next_task_;
    std::map<std::string, TaskId> ids_;
    std::map<TaskId, std::string> labels_;
    std::map<TaskId, protocol::RequestRef> requests_;
    std::map<TaskId, Timestamp> asked_at_;
    RunResult out_;
};

} // namespace

RunResult run(World world, const Scenario& sc, const SimConfig& cfg)
{
    Engine engine(std::move(world), sc, cfg);
    return engine.run();
}

} // namespace uhelp::simnet
