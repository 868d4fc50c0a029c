#include "uhelp/protocol/flood.hpp"

#include <algorithm>

namespace uhelp::protocol {

std::string_view to_string(MessageType t) noexcept
{
    switch (t) {
    case MessageType::Help: return "HELP";
    case MessageType::NotNeeded: return "NOTNEEDED";
    case MessageType::Cancelled: return "CANCELLED";
    }
    return "HELP";
}

MessageType message_type_from_string(std::string_view text)
{
    for (auto t : {MessageType::Help, MessageType::NotNeeded, MessageType::Cancelled})
        if (to_string(t) == text)
            return t;
    throw ProtocolError("unknown message type '" + std::string(text) + "'");
}

std::string_view to_string(TNorm t) noexcept
{
    return t == TNorm::Min ? "min" : "product";
}

TNorm tnorm_from_string(std::string_view text)
{
    if (text == "min")
        return TNorm::Min;
    if (text == "product")
        return TNorm::Product;
    throw ProtocolError("unknown t-norm '" + std::string(text) + "'");
}

double apply(TNorm t, double x, double y) noexcept
{
    return t == TNorm::Min ? std::min(x, y) : x * y;
}

void FloodParams::validate() const
{
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw ProtocolError("sigma must lie in [0,1]");
    if (response_offset && *response_offset < 0)
        throw ProtocolError("response offset must be non-negative");
}

Timestamp response_deadline(Timestamp now, Timestamp end_date, const FloodParams& fp)
{
    const Duration offset = fp.response_offset ? *fp.response_offset : (end_date - now) / 4;
    return end_date - offset;
}

ProtocolNode::ProtocolNode(NodeId id, std::set<NodeId> friends) : id_(std::move(id)), friends_(std::move(friends))
{
    if (friends_.contains(id_))
        throw ProtocolError("node '" + id_.str() + "' cannot befriend itself");
}

void ProtocolNode::add_friend(const NodeId& n)
{
    if (n == id_)
        throw ProtocolError("node '" + id_.str() + "' cannot befriend itself");
    friends_.insert(n);
}

double ProtocolNode::old_path_trust(TaskId task) const
{
    auto it = old_path_trust_.find(task);
    return it == old_path_trust_.end() ? -1.0 : it->second;
}

bool ProtocolNode::asked(TaskId task) const
{
    auto it = asked_.find(task);
    return it != asked_.end() && it->second;
}

FloodEffects ProtocolNode::initiate_request(const RequestRef& request, double tau, int hops, Timestamp now,
                                            const FloodParams& fp, const TrustFn& trust_fn)
{
    if (!(tau >= 0.0 && tau <= 1.0))
        throw ProtocolError("tau must lie in [0,1]");
    if (hops < 1)
        throw ProtocolError("hops must be at least 1");
    if (request.end_date <= now)
        throw ProtocolError("task deadline already past");
    if (originated_.contains(request.id) || received_.contains(request.id))
        throw ProtocolError("request " + std::to_string(request.id.value) + " already known");
    fp.validate();

    const Timestamp deadline = response_deadline(now, request.end_date, fp);
    if (deadline <= now)
        throw ProtocolError("response deadline already past");

    FloodMessage msg;
    msg.request = request;
    msg.type = MessageType::Help;
    msg.tau = tau;
    msg.path_trust = 1.0;
    msg.path = {id_};
    msg.deadline = deadline;
    msg.hops = hops;

    originated_[request.id] = Origin{request, tau, hops, deadline};
    received_.insert(request.id);
    old_path_trust_[request.id] = 1.0;
    asked_[request.id] = true;
    return flood(msg, true, now, fp, trust_fn);
}

FloodEffects ProtocolNode::propagate(const FloodMessage& msg, Timestamp now, const FloodParams& fp,
                                     const TrustFn& trust_fn)
{
    FloodEffects fx;
    if (std::find(msg.path.begin(), msg.path.end(), id_) != msg.path.end()) {
        fx.dropped = "loop";
        return fx;
    }
    if (now >= msg.deadline) {
        fx.dropped = "deadline";
        return fx;
    }

    FloodMessage next = msg;
    next.path.push_back(id_);
    const TaskId task = msg.request.id;

    if (msg.type != MessageType::Help)
        return flood(next, false, now, fp, trust_fn);

    if (!received_.contains(task)) {
        received_.insert(task);
        old_path_trust_[task] = msg.path_trust;
        asked_[task] = true;
        return flood(next, false, now, fp, trust_fn);
    }
    if (msg.path_trust - old_path_trust(task) > fp.sigma) {
        old_path_trust_[task] = msg.path_trust;
        fx = flood(next, true, now, fp, trust_fn);
        fx.reflooded = true;
        return fx;
    }
    fx.dropped = "no-gain";
    return fx;
}

FloodEffects ProtocolNode::initiate_broadcast(TaskId task, MessageType type, Timestamp now, const FloodParams& fp,
                                              const TrustFn& trust_fn, std::optional<NodeId> chosen)
{
    if (type == MessageType::Help)
        throw ProtocolError("broadcast type must be NOTNEEDED or CANCELLED");
    auto it = originated_.find(task);
    if (it == originated_.end())
        throw ProtocolError("node '" + id_.str() + "' did not originate request " + std::to_string(task.value));
    const Origin& o = it->second;

    FloodMessage msg;
    msg.request = o.request;
    msg.type = type;
    msg.tau = o.tau;
    msg.path_trust = 1.0;
    msg.path = {id_};
    msg.deadline = o.deadline;
    msg.hops = o.hops;
    if (type == MessageType::NotNeeded)
        msg.chosen = std::move(chosen);
    return flood(msg, true, now, fp, trust_fn);
}

FloodEffects ProtocolNode::flood(const FloodMessage& msg, bool asked, Timestamp now, const FloodParams& fp,
                                 const TrustFn& trust_fn)
{
    FloodEffects fx;
    if (!asked) {
        fx.notification = Notification{msg.type, msg.request, msg.path.front(), msg.deadline, msg.chosen};
    }

    // length(path) - 1 is the number of hops travelled to reach this node.
    if (static_cast<long long>(msg.path.size()) - 1 >= msg.hops)
        return fx;

    for (const NodeId& n : friends_) {
        // Receivers drop anything whose path already holds them; skip the send.
        if (std::find(msg.path.begin(), msg.path.end(), n) != msg.path.end())
            continue;
        const auto link = trust_fn(id_, n, msg.request.task, now);
        if (!link)
            continue;
        const double combined = apply(fp.tnorm, *link, msg.path_trust);
        if (combined >= msg.tau) {
            FloodMessage out = msg;
            out.path_trust = combined;
            fx.sends.push_back(Outgoing{n, std::move(out)});
        }
    }
    return fx;
}

} // namespace uhelp::protocol
