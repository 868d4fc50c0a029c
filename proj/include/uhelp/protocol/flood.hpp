#pragma once

#include "uhelp/ids.hpp"
#include "uhelp/trust/trust_model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uhelp::protocol {

using trust::Task;

enum class MessageType { Help, NotNeeded, Cancelled };

std::string_view to_string(MessageType t) noexcept;
MessageType message_type_from_string(std::string_view text);

enum class TNorm { Min, Product };

std::string_view to_string(TNorm t) noexcept;
TNorm tnorm_from_string(std::string_view text);

// Combines a link trust with the path trust so far. Identity 1, bounded by
// min(x, y), monotone in both arguments.
double apply(TNorm t, double x, double y) noexcept;

// What travels with a request besides the routing fields: the request id, the
// task itself and the task's own deadline (so receivers can derive the same
// assignment and end deadlines as the requester).
struct RequestRef {
    TaskId id;
    Task task;
    Timestamp end_date = 0;

    friend bool operator==(const RequestRef&, const RequestRef&) = default;
};

struct FloodMessage {
    RequestRef request;
    MessageType type = MessageType::Help;
    double tau = 0.0;
    double path_trust = 1.0;
    std::vector<NodeId> path;
    Timestamp deadline = 0;  // respond-by time; nothing is processed at or after it
    int hops = 1;
    // NOTNEEDED only: the volunteer that was chosen and must ignore it.
    std::optional<NodeId> chosen;

    friend bool operator==(const FloodMessage&, const FloodMessage&) = default;
};

struct FloodParams {
    double sigma = 0.1;  // minimum path-trust gain before re-flooding
    TNorm tnorm = TNorm::Min;
    // Gap between the respond-by deadline and the task deadline. When unset,
    // a quarter of the time between request creation and task deadline.
    std::optional<Duration> response_offset;

    void validate() const;
};

// Link trust the sending node holds in a friend for a task, evaluated at
// `now`. nullopt for a stranger: never forwarded to.
using TrustFn = std::function<std::optional<double>(const NodeId& from, const NodeId& to, const Task& task,
                                                    Timestamp now)>;

struct Outgoing {
    NodeId to;
    FloodMessage message;
};

// A prompt or notice raised to the local user; consumed by the lifecycle.
struct Notification {
    MessageType type = MessageType::Help;
    RequestRef request;
    NodeId requester;
    Timestamp deadline = 0;
    std::optional<NodeId> chosen;
};

struct FloodEffects {
    std::vector<Outgoing> sends;
    std::optional<Notification> notification;
    bool reflooded = false;
    // Set when propagate discarded the message; names why.
    std::optional<std::string> dropped;
};

class ProtocolError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// One member's flooding state. Not thread-safe: a node handles one message at
// a time.
class ProtocolNode {
public:
    ProtocolNode() = default;
    ProtocolNode(NodeId id, std::set<NodeId> friends);

    const NodeId& id() const noexcept { return id_; }
    const std::set<NodeId>& friends() const noexcept { return friends_; }
    void add_friend(const NodeId& n);

    bool has_received(TaskId task) const { return received_.contains(task); }
    // -1 for a task never seen.
    double old_path_trust(TaskId task) const;
    bool asked(TaskId task) const;

    // Starts a HELP flood for a new request owned by this node.
    FloodEffects initiate_request(const RequestRef& request, double tau, int hops, Timestamp now,
                                  const FloodParams& fp, const TrustFn& trust_fn);

    // Handles an incoming message.
    FloodEffects propagate(const FloodMessage& msg, Timestamp now, const FloodParams& fp,
                           const TrustFn& trust_fn);

    // Floods NOTNEEDED or CANCELLED for a request this node originated,
    // reusing its tau, hops and deadline.
    FloodEffects initiate_broadcast(TaskId task, MessageType type, Timestamp now, const FloodParams& fp,
                                    const TrustFn& trust_fn, std::optional<NodeId> chosen = std::nullopt);

    // Raises the local notification unless `asked`, then forwards to every
    // friend not already on the path whose combined trust reaches tau, while
    // the path is shorter than the hop limit. `msg.path` already ends with
    // this node.
    FloodEffects flood(const FloodMessage& msg, bool asked, Timestamp now, const FloodParams& fp,
                       const TrustFn& trust_fn);

    struct Origin {
        RequestRef request;
        double tau = 0.0;
        int hops = 1;
        Timestamp deadline = 0;
    };
    const std::map<TaskId, Origin>& originated() const noexcept { return originated_; }

private:
    NodeId id_;
    std::set<NodeId> friends_;
    std::set<TaskId> received_;
    std::map<TaskId, double> old_path_trust_;
    std::map<TaskId, bool> asked_;
    std::map<TaskId, Origin> originated_;
};

// Respond-by deadline for a request created at `now` with task deadline
// `end_date`.
Timestamp response_deadline(Timestamp now, Timestamp end_date, const FloodParams& fp);

} // namespace uhelp::protocol
