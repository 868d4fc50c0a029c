#pragma once

#include "uhelp/lifecycle/machine.hpp"
#include "uhelp/lifecycle/transition_log.hpp"
#include "uhelp/simnet/graph.hpp"
#include "uhelp/simnet/scenario.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace uhelp::simnet {

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DelayKind { Zero, Fixed, Uniform };

std::string_view to_string(DelayKind k) noexcept;
DelayKind delay_kind_from_string(std::string_view text);

struct DelayModel {
    DelayKind kind = DelayKind::Fixed;
    Duration fixed = 1;
    Duration lo = 1;  // Uniform: inclusive range
    Duration hi = 3;

    void validate() const;
};

struct SimConfig {
    std::uint64_t seed = 1;
    DelayModel delay;
    Timestamp clock_start = 0;
    Duration horizon = 1'000'000;  // relative to clock_start
    // Request ids are numbered from here; keeps them unique across runs that
    // share persisted ledgers.
    std::uint64_t first_task_id = 1;
    protocol::FloodParams flood;
    trust::TrustParams trust;
    ontology::SimilarityParams similarity;
    trust::SharingConfig sharing;
    // Sweep hooks: replace tau / hops of every scripted help action.
    std::optional<double> tau_override;
    std::optional<int> hops_override;
};

// One flood message on the wire, as the receiver saw it.
struct Delivery {
    std::uint64_t id = 0;
    Timestamp sent = 0;
    Timestamp time = 0;
    NodeId from;
    NodeId to;
    protocol::FloodMessage message;
    std::optional<std::string> dropped;
};

struct Metrics {
    std::map<protocol::MessageType, std::uint64_t> messages_by_type;  // flood sends
    std::uint64_t direct_messages = 0;
    std::uint64_t dropped = 0;
    std::uint64_t nodes_reached = 0;  // distinct nodes notified of some HELP
    std::uint64_t volunteers_count = 0;  // distinct (request, volunteer) offers taken
    std::uint64_t re_flood_events = 0;
    std::uint64_t ratings_recorded = 0;
    std::uint64_t rejected_events = 0;
    std::map<std::string, std::uint64_t> census;  // "<role>:<state>" at end of run
    std::map<std::string, std::optional<Duration>> first_volunteer_latency;  // by request label
    bool horizon_exceeded = false;
    std::uint64_t undelivered = 0;

    std::uint64_t messages(protocol::MessageType t) const;
};

struct RunResult {
    Metrics metrics;
    std::vector<std::string> trace;
    std::vector<Delivery> deliveries;
    // Per request label and message type, the nodes notified.
    std::map<std::string, std::map<protocol::MessageType, std::set<NodeId>>> notified;
    std::map<std::pair<NodeId, TaskId>, lifecycle::RequestRecord> records;
    std::map<std::string, TaskId> request_ids;
    lifecycle::TransitionLog log;
    trust::Ledgers ledgers;  // final state, for persistence
};

// Every scripted node must exist in the world.
void validate_scenario(const Scenario& sc, const World& world);

RunResult run(World world, const Scenario& sc, const SimConfig& cfg);

} // namespace uhelp::simnet
