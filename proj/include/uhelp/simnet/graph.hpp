#pragma once

#include "uhelp/protocol/flood.hpp"
#include "uhelp/protocol/path_enumeration.hpp"
#include "uhelp/trust/sharing.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uhelp::simnet {

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Directed manual trust `from` -> `to`; applies to `activity` and everything
// below it (meronomy root when omitted).
struct TrustSeed {
    NodeId from;
    NodeId to;
    double value = 0.0;
    std::optional<std::string> activity;
};

struct RatingSeed {
    NodeId requester;
    NodeId volunteer;
    std::string activity;
    std::string object;
    int value = 0;
    Timestamp time = 0;
};

// Friendship is undirected; trust is directed.
struct SocialGraph {
    std::set<NodeId> nodes;
    std::set<std::pair<NodeId, NodeId>> edges;  // stored with first < second
    std::vector<TrustSeed> trust;
    std::vector<RatingSeed> ratings;

    void add_node(const NodeId& n);
    void add_edge(const NodeId& a, const NodeId& b);
    std::set<NodeId> friends_of(const NodeId& n) const;
    protocol::Adjacency adjacency() const;
};

// JSON: {"nodes": [...], "edges": [[a, b], ...],
//        "trust": [{"from", "to", "value", "activity"?}],
//        "ratings": [{"requester", "volunteer", "activity", "object", "value", "time"}]}
SocialGraph parse_graph(std::string_view json_text);
SocialGraph load_graph_file(const std::filesystem::path& path);

// Seeds must name declared nodes and existing concepts.
void validate_seeds(const SocialGraph& g, const trust::Ontologies& onto);

// Simulation world: one protocol node and one ledger per member.
struct World {
    trust::Ontologies onto;
    SocialGraph graph;
    std::map<NodeId, protocol::ProtocolNode> nodes;
    trust::Ledgers ledgers;
};

// Builds protocol nodes and ledgers. `persisted` ledgers, when given for a
// member, replace its seeded one.
World build_world(const SocialGraph& g, const trust::Ontologies& onto, const trust::Ledgers& persisted = {});

} // namespace uhelp::simnet
