#include "uhelp/protocol/path_enumeration.hpp"

#include <string>
#include <vector>

namespace uhelp::protocol {

namespace {

struct Totals {
    std::uint64_t paths = 0;
    std::uint64_t length_sum = 0;
};

void extend(const Adjacency& graph, const NodeId& at, std::set<NodeId>& on_path, std::uint64_t length,
            Totals& totals)
{
    auto it = graph.find(at);
    if (it == graph.end())
        return;
    for (const NodeId& next : it->second) {
        if (on_path.contains(next))
            continue;
        ++totals.paths;
        totals.length_sum += length + 1;
        on_path.insert(next);
        extend(graph, next, on_path, length + 1, totals);
        on_path.erase(next);
    }
}

Totals enumerate(const Adjacency& graph, const NodeId& requester)
{
    std::set<NodeId> nodes;
    for (const auto& [n, friends] : graph) {
        nodes.insert(n);
        nodes.insert(friends.begin(), friends.end());
    }
    nodes.insert(requester);
    if (nodes.size() > kMaxEnumerationNodes)
        throw GraphTooLarge("path enumeration limited to " + std::to_string(kMaxEnumerationNodes) +
                            " nodes, graph has " + std::to_string(nodes.size()));
    Totals totals;
    std::set<NodeId> on_path{requester};
    extend(graph, requester, on_path, 0, totals);
    return totals;
}

} // namespace

std::uint64_t count_worst_case_messages(const Adjacency& graph, const NodeId& requester)
{
    return enumerate(graph, requester).length_sum;
}

std::uint64_t count_loop_free_paths(const Adjacency& graph, const NodeId& requester)
{
    return enumerate(graph, requester).paths;
}

} // namespace uhelp::protocol
