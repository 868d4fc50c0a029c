#pragma once

#include "uhelp/ids.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

namespace uhelp::protocol {

using Adjacency = std::map<NodeId, std::set<NodeId>>;

inline constexpr std::size_t kMaxEnumerationNodes = 12;

class GraphTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

// Sum of the lengths (edge counts) of every loop-free path starting at
// `requester`: the message bound for flooding with sigma = 0. Exhaustive, so
// limited to kMaxEnumerationNodes nodes.
std::uint64_t count_worst_case_messages(const Adjacency& graph, const NodeId& requester);

// Number of non-trivial loop-free paths starting at `requester`.
std::uint64_t count_loop_free_paths(const Adjacency& graph, const NodeId& requester);

} // namespace uhelp::protocol
