#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace uhelp {

// Virtual time in integer ticks. The simulator never consults a wall clock.
using Timestamp = std::int64_t;
using Duration = std::int64_t;

// A community member. Identified by a stable name so that ledgers and traces
// stay readable and survive between runs.
class NodeId {
public:
    NodeId() = default;
    explicit NodeId(std::string name) : name_(std::move(name)) {}

    const std::string& str() const noexcept { return name_; }
    bool empty() const noexcept { return name_.empty(); }

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
    friend bool operator==(const NodeId&, const NodeId&) = default;

    friend std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << id.name_; }

private:
    std::string name_;
};

// Globally unique request identifier, minted when a request is created.
struct TaskId {
    std::uint64_t value = 0;

    friend auto operator<=>(const TaskId&, const TaskId&) = default;
    friend bool operator==(const TaskId&, const TaskId&) = default;
    friend std::ostream& operator<<(std::ostream& os, TaskId id) { return os << id.value; }
};

// Index of a concept inside one Hierarchy. Only meaningful together with the
// hierarchy that issued it.
struct ConceptId {
    std::uint32_t value = 0;

    friend auto operator<=>(const ConceptId&, const ConceptId&) = default;
    friend bool operator==(const ConceptId&, const ConceptId&) = default;
};

} // namespace uhelp

template <>
struct std::hash<uhelp::NodeId> {
    std::size_t operator()(const uhelp::NodeId& id) const noexcept
    {
        return std::hash<std::string>{}(id.str());
    }
};

template <>
struct std::hash<uhelp::TaskId> {
    std::size_t operator()(uhelp::TaskId id) const noexcept
    {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
