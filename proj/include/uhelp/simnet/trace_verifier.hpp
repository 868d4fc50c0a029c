#pragma once

#include "uhelp/simnet/simulator.hpp"

#include <string>
#include <vector>

namespace uhelp::simnet {

// Replays a trace and checks it against the run's metrics:
//  - every sent message (flood or direct) is received or listed as
//    undelivered exactly once;
//  - nodes_reached equals the distinct nodes with a HELP notification;
//  - per-type send counts and the re-flood count match.
// Returns the problems found; empty means the trace is consistent.
std::vector<std::string> verify_trace(const std::vector<std::string>& trace, const Metrics& m);

} // namespace uhelp::simnet
