#pragma once

#include "uhelp/protocol/flood.hpp"

#include <string>
#include <string_view>

namespace uhelp::protocol {

// One-line JSON form of a message, for logs and replay. Concepts are written
// by id; the reader must use the same hierarchies. Doubles round-trip exactly.
std::string serialize(const FloodMessage& msg);
FloodMessage deserialize(std::string_view text);

} // namespace uhelp::protocol
