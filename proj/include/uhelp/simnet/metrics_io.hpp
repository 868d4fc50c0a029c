#pragma once

#include "uhelp/simnet/simulator.hpp"

#include <string>
#include <utility>
#include <vector>

namespace uhelp::simnet {

// Extra leading columns, e.g. the sweep parameters of a row.
using Columns = std::vector<std::pair<std::string, std::string>>;

// Delimited table. Census columns cover every state of both roles, so rows
// from different runs line up.
std::string metrics_csv_header(const Columns& prefix = {});
std::string metrics_csv_row(const Metrics& m, const Columns& prefix = {});

// One JSON object per line, keys in a fixed order.
std::string metrics_json_line(const Metrics& m, const Columns& prefix = {});

} // namespace uhelp::simnet
