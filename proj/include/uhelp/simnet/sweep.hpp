#pragma once

#include "uhelp/simnet/simulator.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace uhelp::simnet {

// Axes left empty keep the base configuration's value.
struct SweepGrid {
    std::vector<double> tau;
    std::vector<int> hops;
    std::vector<double> sigma;
    std::vector<protocol::TNorm> tnorm;
};

// JSON: {"tau": [...], "hops": [...], "sigma": [...], "tnorm": ["min", "product"]}
SweepGrid parse_grid(std::string_view json_text);
SweepGrid load_grid_file(const std::filesystem::path& path);

struct SweepPoint {
    std::optional<double> tau;
    std::optional<int> hops;
    double sigma = 0.0;
    protocol::TNorm tnorm = protocol::TNorm::Min;

    friend auto operator<=>(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepRow {
    SweepPoint point;
    Metrics metrics;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;  // duplicate grid points
};

// Cartesian product of the axes, in axis order, duplicates dropped.
std::vector<SweepPoint> expand(const SweepGrid& grid, const SimConfig& base, std::vector<std::string>* warnings);

// One run per point, each on a fresh copy of `world`.
SweepResult sweep(const World& world, const Scenario& sc, const SimConfig& base, const SweepGrid& grid);

} // namespace uhelp::simnet
