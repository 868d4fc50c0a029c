#pragma once

#include "uhelp/simnet/simulator.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace uhelp::cli {

class ManifestError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kFixtureDirEnv = "UHELP_FIXTURE_DIR";

// Everything one run needs. Input paths are already resolved.
struct RunManifest {
    std::filesystem::path activities;  // meronomy fixture
    std::filesystem::path objects;     // taxonomy fixture
    std::filesystem::path graph;
    std::filesystem::path scenario;
    std::optional<std::filesystem::path> grid;
    std::optional<std::filesystem::path> ledger_dir;  // persistence; off when unset
    std::filesystem::path output_dir = "uhelp-out";
    simnet::SimConfig config;
};

// Relative input paths resolve against the manifest's directory, then
// against $UHELP_FIXTURE_DIR. Output and ledger paths stay relative to the
// working directory.
std::filesystem::path resolve_input(const std::filesystem::path& p, const std::filesystem::path& base_dir);

RunManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

} // namespace uhelp::cli
