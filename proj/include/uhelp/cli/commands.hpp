#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace uhelp::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitRuntime = 3,
};

struct Options {
    std::filesystem::path manifest;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;  // replaces the manifest's output_dir
    std::optional<std::filesystem::path> grid;  // sweep only; replaces the manifest's grid
    std::optional<std::filesystem::path> ledger_dir;  // turns persistence on
    int verbosity = 0;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns
// an ExitCode.
int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err);

// Writes metrics.csv, metrics.jsonl, trace.log, transitions.log and
// trust.csv to the output directory; saves ledgers when persistence is on.
int cmd_run(const Options& opt, std::ostream& out, std::ostream& err);

// Writes sweep.csv and sweep.jsonl, one row per distinct grid point.
int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err);

} // namespace uhelp::cli
