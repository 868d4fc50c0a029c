#include "uhelp/cli/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace uhelp::cli;

    CLI::App app{"uhelp: trust-based volunteer search simulator"};
    app.require_subcommand(1);

    Options opt;
    int verbose = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string grid;
    std::string ledger_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-m,--manifest", opt.manifest, "run manifest (JSON)")->required();
        cmd->add_flag("-v,--verbose", verbose, "print every validation check");
    };

    auto* validate = app.add_subcommand("validate", "check every fixture a manifest references");
    add_common(validate);

    auto* run = app.add_subcommand("run", "run the manifest's scenario and write metrics and trace");
    add_common(run);
    run->add_option("--seed", seed, "override the manifest seed");
    run->add_option("-o,--out", out_dir, "output directory");
    run->add_option("--ledger-dir", ledger_dir, "load and save rating ledgers here");

    auto* sweep = app.add_subcommand("sweep", "run the scenario once per parameter grid point");
    add_common(sweep);
    sweep->add_option("--seed", seed, "override the manifest seed");
    sweep->add_option("-o,--out", out_dir, "output directory");
    sweep->add_option("-g,--grid", grid, "parameter grid (JSON)");
    sweep->add_option("--ledger-dir", ledger_dir, "read rating ledgers from here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    opt.verbosity = verbose;
    for (auto* cmd : {run, sweep})
        if (cmd->parsed() && cmd->count("--seed"))
            opt.seed = seed;
    if (!out_dir.empty())
        opt.out = out_dir;
    if (!grid.empty())
        opt.grid = grid;
    if (!ledger_dir.empty())
        opt.ledger_dir = ledger_dir;

    if (validate->parsed())
        return cmd_validate(opt, std::cout, std::cerr);
    if (run->parsed())
        return cmd_run(opt, std::cout, std::cerr);
    return cmd_sweep(opt, std::cout, std::cerr);
}
