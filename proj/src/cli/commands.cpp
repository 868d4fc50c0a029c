#include "uhelp/cli/commands.hpp"

#include "uhelp/cli/manifest.hpp"
#include "uhelp/simnet/metrics_io.hpp"
#include "uhelp/simnet/sweep.hpp"
#include "uhelp/simnet/trace_verifier.hpp"
#include "uhelp/trust/ledger_io.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

namespace uhelp::cli {

namespace fs = std::filesystem;

namespace {

struct Loaded {
    RunManifest manifest;
    std::optional<ontology::Hierarchy> activities;
    std::optional<ontology::Hierarchy> objects;
    simnet::SocialGraph graph;
    simnet::Scenario scenario;
    std::optional<simnet::SweepGrid> grid;
    trust::Ledgers persisted;

    trust::Ontologies onto() const { return trust::Ontologies{*activities, *objects}; }
};

class Report {
public:
    Report(std::ostream& out, int verbosity) : out_(out), verbosity_(verbosity) {}

    // Runs one named check; later checks may depend on earlier ones, so a
    // failure stops the remaining ones from running.
    bool check(const std::string& name, const std::function<void()>& body)
    {
        if (failed_)
            return false;
        try {
            body();
            if (verbosity_ >= 0)
                out_ << "ok    " << name << '\n';
            return true;
        } catch (const std::exception& e) {
            out_ << "FAIL  " << name << ": " << e.what() << '\n';
            failed_ = true;
            return false;
        }
    }

    bool failed() const noexcept { return failed_; }

private:
    std::ostream& out_;
    int verbosity_;
    bool failed_ = false;
};

std::optional<Loaded> load_all(const Options& opt, Report& report, bool need_grid)
{
    Loaded l;
    report.check("manifest parses", [&] { l.manifest = load_manifest(opt.manifest); });
    if (opt.seed)
        l.manifest.config.seed = *opt.seed;
    if (opt.out)
        l.manifest.output_dir = *opt.out;
    if (opt.grid)
        l.manifest.grid = *opt.grid;
    if (opt.ledger_dir)
        l.manifest.ledger_dir = *opt.ledger_dir;
    const auto& m = l.manifest;

    report.check("activity meronomy loads", [&] {
        l.activities = ontology::load_hierarchy_file(m.activities);
        if (l.activities->kind() != ontology::HierarchyKind::Meronomy)
            throw std::invalid_argument(m.activities.string() + " is not a meronomy");
    });
    report.check("object taxonomy loads", [&] {
        l.objects = ontology::load_hierarchy_file(m.objects);
        if (l.objects->kind() != ontology::HierarchyKind::Taxonomy)
            throw std::invalid_argument(m.objects.string() + " is not a taxonomy");
    });
    report.check("social graph loads", [&] { l.graph = simnet::load_graph_file(m.graph); });
    report.check("graph seeds name known concepts", [&] { simnet::validate_seeds(l.graph, l.onto()); });
    report.check("scenario loads", [&] { l.scenario = simnet::load_scenario_file(m.scenario); });
    report.check("scenario names known nodes and concepts", [&] {
        const auto world = simnet::build_world(l.graph, l.onto());
        simnet::validate_scenario(l.scenario, world);
    });
    report.check("parameters in range", [&] {
        m.config.flood.validate();
        m.config.trust.validate();
        m.config.similarity.validate();
        m.config.delay.validate();
        if (m.config.trust.sharing_policy == trust::SharingPolicy::ManualList) {
            for (const auto& [a, b] : m.config.sharing.share_pairs)
                if (!l.graph.nodes.contains(a) || !l.graph.nodes.contains(b))
                    throw std::invalid_argument("sharing pair names an unknown node");
        }
    });
    if (m.grid || need_grid) {
        report.check("sweep grid loads", [&] {
            if (!m.grid)
                throw std::invalid_argument("no grid given (manifest \"grid\" or --grid)");
            l.grid = simnet::load_grid_file(*m.grid);
        });
    }
    if (m.ledger_dir) {
        report.check("persisted ledgers load", [&] {
            for (const auto& n : l.graph.nodes)
                if (auto ledger = trust::load_ledger(n, *m.ledger_dir, l.onto()))
                    l.persisted.insert_or_assign(n, std::move(*ledger));
        });
    }
    if (report.failed())
        return std::nullopt;
    return l;
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << content;
}

std::string join_lines(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

// Clock and request ids continue after whatever the persisted ledgers hold.
void continue_after(const trust::Ledgers& persisted, simnet::SimConfig& cfg)
{
    for (const auto& [owner, ledger] : persisted) {
        if (auto t = ledger.latest_time(); t && *t + 1 > cfg.clock_start)
            cfg.clock_start = *t + 1;
        for (const auto& r : ledger.entries())
            if (r.request && r.request->value + 1 > cfg.first_task_id)
                cfg.first_task_id = r.request->value + 1;
    }
}

std::vector<std::vector<std::string>> trust_table(const Loaded& l, const trust::Ledgers& ledgers,
                                                  const simnet::SimConfig& cfg)
{
    std::vector<std::vector<std::string>> rows;
    const auto onto = l.onto();
    for (const auto& a : l.scenario.actions) {
        if (a.kind != simnet::ActionKind::Help)
            continue;
        const trust::Task task{onto.activities.id(a.activity), onto.objects.id(a.object), a.description};
        for (const auto& [x, y] : l.graph.edges) {
            for (const auto& [from, to] : {std::pair{x, y}, std::pair{y, x}}) {
                const double t = trust::trust_for_policy(ledgers.at(from), from, to, task, trust::kEndOfTime, onto,
                                                         cfg.trust, cfg.similarity);
                rows.push_back({a.request, from.str(), to.str(), trust::format_double(t)});
            }
        }
    }
    return rows;
}

} // namespace

int cmd_validate(const Options& opt, std::ostream& out, std::ostream&)
{
    Report report(out, opt.verbosity);
    const auto loaded = load_all(opt, report, false);
    out << (loaded ? "all checks passed\n" : "validation failed\n");
    return loaded ? kExitOk : kExitValidation;
}

int cmd_run(const Options& opt, std::ostream& out, std::ostream& err)
{
    std::ostringstream checks;
    Report report(checks, opt.verbosity);
    const auto loaded = load_all(opt, report, false);
    if (!loaded) {
        err << checks.str() << "validation failed\n";
        return kExitValidation;
    }
    if (opt.verbosity > 0)
        err << checks.str();

    try {
        const Loaded& l = *loaded;
        simnet::SimConfig cfg = l.manifest.config;
        continue_after(l.persisted, cfg);

        auto world = simnet::build_world(l.graph, l.onto(), l.persisted);
        const auto before = trust_table(l, world.ledgers, cfg);
        const auto result = simnet::run(std::move(world), l.scenario, cfg);
        const auto after = trust_table(l, result.ledgers, cfg);

        const auto problems = simnet::verify_trace(result.trace, result.metrics);
        for (const auto& p : problems)
            err << "trace check: " << p << '\n';
        if (!problems.empty())
            return kExitRuntime;

        const fs::path dir = l.manifest.output_dir;
        fs::create_directories(dir);
        write_file(dir / "metrics.csv", simnet::metrics_csv_header() + "\n" + simnet::metrics_csv_row(result.metrics) + "\n");
        write_file(dir / "metrics.jsonl", simnet::metrics_json_line(result.metrics) + "\n");
        write_file(dir / "trace.log", join_lines(result.trace));
        std::ostringstream transitions;
        result.log.write(transitions);
        write_file(dir / "transitions.log", transitions.str());

        std::string trust_csv = "request,from,to,trust_start,trust_end\n";
        for (std::size_t i = 0; i < before.size(); ++i)
            trust_csv += before[i][0] + "," + before[i][1] + "," + before[i][2] + "," + before[i][3] + "," +
                         after[i][3] + "\n";
        write_file(dir / "trust.csv", trust_csv);

        if (l.manifest.ledger_dir) {
            fs::create_directories(*l.manifest.ledger_dir);
            for (const auto& [owner, ledger] : result.ledgers)
                trust::save_ledger(ledger, *l.manifest.ledger_dir, l.onto());
        }

        const auto& m = result.metrics;
        out << "run complete: " << m.messages(protocol::MessageType::Help) << " HELP, "
            << m.messages(protocol::MessageType::NotNeeded) << " NOTNEEDED, "
            << m.messages(protocol::MessageType::Cancelled) << " CANCELLED, " << m.nodes_reached
            << " nodes reached, " << m.volunteers_count << " volunteers\n";
        for (const auto& [state, n] : m.census)
            out << "  " << state << " " << n << '\n';
        if (m.horizon_exceeded)
            err << "warning: horizon reached with " << m.undelivered << " messages undelivered\n";
        out << "outputs in " << dir.string() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err)
{
    std::ostringstream checks;
    Report report(checks, opt.verbosity);
    const auto loaded = load_all(opt, report, true);
    if (!loaded) {
        err << checks.str() << "validation failed\n";
        return kExitValidation;
    }
    if (opt.verbosity > 0)
        err << checks.str();

    try {
        const Loaded& l = *loaded;
        simnet::SimConfig cfg = l.manifest.config;
        continue_after(l.persisted, cfg);
        const auto world = simnet::build_world(l.graph, l.onto(), l.persisted);
        const auto result = simnet::sweep(world, l.scenario, cfg, *l.grid);
        for (const auto& w : result.warnings)
            err << "warning: " << w << '\n';

        auto columns = [](const simnet::SweepPoint& p) {
            return simnet::Columns{
                {"tau", p.tau ? trust::format_double(*p.tau) : "script"},
                {"hops", p.hops ? std::to_string(*p.hops) : "script"},
                {"sigma", trust::format_double(p.sigma)},
                {"tnorm", std::string(protocol::to_string(p.tnorm))},
            };
        };
        std::string csv = simnet::metrics_csv_header(columns(result.rows.front().point)) + "\n";
        std::string jsonl;
        for (const auto& row : result.rows) {
            csv += simnet::metrics_csv_row(row.metrics, columns(row.point)) + "\n";
            jsonl += simnet::metrics_json_line(row.metrics, columns(row.point)) + "\n";
        }
        const fs::path dir = l.manifest.output_dir;
        fs::create_directories(dir);
        write_file(dir / "sweep.csv", csv);
        write_file(dir / "sweep.jsonl", jsonl);
        out << "sweep complete: " << result.rows.size() << " rows in " << (dir / "sweep.csv").string() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "sweep failed: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace uhelp::cli
