#include "uhelp/simnet/sweep.hpp"

#include "uhelp/trust/ledger_io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace uhelp::simnet {

using json = nlohmann::json;

SweepGrid parse_grid(std::string_view json_text)
{
    SweepGrid g;
    try {
        const auto j = json::parse(json_text);
        for (const auto& [key, _] : j.items())
            if (key != "tau" && key != "hops" && key != "sigma" && key != "tnorm")
                throw SimError("unknown grid axis '" + key + "'");
        g.tau = j.value("tau", std::vector<double>{});
        g.hops = j.value("hops", std::vector<int>{});
        g.sigma = j.value("sigma", std::vector<double>{});
        for (const auto& t : j.value("tnorm", std::vector<std::string>{}))
            g.tnorm.push_back(protocol::tnorm_from_string(t));
    } catch (const json::exception& e) {
        throw SimError(std::string("grid: ") + e.what());
    }
    for (double t : g.tau)
        if (!(t >= 0.0 && t <= 1.0))
            throw SimError("grid tau must lie in [0,1]");
    for (double s : g.sigma)
        if (!(s >= 0.0 && s <= 1.0))
            throw SimError("grid sigma must lie in [0,1]");
    for (int h : g.hops)
        if (h < 1)
            throw SimError("grid hops must be at least 1");
    return g;
}

SweepGrid load_grid_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw SimError("cannot open grid " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid(buf.str());
}

namespace {

std::string describe(const SweepPoint& p)
{
    return "tau=" + (p.tau ? trust::format_double(*p.tau) : std::string("script")) +
           " hops=" + (p.hops ? std::to_string(*p.hops) : std::string("script")) +
           " sigma=" + trust::format_double(p.sigma) + " tnorm=" + std::string(protocol::to_string(p.tnorm));
}

} // namespace

std::vector<SweepPoint> expand(const SweepGrid& grid, const SimConfig& base, std::vector<std::string>* warnings)
{
    if (grid.tau.empty() && grid.hops.empty() && grid.sigma.empty() && grid.tnorm.empty())
        throw SimError("sweep grid is empty");

    std::vector<std::optional<double>> taus;
    for (double t : grid.tau)
        taus.emplace_back(t);
    if (taus.empty())
        taus.push_back(base.tau_override);
    std::vector<std::optional<int>> hops;
    for (int h : grid.hops)
        hops.emplace_back(h);
    if (hops.empty())
        hops.push_back(base.hops_override);
    const auto sigmas = grid.sigma.empty() ? std::vector<double>{base.flood.sigma} : grid.sigma;
    const auto tnorms = grid.tnorm.empty() ? std::vector<protocol::TNorm>{base.flood.tnorm} : grid.tnorm;

    std::vector<SweepPoint> points;
    std::set<SweepPoint> seen;
    for (const auto& t : taus)
        for (const auto& h : hops)
            for (double s : sigmas)
                for (auto n : tnorms) {
                    SweepPoint p{t, h, s, n};
                    if (!seen.insert(p).second) {
                        if (warnings)
                            warnings->push_back("duplicate grid point " + describe(p) + " skipped");
                        continue;
                    }
                    points.push_back(p);
                }
    return points;
}

SweepResult sweep(const World& world, const Scenario& sc, const SimConfig& base, const SweepGrid& grid)
{
    SweepResult out;
    for (const auto& p : expand(grid, base, &out.warnings)) {
        SimConfig cfg = base;
        cfg.tau_override = p.tau;
        cfg.hops_override = p.hops;
        cfg.flood.sigma = p.sigma;
        cfg.flood.tnorm = p.tnorm;
        out.rows.push_back(SweepRow{p, run(world, sc, cfg).metrics});
    }
    return out;
}

} // namespace uhelp::simnet
