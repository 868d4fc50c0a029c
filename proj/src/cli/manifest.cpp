#include "uhelp/cli/manifest.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace uhelp::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve_input(const fs::path& p, const fs::path& base_dir)
{
    if (p.is_absolute())
        return p;
    const fs::path local = base_dir / p;
    if (fs::exists(local))
        return local;
    if (const char* env = std::getenv(kFixtureDirEnv); env && *env) {
        const fs::path fixture = fs::path(env) / p;
        if (fs::exists(fixture))
            return fixture;
    }
    return local;
}

namespace {

void read_flood(const json& j, protocol::FloodParams& fp)
{
    fp.sigma = j.value("sigma", fp.sigma);
    if (j.contains("tnorm"))
        fp.tnorm = protocol::tnorm_from_string(j.at("tnorm").get<std::string>());
    if (j.contains("response_offset") && !j.at("response_offset").is_null())
        fp.response_offset = j.at("response_offset").get<Duration>();
}

void read_trust(const json& j, trust::TrustParams& tp)
{
    tp.object_weight = j.value("object_weight", tp.object_weight);
    tp.share_threshold = j.value("share_threshold", tp.share_threshold);
    tp.default_trust = j.value("default_trust", tp.default_trust);
    if (j.contains("sharing_policy"))
        tp.sharing_policy = trust::sharing_policy_from_string(j.at("sharing_policy").get<std::string>());
}

void read_similarity(const json& j, ontology::SimilarityParams& sp)
{
    sp.distance_decay = j.value("distance_decay", sp.distance_decay);
    sp.depth_gain = j.value("depth_gain", sp.depth_gain);
    sp.density_gain = j.value("density_gain", sp.density_gain);
    sp.cutoff = j.value("cutoff", sp.cutoff);
}

void read_sharing(const json& j, trust::SharingConfig& sc)
{
    for (const auto& p : j.value("pairs", json::array())) {
        if (!p.is_array() || p.size() != 2)
            throw ManifestError("sharing pair must be [from, to]");
        sc.share_pairs.emplace_back(NodeId(p[0].get<std::string>()), NodeId(p[1].get<std::string>()));
    }
    sc.share_hops = j.value("hops", sc.share_hops);
    sc.similarity_floor = j.value("similarity_floor", sc.similarity_floor);
}

void read_delay(const json& j, simnet::DelayModel& d)
{
    if (j.contains("model"))
        d.kind = simnet::delay_kind_from_string(j.at("model").get<std::string>());
    d.fixed = j.value("fixed", d.fixed);
    d.lo = j.value("lo", d.lo);
    d.hi = j.value("hi", d.hi);
}

} // namespace

RunManifest parse_manifest(std::string_view json_text, const fs::path& base_dir)
{
    RunManifest m;
    try {
        const auto j = json::parse(json_text);
        auto input = [&](const char* key) { return resolve_input(j.at(key).get<std::string>(), base_dir); };
        m.activities = input("activities");
        m.objects = input("objects");
        m.graph = input("graph");
        m.scenario = input("scenario");
        if (j.contains("grid"))
            m.grid = input("grid");
        if (j.contains("ledger_dir"))
            m.ledger_dir = fs::path(j.at("ledger_dir").get<std::string>());
        if (j.contains("output_dir"))
            m.output_dir = fs::path(j.at("output_dir").get<std::string>());

        auto& c = m.config;
        c.seed = j.value("seed", c.seed);
        c.clock_start = j.value("clock_start", c.clock_start);
        c.horizon = j.value("horizon", c.horizon);
        if (j.contains("tau"))
            c.tau_override = j.at("tau").get<double>();
        if (j.contains("hops"))
            c.hops_override = j.at("hops").get<int>();
        if (j.contains("delay"))
            read_delay(j.at("delay"), c.delay);
        if (j.contains("flood"))
            read_flood(j.at("flood"), c.flood);
        if (j.contains("trust"))
            read_trust(j.at("trust"), c.trust);
        if (j.contains("similarity"))
            read_similarity(j.at("similarity"), c.similarity);
        if (j.contains("sharing"))
            read_sharing(j.at("sharing"), c.sharing);
    } catch (const json::exception& e) {
        throw ManifestError(std::string("manifest: ") + e.what());
    }
    if (m.config.horizon < 0)
        throw ManifestError("horizon must be non-negative");
    if (m.config.tau_override && !(*m.config.tau_override >= 0.0 && *m.config.tau_override <= 1.0))
        throw ManifestError("tau must lie in [0,1]");
    if (m.config.hops_override && *m.config.hops_override < 1)
        throw ManifestError("hops must be at least 1");
    return m;
}

RunManifest load_manifest(const fs::path& path)
{
    const fs::path resolved = resolve_input(path, fs::current_path());
    std::ifstream in(resolved);
    if (!in)
        throw ManifestError("cannot open manifest " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str(), resolved.parent_path());
}

} // namespace uhelp::cli
