#include "uhelp/simnet/graph.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace uhelp::simnet {

using json = nlohmann::json;

void SocialGraph::add_node(const NodeId& n)
{
    if (n.empty())
        throw GraphError("empty node name");
    if (!nodes.insert(n).second)
        throw GraphError("duplicate node '" + n.str() + "'");
}

void SocialGraph::add_edge(const NodeId& a, const NodeId& b)
{
    if (a == b)
        throw GraphError("self-edge on '" + a.str() + "'");
    for (const auto* n : {&a, &b})
        if (!nodes.contains(*n))
            throw GraphError("dangling edge: '" + n->str() + "' is not a declared node");
    edges.insert(a < b ? std::pair{a, b} : std::pair{b, a});
}

std::set<NodeId> SocialGraph::friends_of(const NodeId& n) const
{
    std::set<NodeId> out;
    for (const auto& [a, b] : edges) {
        if (a == n)
            out.insert(b);
        else if (b == n)
            out.insert(a);
    }
    return out;
}

protocol::Adjacency SocialGraph::adjacency() const
{
    protocol::Adjacency adj;
    for (const auto& n : nodes)
        adj[n];
    for (const auto& [a, b] : edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

SocialGraph parse_graph(std::string_view json_text)
{
    SocialGraph g;
    try {
        const auto j = json::parse(json_text);
        for (const auto& n : j.at("nodes"))
            g.add_node(NodeId(n.get<std::string>()));
        for (const auto& e : j.value("edges", json::array())) {
            if (!e.is_array() || e.size() != 2)
                throw GraphError("edge must be a [a, b] pair");
            g.add_edge(NodeId(e[0].get<std::string>()), NodeId(e[1].get<std::string>()));
        }
        for (const auto& t : j.value("trust", json::array())) {
            TrustSeed s;
            s.from = NodeId(t.at("from").get<std::string>());
            s.to = NodeId(t.at("to").get<std::string>());
            s.value = t.at("value").get<double>();
            if (t.contains("activity"))
                s.activity = t.at("activity").get<std::string>();
            g.trust.push_back(std::move(s));
        }
        for (const auto& r : j.value("ratings", json::array())) {
            RatingSeed s;
            s.requester = NodeId(r.at("requester").get<std::string>());
            s.volunteer = NodeId(r.at("volunteer").get<std::string>());
            s.activity = r.at("activity").get<std::string>();
            s.object = r.at("object").get<std::string>();
            s.value = r.at("value").get<int>();
            s.time = r.value("time", Timestamp{0});
            g.ratings.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw GraphError(std::string("graph file: ") + e.what());
    }
    for (const auto& t : g.trust) {
        if (!g.nodes.contains(t.from) || !g.nodes.contains(t.to))
            throw GraphError("trust seed names an undeclared node");
        if (t.from == t.to)
            throw GraphError("trust seed from '" + t.from.str() + "' to itself");
        if (!(t.value >= 0.0 && t.value <= 1.0))
            throw GraphError("trust seed value must lie in [0,1]");
    }
    for (const auto& r : g.ratings)
        if (!g.nodes.contains(r.requester) || !g.nodes.contains(r.volunteer))
            throw GraphError("rating seed names an undeclared node");
    return g;
}

SocialGraph load_graph_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open graph file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void validate_seeds(const SocialGraph& g, const trust::Ontologies& onto)
{
    for (const auto& t : g.trust)
        if (t.activity && !onto.activities.find(*t.activity))
            throw GraphError("trust seed names unknown activity '" + *t.activity + "'");
    for (const auto& r : g.ratings) {
        if (!onto.activities.find(r.activity))
            throw GraphError("rating seed names unknown activity '" + r.activity + "'");
        if (!onto.objects.find(r.object))
            throw GraphError("rating seed names unknown object '" + r.object + "'");
    }
}

World build_world(const SocialGraph& g, const trust::Ontologies& onto, const trust::Ledgers& persisted)
{
    validate_seeds(g, onto);
    World w{onto, g, {}, {}};
    for (const auto& n : g.nodes) {
        w.nodes.emplace(n, protocol::ProtocolNode(n, g.friends_of(n)));
        w.ledgers.emplace(n, trust::RatingLedger(n));
    }
    for (const auto& t : g.trust) {
        const ConceptId act = t.activity ? onto.activities.id(*t.activity) : onto.activities.root();
        w.ledgers.at(t.from).set_override(trust::OverrideKey{t.to, act}, t.value);
    }
    for (const auto& r : g.ratings) {
        trust::Rating rating{r.requester, r.volunteer, onto.activities.id(r.activity), onto.objects.id(r.object),
                             r.value, r.time, std::nullopt};
        w.ledgers.at(r.requester).record_rating(rating);
    }
    for (const auto& [owner, ledger] : persisted)
        if (w.ledgers.contains(owner))
            w.ledgers.insert_or_assign(owner, ledger);
    return w;
}

} // namespace uhelp::simnet
