#include "uhelp/ontology/hierarchy.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace uhelp::ontology {

using json = nlohmann::json;

std::string_view to_string(HierarchyKind kind) noexcept
{
    return kind == HierarchyKind::Taxonomy ? "taxonomy" : "meronomy";
}

Hierarchy Hierarchy::from_edges(HierarchyKind kind, const std::string& root,
                                const std::vector<Edge>& edges)
{
    if (root.empty())
        throw HierarchyError("hierarchy root label is empty");

    // Parent links by label, preserving declaration order of children.
    std::map<std::string, std::string> parent_of;
    std::map<std::string, std::vector<std::string>> children_of;
    std::vector<std::string> declared{root};
    auto declare = [&](const std::string& label) {
        if (std::find(declared.begin(), declared.end(), label) == declared.end())
            declared.push_back(label);
    };

    for (const auto& [parent, child] : edges) {
        if (parent.empty() || child.empty())
            throw HierarchyError("edge with empty label");
        if (parent == child)
            throw HierarchyError("cycle detected: '" + child + "' is its own parent", child);
        if (child == root)
            throw HierarchyError("cycle detected: root '" + root + "' declared as child of '" + parent + "'",
                                 root);
        if (auto it = parent_of.find(child); it != parent_of.end())
            throw HierarchyError("duplicate label '" + child + "' (declared under '" + it->second +
                                     "' and '" + parent + "')",
                                 child);
        parent_of.emplace(child, parent);
        children_of[parent].push_back(child);
        declare(parent);
        declare(child);
    }

    Hierarchy h;
    h.kind_ = kind;

    // Depth-first from the root assigns ids in preorder.
    std::map<std::string, ConceptId> ids;
    std::vector<std::string> stack{root};
    while (!stack.empty()) {
        std::string label = std::move(stack.back());
        stack.pop_back();
        ConceptId id{static_cast<std::uint32_t>(h.labels_.size())};
        ids.emplace(label, id);
        h.labels_.push_back(label);
        h.preorder_.push_back(id);
        if (auto it = children_of.find(label); it != children_of.end())
            for (auto c = it->second.rbegin(); c != it->second.rend(); ++c)
                stack.push_back(*c);
    }

    for (const auto& label : declared) {
        if (ids.contains(label))
            continue;
        if (!parent_of.contains(label))
            throw HierarchyError("multiple roots: '" + label + "' has no parent and is not '" + root + "'",
                                 label);
        // Unreachable but parented: follow parents until we loop or hit a
        // parentless node.
        std::vector<std::string> seen{label};
        std::string cur = label;
        while (parent_of.contains(cur)) {
            cur = parent_of.at(cur);
            if (std::find(seen.begin(), seen.end(), cur) != seen.end())
                throw HierarchyError("cycle detected through '" + cur + "'", cur);
            seen.push_back(cur);
        }
        throw HierarchyError("multiple roots: '" + cur + "' has no parent and is not '" + root + "'", cur);
    }

    const std::size_t n = h.labels_.size();
    h.parent_.assign(n, std::nullopt);
    h.children_.assign(n, {});
    h.depth_.assign(n, 0);
    h.leaf_count_.assign(n, 0);
    for (ConceptId id : h.preorder_) {
        const auto& label = h.labels_[id.value];
        if (auto it = parent_of.find(label); it != parent_of.end()) {
            ConceptId p = ids.at(it->second);
            h.parent_[id.value] = p;
            h.children_[p.value].push_back(id);
            h.depth_[id.value] = h.depth_[p.value] + 1;
        }
    }
    for (auto it = h.preorder_.rbegin(); it != h.preorder_.rend(); ++it) {
        auto& count = h.leaf_count_[it->value];
        if (h.children_[it->value].empty())
            count = 1;
        if (auto p = h.parent_[it->value])
            h.leaf_count_[p->value] += count;
    }
    return h;
}

std::optional<ConceptId> Hierarchy::find(std::string_view label) const
{
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return ConceptId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

ConceptId Hierarchy::id(std::string_view label) const
{
    if (auto c = find(label))
        return *c;
    throw UnknownConcept("unknown concept '" + std::string(label) + "' in " +
                         std::string(to_string(kind_)));
}

void Hierarchy::check(ConceptId c) const
{
    if (!contains(c))
        throw UnknownConcept("unknown concept id " + std::to_string(c.value) + " in " +
                             std::string(to_string(kind_)));
}

const std::string& Hierarchy::label(ConceptId c) const
{
    check(c);
    return labels_[c.value];
}

std::optional<ConceptId> Hierarchy::parent(ConceptId c) const
{
    check(c);
    return parent_[c.value];
}

std::span<const ConceptId> Hierarchy::children(ConceptId c) const
{
    check(c);
    return children_[c.value];
}

bool Hierarchy::is_leaf(ConceptId c) const
{
    return children(c).empty();
}

std::size_t Hierarchy::depth(ConceptId c) const
{
    check(c);
    return depth_[c.value];
}

std::size_t Hierarchy::leaf_count(ConceptId c) const
{
    check(c);
    return leaf_count_[c.value];
}

std::vector<ConceptId> Hierarchy::ancestors_or_self(ConceptId c) const
{
    check(c);
    std::vector<ConceptId> out{c};
    while (auto p = parent_[out.back().value])
        out.push_back(*p);
    return out;
}

std::vector<Hierarchy::Edge> Hierarchy::edges() const
{
    std::vector<Edge> out;
    for (ConceptId c : preorder_)
        if (auto p = parent_[c.value])
            out.emplace_back(labels_[p->value], labels_[c.value]);
    return out;
}

Hierarchy load_hierarchy(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw HierarchyError(std::string("hierarchy parse failure: ") + e.what());
    }
    if (!doc.is_object())
        throw HierarchyError("hierarchy document must be an object");

    auto require_string = [&](const char* key) {
        if (!doc.contains(key) || !doc[key].is_string())
            throw HierarchyError(std::string("hierarchy field '") + key + "' missing or not a string");
        return doc[key].get<std::string>();
    };

    const auto kind_text = require_string("kind");
    HierarchyKind kind;
    if (kind_text == "taxonomy")
        kind = HierarchyKind::Taxonomy;
    else if (kind_text == "meronomy")
        kind = HierarchyKind::Meronomy;
    else
        throw HierarchyError("unknown hierarchy kind '" + kind_text + "'");

    const auto root = require_string("root");

    std::vector<Hierarchy::Edge> edges;
    if (doc.contains("edges")) {
        const auto& list = doc["edges"];
        if (!list.is_array())
            throw HierarchyError("hierarchy field 'edges' must be an array");
        for (const auto& e : list) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw HierarchyError("each edge must be a [parent, child] pair of strings: " + e.dump());
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    return Hierarchy::from_edges(kind, root, edges);
}

Hierarchy load_hierarchy_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw HierarchyError("cannot open hierarchy file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_hierarchy(buf.str());
}

std::string dump_hierarchy(const Hierarchy& h)
{
    json doc;
    doc["kind"] = std::string(to_string(h.kind()));
    doc["root"] = h.label(h.root());
    doc["edges"] = json::array();
    for (const auto& [p, c] : h.edges())
        doc["edges"].push_back({p, c});
    return doc.dump(2);
}

ConceptId most_specific_subsumer(const Hierarchy& h, ConceptId a, ConceptId b)
{
    h.check(a);
    h.check(b);
    while (h.depth(a) > h.depth(b))
        a = *h.parent(a);
    while (h.depth(b) > h.depth(a))
        b = *h.parent(b);
    while (a != b) {
        a = *h.parent(a);
        b = *h.parent(b);
    }
    return a;
}

std::size_t path_distance(const Hierarchy& h, ConceptId a, ConceptId b)
{
    const auto sub = most_specific_subsumer(h, a, b);
    return (h.depth(a) - h.depth(sub)) + (h.depth(b) - h.depth(sub));
}

std::size_t depth(const Hierarchy& h, ConceptId n)
{
    return h.depth(n);
}

double information_content(const Hierarchy& h, ConceptId n)
{
    const double p = static_cast<double>(h.leaf_count(n)) / static_cast<double>(h.total_leaves());
    // -log(1) would print as -0.
    return p >= 1.0 ? 0.0 : -std::log(p);
}

} // namespace uhelp::ontology
