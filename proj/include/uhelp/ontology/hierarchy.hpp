#pragma once

#include "uhelp/ids.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uhelp::ontology {

enum class HierarchyKind { Taxonomy, Meronomy };

std::string_view to_string(HierarchyKind kind) noexcept;

// Raised when a hierarchy document is malformed or violates the rooted-tree
// invariants. `node()` names the offending concept when there is one.
class HierarchyError : public std::runtime_error {
public:
    HierarchyError(const std::string& what, std::string node = {})
        : std::runtime_error(what), node_(std::move(node))
    {
    }

    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

class UnknownConcept : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A rooted tree of labelled concepts: either an is-a taxonomy of objects or a
// part-of meronomy of activities. Immutable once built; every query is O(depth)
// or better thanks to the tables precomputed in the constructor.
class Hierarchy {
public:
    using Edge = std::pair<std::string, std::string>;  // parent, child

    // Validates and builds. Throws HierarchyError on multiple roots, cycles,
    // duplicate labels, or nodes unreachable from `root`.
    static Hierarchy from_edges(HierarchyKind kind, const std::string& root,
                                const std::vector<Edge>& edges);

    HierarchyKind kind() const noexcept { return kind_; }
    ConceptId root() const noexcept { return ConceptId{0}; }
    std::size_t size() const noexcept { return labels_.size(); }

    bool contains(ConceptId c) const noexcept { return c.value < labels_.size(); }
    std::optional<ConceptId> find(std::string_view label) const;
    // Like find() but throws UnknownConcept.
    ConceptId id(std::string_view label) const;
    const std::string& label(ConceptId c) const;

    std::optional<ConceptId> parent(ConceptId c) const;
    std::span<const ConceptId> children(ConceptId c) const;
    bool is_leaf(ConceptId c) const;

    std::size_t depth(ConceptId c) const;
    std::size_t leaf_count(ConceptId c) const;
    std::size_t total_leaves() const noexcept { return leaf_count_.empty() ? 0 : leaf_count_[0]; }

    // Ancestors of c from c itself up to the root.
    std::vector<ConceptId> ancestors_or_self(ConceptId c) const;

    // All concepts, parents before children.
    std::span<const ConceptId> preorder() const noexcept { return preorder_; }

    // The edges in preorder, suitable for re-serialising.
    std::vector<Edge> edges() const;

    void check(ConceptId c) const;

private:
    Hierarchy() = default;

    HierarchyKind kind_ = HierarchyKind::Taxonomy;
    std::vector<std::string> labels_;
    std::vector<std::optional<ConceptId>> parent_;
    std::vector<std::vector<ConceptId>> children_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> leaf_count_;
    std::vector<ConceptId> preorder_;
};

// Parses the JSON hierarchy document:
//   { "kind": "taxonomy" | "meronomy", "root": "<label>",
//     "edges": [ ["<parent>", "<child>"], ... ] }
Hierarchy load_hierarchy(std::string_view document);
Hierarchy load_hierarchy_file(const std::filesystem::path& path);

std::string dump_hierarchy(const Hierarchy& h);

// Most specific subsumer: deepest concept that is ancestor-or-self of both.
ConceptId most_specific_subsumer(const Hierarchy& h, ConceptId a, ConceptId b);

// Number of edges on the tree path a -> subsumer -> b.
std::size_t path_distance(const Hierarchy& h, ConceptId a, ConceptId b);

std::size_t depth(const Hierarchy& h, ConceptId n);

// -ln p(n), where p(n) is the fraction of the hierarchy's leaves that descend
// from n (n counts itself when it is a leaf).
double information_content(const Hierarchy& h, ConceptId n);

} // namespace uhelp::ontology
