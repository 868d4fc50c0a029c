#pragma once

#include "uhelp/ontology/hierarchy.hpp"
#include "uhelp/ontology/similarity.hpp"
#include "uhelp/trust/rating.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>

namespace uhelp::trust {

using ontology::Hierarchy;
using ontology::SimilarityParams;

enum class SharingPolicy { None, ManualList, RatingSimilarity, TrustThreshold };

std::string_view to_string(SharingPolicy p) noexcept;
SharingPolicy sharing_policy_from_string(std::string_view text);

struct TrustParams {
    double object_weight = 0.5;  // weight of object trust against activity trust
    double share_threshold = 0.8;  // eta: trust needed before ratings are shared
    double default_trust = 0.5;  // "fair": used when nothing is known
    SharingPolicy sharing_policy = SharingPolicy::None;

    void validate() const;
};

// A task pairs an activity (meronomy) with its object (taxonomy).
struct Task {
    ConceptId activity;
    ConceptId object;
    std::string description;

    friend bool operator==(const Task&, const Task&) = default;
};

// Both hierarchies a trust computation needs.
struct Ontologies {
    const Hierarchy& activities;  // meronomy
    const Hierarchy& objects;     // taxonomy
};

inline constexpr Timestamp kEndOfTime = std::numeric_limits<Timestamp>::max();

// Similarity-weighted mean of rater's normalised ratings of volunteer, by
// time t. nullopt when no rating survives the similarity cut-off.
std::optional<double> trust_obj(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                                ConceptId object, Timestamp t, const Hierarchy& taxonomy,
                                const SimilarityParams& sp);

// Fills every node of a meronomy from a sparse set of direct values.
//  - a directly valued node keeps its value;
//  - otherwise a node with valued descendants takes the mean of those of its
//    children that resolve from below (intrinsic);
//  - otherwise it inherits the value of its nearest valued ancestor
//    (extrinsic).
// Empty result when `direct` is empty.
std::map<ConceptId, double> propagate_meronomy(const Hierarchy& meronomy,
                                               const std::map<ConceptId, double>& direct);

std::optional<double> trust_act(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                                ConceptId activity, Timestamp t, const Hierarchy& meronomy);

// weight*o + (1-weight)*a with fallbacks for unknown components.
double combine(std::optional<double> object_trust, std::optional<double> activity_trust,
               const TrustParams& tp);

// Manual override for (volunteer, task activity or any ancestor), if any.
std::optional<double> manual_override(const RatingLedger& ledger, const NodeId& volunteer,
                                      const Task& task, const Hierarchy& meronomy);

// Task-dependent trust of `rater` in `volunteer` from rater's own ratings.
double trust(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer, const Task& task,
             Timestamp t, const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp);

// Which hierarchy a rater weight is computed against.
enum class Facet { Object, Activity };

// How far `other`'s ratings can be trusted by `rater` concerning `issue`.
// Direct agreement where their relevant ratings overlap; otherwise the widest
// (max-min) path of direct agreements through other raters; 0.5 when no such
// path exists; 1 for rater == other.
double rater_weight(const RatingLedger& ledger, const NodeId& rater, const NodeId& other, ConceptId issue,
                    Facet facet, const Ontologies& onto, const SimilarityParams& sp,
                    Timestamp t = kEndOfTime);

// Direct agreement only: 1 - mean |difference| over the (volunteer, concept)
// pairs both rated. nullopt without overlap. `issue` restricts the concepts
// to those equal or similar to it; pass nullopt for no restriction.
std::optional<double> direct_rater_weight(const RatingLedger& ledger, const NodeId& rater,
                                          const NodeId& other, std::optional<ConceptId> issue, Facet facet,
                                          const Ontologies& onto, const SimilarityParams& sp,
                                          Timestamp t = kEndOfTime);

// Trust using every rating shared with the ledger owner, each rater's
// component weighted by rater_weight. Requires a sharing policy other than
// None (throws std::invalid_argument otherwise).
double trust_shared(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer, const Task& task,
                    Timestamp t, const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp);

// trust_shared when sharing is on, trust otherwise.
double trust_for_policy(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                        const Task& task, Timestamp t, const Ontologies& onto, const TrustParams& tp,
                        const SimilarityParams& sp);

} // namespace uhelp::trust
