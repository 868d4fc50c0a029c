#pragma once

#include "uhelp/trust/trust_model.hpp"

#include <map>
#include <utility>
#include <vector>

namespace uhelp::trust {

class SharingConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SharingConfig {
    // ManualList: (from, to) means `from` shares its ratings with `to`.
    std::vector<std::pair<NodeId, NodeId>> share_pairs;
    // ManualList: how many listed hops a rating may travel (friends of
    // friends is 2).
    int share_hops = 1;
    // RatingSimilarity: direct rater agreement must exceed this.
    double similarity_floor = 0.8;
    // TrustThreshold uses TrustParams::share_threshold, evaluated at `now`.
    Timestamp now = kEndOfTime;
};

using Ledgers = std::map<NodeId, RatingLedger>;

// Copies members' own ratings into other ledgers according to `policy`.
// Idempotent: entries already present are not duplicated. Returns the number
// of entries added.
std::size_t share_ratings(Ledgers& ledgers, SharingPolicy policy, const SharingConfig& config,
                          const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp);

} // namespace uhelp::trust
