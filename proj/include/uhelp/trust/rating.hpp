#pragma once

#include "uhelp/ids.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace uhelp::trust {

// Ratings live on the integer scale 1..7, 1 meaning complete failure.
inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 7;

class RatingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Maps a rating onto [0,1]: (v - 1) / 6.
double normalize_value(int v);

struct Rating {
    NodeId requester;
    NodeId volunteer;
    ConceptId activity;  // in the activity meronomy
    ConceptId object;    // in the object taxonomy
    int value = kMinRating;
    Timestamp time = 0;
    // The request that produced this rating, when known. Used to refuse a
    // second rating for the same request.
    std::optional<TaskId> request;

    friend bool operator==(const Rating&, const Rating&) = default;
};

// Key for a manual trust override: the counterpart and the activity the dial
// applies to. One dial per friend is keyed on the meronomy root; lookups walk
// from the task's activity up to the root, so a more specific key wins.
struct OverrideKey {
    NodeId counterpart;
    ConceptId activity;

    friend auto operator<=>(const OverrideKey&, const OverrideKey&) = default;
};

// The ratings one member can see: their own plus whatever others shared with
// them, kept in time order. Mutated only by its owner.
class RatingLedger {
public:
    RatingLedger() = default;
    explicit RatingLedger(NodeId owner) : owner_(std::move(owner)) {}

    const NodeId& owner() const noexcept { return owner_; }
    const std::vector<Rating>& entries() const noexcept { return entries_; }
    const std::map<OverrideKey, double>& overrides() const noexcept { return overrides_; }

    // Records one of the owner's own ratings. Throws RatingError when the
    // value is out of range, requester is not the owner, requester rates
    // themself, or the request was already rated.
    void record_rating(const Rating& r);

    // Adds a rating shared by another member. Returns false when an identical
    // entry is already present.
    bool add_shared(const Rating& r);

    // Re-inserts an entry read back from persistence, without de-duplication.
    void restore(const Rating& r);

    void set_override(const OverrideKey& key, double trust);
    void clear_override(const OverrideKey& key);
    std::optional<double> override_for(const OverrideKey& key) const;

    // Entries whose requester is `rater` and volunteer is `volunteer`, with
    // time <= t.
    std::vector<const Rating*> visible(const NodeId& rater, const NodeId& volunteer, Timestamp t) const;

    // Distinct requesters that rated `volunteer` by time t.
    std::set<NodeId> raters_of(const NodeId& volunteer, Timestamp t) const;

    // Latest timestamp of any entry.
    std::optional<Timestamp> latest_time() const;

    friend bool operator==(const RatingLedger&, const RatingLedger&) = default;

private:
    void insert_ordered(const Rating& r);

    NodeId owner_;
    std::vector<Rating> entries_;
    std::map<OverrideKey, double> overrides_;
    std::set<TaskId> rated_requests_;
};

} // namespace uhelp::trust
