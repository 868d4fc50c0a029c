#include "uhelp/trust/rating.hpp"

#include <algorithm>
#include <string>

namespace uhelp::trust {

double normalize_value(int v)
{
    if (v < kMinRating || v > kMaxRating)
        throw RatingError("rating value " + std::to_string(v) + " outside [1,7]");
    return static_cast<double>(v - kMinRating) / static_cast<double>(kMaxRating - kMinRating);
}

namespace {

void check_rating(const Rating& r)
{
    if (r.value < kMinRating || r.value > kMaxRating)
        throw RatingError("rating value " + std::to_string(r.value) + " outside [1,7]");
    if (r.requester.empty() || r.volunteer.empty())
        throw RatingError("rating with empty requester or volunteer");
    if (r.requester == r.volunteer)
        throw RatingError("member '" + r.requester.str() + "' cannot rate themself");
}

} // namespace

void RatingLedger::insert_ordered(const Rating& r)
{
    // Stable: equal timestamps keep arrival order.
    auto pos = std::upper_bound(entries_.begin(), entries_.end(), r.time,
                                [](Timestamp t, const Rating& e) { return t < e.time; });
    entries_.insert(pos, r);
}

void RatingLedger::record_rating(const Rating& r)
{
    check_rating(r);
    if (r.requester != owner_)
        throw RatingError("ledger of '" + owner_.str() + "' cannot record a rating made by '" +
                          r.requester.str() + "'");
    if (r.request && rated_requests_.contains(*r.request))
        throw RatingError("request " + std::to_string(r.request->value) + " already rated");
    if (r.request)
        rated_requests_.insert(*r.request);
    insert_ordered(r);
}

bool RatingLedger::add_shared(const Rating& r)
{
    check_rating(r);
    if (std::find(entries_.begin(), entries_.end(), r) != entries_.end())
        return false;
    if (r.requester == owner_) {
        record_rating(r);
        return true;
    }
    insert_ordered(r);
    return true;
}

void RatingLedger::restore(const Rating& r)
{
    check_rating(r);
    if (r.requester == owner_ && r.request)
        rated_requests_.insert(*r.request);
    insert_ordered(r);
}

void RatingLedger::set_override(const OverrideKey& key, double trust)
{
    if (!(trust >= 0.0 && trust <= 1.0))
        throw RatingError("manual trust override must lie in [0,1]");
    overrides_[key] = trust;
}

void RatingLedger::clear_override(const OverrideKey& key)
{
    overrides_.erase(key);
}

std::optional<double> RatingLedger::override_for(const OverrideKey& key) const
{
    if (auto it = overrides_.find(key); it != overrides_.end())
        return it->second;
    return std::nullopt;
}

std::vector<const Rating*> RatingLedger::visible(const NodeId& rater, const NodeId& volunteer,
                                                 Timestamp t) const
{
    std::vector<const Rating*> out;
    for (const auto& e : entries_) {
        if (e.time > t)
            break;
        if (e.requester == rater && e.volunteer == volunteer)
            out.push_back(&e);
    }
    return out;
}

std::set<NodeId> RatingLedger::raters_of(const NodeId& volunteer, Timestamp t) const
{
    std::set<NodeId> out;
    for (const auto& e : entries_) {
        if (e.time > t)
            break;
        if (e.volunteer == volunteer)
            out.insert(e.requester);
    }
    return out;
}

std::optional<Timestamp> RatingLedger::latest_time() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.back().time;
}

} // namespace uhelp::trust
