#include "uhelp/trust/trust_model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace uhelp::trust {

std::string_view to_string(SharingPolicy p) noexcept
{
    switch (p) {
    case SharingPolicy::None: return "none";
    case SharingPolicy::ManualList: return "manual_list";
    case SharingPolicy::RatingSimilarity: return "rating_similarity";
    case SharingPolicy::TrustThreshold: return "trust_threshold";
    }
    return "none";
}

SharingPolicy sharing_policy_from_string(std::string_view text)
{
    for (auto p : {SharingPolicy::None, SharingPolicy::ManualList, SharingPolicy::RatingSimilarity,
                   SharingPolicy::TrustThreshold})
        if (to_string(p) == text)
            return p;
    throw std::invalid_argument("unknown sharing policy '" + std::string(text) + "'");
}

void TrustParams::validate() const
{
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(object_weight) || !unit(share_threshold) || !unit(default_trust))
        throw std::invalid_argument("trust parameters must lie in [0,1]");
}

std::optional<double> trust_obj(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                                ConceptId object, Timestamp t, const Hierarchy& taxonomy,
                                const SimilarityParams& sp)
{
    taxonomy.check(object);
    double num = 0.0;
    double den = 0.0;
    for (const Rating* r : ledger.visible(rater, volunteer, t)) {
        const double w = ontology::sim_obj(taxonomy, object, r->object, sp);
        num += w * normalize_value(r->value);
        den += w;
    }
    if (den <= 0.0)
        return std::nullopt;
    return num / den;
}

std::map<ConceptId, double> propagate_meronomy(const Hierarchy& meronomy,
                                               const std::map<ConceptId, double>& direct)
{
    if (meronomy.kind() != ontology::HierarchyKind::Meronomy)
        throw std::invalid_argument("propagate_meronomy needs a meronomy");
    for (const auto& [c, v] : direct) {
        meronomy.check(c);
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("direct value for '" + meronomy.label(c) + "' outside [0,1]");
    }
    std::map<ConceptId, double> out;
    if (direct.empty())
        return out;

    // Intrinsic pass, children before parents.
    const auto order = meronomy.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const ConceptId c = *it;
        if (auto d = direct.find(c); d != direct.end()) {
            out[c] = d->second;
            continue;
        }
        double sum = 0.0;
        std::size_t n = 0;
        for (ConceptId child : meronomy.children(c)) {
            if (auto v = out.find(child); v != out.end()) {
                sum += v->second;
                ++n;
            }
        }
        if (n > 0)
            out[c] = sum / static_cast<double>(n);
    }

    // Extrinsic pass, parents before children. The root always resolves
    // intrinsically once anything is valued.
    for (ConceptId c : order) {
        if (out.contains(c))
            continue;
        out[c] = out.at(*meronomy.parent(c));
    }
    return out;
}

std::optional<double> trust_act(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                                ConceptId activity, Timestamp t, const Hierarchy& meronomy)
{
    meronomy.check(activity);
    std::map<ConceptId, std::pair<double, std::size_t>> acc;
    for (const Rating* r : ledger.visible(rater, volunteer, t)) {
        auto& [sum, n] = acc[r->activity];
        sum += normalize_value(r->value);
        ++n;
    }
    std::map<ConceptId, double> direct;
    for (const auto& [c, sn] : acc)
        direct[c] = sn.first / static_cast<double>(sn.second);
    const auto resolved = propagate_meronomy(meronomy, direct);
    if (auto it = resolved.find(activity); it != resolved.end())
        return it->second;
    return std::nullopt;
}

double combine(std::optional<double> object_trust, std::optional<double> activity_trust, const TrustParams& tp)
{
    if (!object_trust && !activity_trust)
        return tp.default_trust;
    if (!object_trust)
        return *activity_trust;
    if (!activity_trust)
        return *object_trust;
    return tp.object_weight * *object_trust + (1.0 - tp.object_weight) * *activity_trust;
}

std::optional<double> manual_override(const RatingLedger& ledger, const NodeId& volunteer, const Task& task,
                                      const Hierarchy& meronomy)
{
    if (ledger.overrides().empty())
        return std::nullopt;
    for (ConceptId c : meronomy.ancestors_or_self(task.activity))
        if (auto v = ledger.override_for(OverrideKey{volunteer, c}))
            return v;
    return std::nullopt;
}

double trust(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer, const Task& task,
             Timestamp t, const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp)
{
    if (auto v = manual_override(ledger, volunteer, task, onto.activities))
        return *v;
    const auto o = trust_obj(ledger, rater, volunteer, task.object, t, onto.objects, sp);
    const auto a = trust_act(ledger, rater, volunteer, task.activity, t, onto.activities);
    return combine(o, a, tp);
}

namespace {

using Profile = std::map<std::pair<NodeId, ConceptId>, double>;

// Mean normalised value per (volunteer, concept) for one rater, restricted to
// concepts relevant to `issue`.
Profile rating_profile(const RatingLedger& ledger, const NodeId& rater, std::optional<ConceptId> issue,
                       Facet facet, const Ontologies& onto, const SimilarityParams& sp, Timestamp t)
{
    const Hierarchy& h = facet == Facet::Object ? onto.objects : onto.activities;
    std::map<std::pair<NodeId, ConceptId>, std::pair<double, std::size_t>> acc;
    for (const auto& r : ledger.entries()) {
        if (r.time > t)
            break;
        if (r.requester != rater)
            continue;
        const ConceptId c = facet == Facet::Object ? r.object : r.activity;
        if (issue && c != *issue && !(ontology::sim_obj(h, c, *issue, sp) > 0.0))
            continue;
        auto& [sum, n] = acc[{r.volunteer, c}];
        sum += normalize_value(r.value);
        ++n;
    }
    Profile out;
    for (const auto& [k, sn] : acc)
        out[k] = sn.first / static_cast<double>(sn.second);
    return out;
}

std::optional<double> agreement(const Profile& a, const Profile& b)
{
    double diff = 0.0;
    std::size_t n = 0;
    for (const auto& [k, va] : a) {
        if (auto it = b.find(k); it != b.end()) {
            diff += std::abs(va - it->second);
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    return 1.0 - diff / static_cast<double>(n);
}

} // namespace

std::optional<double> direct_rater_weight(const RatingLedger& ledger, const NodeId& rater, const NodeId& other,
                                          std::optional<ConceptId> issue, Facet facet, const Ontologies& onto,
                                          const SimilarityParams& sp, Timestamp t)
{
    return agreement(rating_profile(ledger, rater, issue, facet, onto, sp, t),
                     rating_profile(ledger, other, issue, facet, onto, sp, t));
}

double rater_weight(const RatingLedger& ledger, const NodeId& rater, const NodeId& other, ConceptId issue,
                    Facet facet, const Ontologies& onto, const SimilarityParams& sp, Timestamp t)
{
    if (rater == other)
        return 1.0;

    std::set<NodeId> members{rater, other};
    for (const auto& r : ledger.entries())
        if (r.time <= t)
            members.insert(r.requester);

    std::map<NodeId, Profile> profiles;
    for (const auto& m : members)
        profiles.emplace(m, rating_profile(ledger, m, issue, facet, onto, sp, t));

    if (auto w = agreement(profiles.at(rater), profiles.at(other)))
        return *w;

    // Widest path: maximise the minimum direct agreement along the chain.
    std::map<NodeId, double> best;
    std::priority_queue<std::pair<double, NodeId>> frontier;
    best[rater] = 1.0;
    frontier.emplace(1.0, rater);
    while (!frontier.empty()) {
        auto [width, node] = frontier.top();
        frontier.pop();
        if (width < best[node])
            continue;
        if (node == other)
            return width;
        for (const auto& m : members) {
            if (m == node)
                continue;
            auto w = agreement(profiles.at(node), profiles.at(m));
            if (!w)
                continue;
            const double through = std::min(width, *w);
            auto it = best.find(m);
            if (it == best.end() || through > it->second) {
                best[m] = through;
                frontier.emplace(through, m);
            }
        }
    }
    return 0.5;
}

double trust_shared(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer, const Task& task,
                    Timestamp t, const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp)
{
    if (tp.sharing_policy == SharingPolicy::None)
        throw std::invalid_argument("trust_shared requires a sharing policy");
    if (auto v = manual_override(ledger, volunteer, task, onto.activities))
        return *v;

    double obj_num = 0.0, obj_den = 0.0;
    double act_num = 0.0, act_den = 0.0;
    for (const NodeId& u : ledger.raters_of(volunteer, t)) {
        if (auto o = trust_obj(ledger, u, volunteer, task.object, t, onto.objects, sp)) {
            const double w = rater_weight(ledger, rater, u, task.object, Facet::Object, onto, sp, t);
            obj_num += w * *o;
            obj_den += w;
        }
        if (auto a = trust_act(ledger, u, volunteer, task.activity, t, onto.activities)) {
            const double w = rater_weight(ledger, rater, u, task.activity, Facet::Activity, onto, sp, t);
            act_num += w * *a;
            act_den += w;
        }
    }
    std::optional<double> o, a;
    if (obj_den > 0.0)
        o = obj_num / obj_den;
    if (act_den > 0.0)
        a = act_num / act_den;
    return combine(o, a, tp);
}

double trust_for_policy(const RatingLedger& ledger, const NodeId& rater, const NodeId& volunteer,
                        const Task& task, Timestamp t, const Ontologies& onto, const TrustParams& tp,
                        const SimilarityParams& sp)
{
    if (tp.sharing_policy == SharingPolicy::None)
        return trust(ledger, rater, volunteer, task, t, onto, tp, sp);
    return trust_shared(ledger, rater, volunteer, task, t, onto, tp, sp);
}

} // namespace uhelp::trust
