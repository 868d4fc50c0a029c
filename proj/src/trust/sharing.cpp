#include "uhelp/trust/sharing.hpp"

#include <deque>
#include <set>

namespace uhelp::trust {

namespace {

std::vector<Rating> own_ratings(const RatingLedger& ledger)
{
    std::vector<Rating> out;
    for (const auto& r : ledger.entries())
        if (r.requester == ledger.owner())
            out.push_back(r);
    return out;
}

std::size_t give(RatingLedger& to, const std::vector<Rating>& ratings)
{
    std::size_t added = 0;
    for (const auto& r : ratings)
        added += to.add_shared(r) ? 1 : 0;
    return added;
}

std::size_t share_manual(Ledgers& ledgers, const std::map<NodeId, std::vector<Rating>>& own,
                         const SharingConfig& config)
{
    if (config.share_hops < 1)
        throw SharingConfigError("manual sharing needs share_hops >= 1");
    std::map<NodeId, std::set<NodeId>> out_edges;
    for (const auto& [from, to] : config.share_pairs) {
        if (!ledgers.contains(from) || !ledgers.contains(to))
            throw SharingConfigError("unknown sharing pair (" + from.str() + ", " + to.str() + ")");
        if (from == to)
            throw SharingConfigError("sharing pair with itself: " + from.str());
        out_edges[from].insert(to);
    }

    std::size_t added = 0;
    for (const auto& [source, ratings] : own) {
        std::map<NodeId, int> dist{{source, 0}};
        std::deque<NodeId> queue{source};
        while (!queue.empty()) {
            NodeId cur = queue.front();
            queue.pop_front();
            if (dist[cur] == config.share_hops)
                continue;
            for (const auto& next : out_edges[cur]) {
                if (dist.contains(next))
                    continue;
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
                added += give(ledgers.at(next), ratings);
            }
        }
    }
    return added;
}

std::size_t share_by_similarity(Ledgers& ledgers, const std::map<NodeId, std::vector<Rating>>& own,
                                const SharingConfig& config, const Ontologies& onto,
                                const SimilarityParams& sp)
{
    if (!(config.similarity_floor >= 0.0 && config.similarity_floor <= 1.0))
        throw SharingConfigError("similarity_floor must lie in [0,1]");
    std::size_t added = 0;
    for (const auto& [a, ratings_a] : own) {
        for (const auto& [b, ratings_b] : own) {
            if (a == b)
                continue;
            RatingLedger both(a);
            for (const auto& r : ratings_a)
                both.add_shared(r);
            for (const auto& r : ratings_b)
                both.add_shared(r);
            auto w = direct_rater_weight(both, a, b, std::nullopt, Facet::Object, onto, sp);
            if (w && *w > config.similarity_floor)
                added += give(ledgers.at(b), ratings_a);
        }
    }
    return added;
}

std::size_t share_by_trust(Ledgers& ledgers, const std::map<NodeId, std::vector<Rating>>& own,
                           const SharingConfig& config, const Ontologies& onto, const TrustParams& tp,
                           const SimilarityParams& sp)
{
    std::size_t added = 0;
    for (const auto& [source, ratings] : own) {
        std::map<std::pair<ConceptId, ConceptId>, std::vector<Rating>> by_task;
        for (const auto& r : ratings)
            by_task[{r.activity, r.object}].push_back(r);
        const RatingLedger& ledger = ledgers.at(source);
        for (auto& [target, target_ledger] : ledgers) {
            if (target == source)
                continue;
            for (const auto& [key, task_ratings] : by_task) {
                const Task task{key.first, key.second, {}};
                if (trust(ledger, source, target, task, config.now, onto, tp, sp) > tp.share_threshold)
                    added += give(target_ledger, task_ratings);
            }
        }
    }
    return added;
}

} // namespace

std::size_t share_ratings(Ledgers& ledgers, SharingPolicy policy, const SharingConfig& config,
                          const Ontologies& onto, const TrustParams& tp, const SimilarityParams& sp)
{
    // Snapshot first so that one pass never forwards what it just received.
    std::map<NodeId, std::vector<Rating>> own;
    for (const auto& [id, ledger] : ledgers)
        own[id] = own_ratings(ledger);

    switch (policy) {
    case SharingPolicy::None: return 0;
    case SharingPolicy::ManualList: return share_manual(ledgers, own, config);
    case SharingPolicy::RatingSimilarity: return share_by_similarity(ledgers, own, config, onto, sp);
    case SharingPolicy::TrustThreshold: return share_by_trust(ledgers, own, config, onto, tp, sp);
    }
    return 0;
}

} // namespace uhelp::trust
