#include "uhelp/ontology/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace uhelp::ontology {

void SimilarityParams::validate() const
{
    if (!(distance_decay > 0.0) || !(depth_gain > 0.0) || !(density_gain > 0.0))
        throw std::invalid_argument("similarity gains must be positive");
    if (!(cutoff >= 0.0 && cutoff <= 1.0))
        throw std::invalid_argument("similarity cutoff must lie in [0,1]");
}

double semantic_similarity(const Hierarchy& h, ConceptId a, ConceptId b, const SimilarityParams& p)
{
    const auto sub = most_specific_subsumer(h, a, b);
    const auto l = static_cast<double>(path_distance(h, a, b));
    const auto depth_h = static_cast<double>(h.depth(sub));
    const double d = information_content(h, sub);
    return std::exp(-p.distance_decay * l) * std::tanh(p.depth_gain * depth_h) *
           std::tanh(p.density_gain * d);
}

double sim_obj(const Hierarchy& h, ConceptId a, ConceptId b, const SimilarityParams& p)
{
    const double s = semantic_similarity(h, a, b, p);
    return s > p.cutoff ? s : 0.0;
}

} // namespace uhelp::ontology
