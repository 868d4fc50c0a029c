#pragma once

#include "uhelp/ontology/hierarchy.hpp"

namespace uhelp::ontology {

// Weights of the distance/depth/density similarity measure.
//   sim = exp(-distance_decay * l) * tanh(depth_gain * h) * tanh(density_gain * d)
struct SimilarityParams {
    double distance_decay = 0.2;  // on path distance l
    double depth_gain = 0.6;      // on subsumer depth h
    double density_gain = 0.5;    // on subsumer information content d
    double cutoff = 0.25;         // similarities at or below this are discarded by sim_obj

    // Throws std::invalid_argument unless the gains are positive and the
    // cutoff lies in [0,1].
    void validate() const;
};

// Value in [0,1). Symmetric in (a, b).
double semantic_similarity(const Hierarchy& h, ConceptId a, ConceptId b,
                           const SimilarityParams& p = {});

// semantic_similarity when it strictly exceeds p.cutoff, else 0.
double sim_obj(const Hierarchy& h, ConceptId a, ConceptId b, const SimilarityParams& p = {});

} // namespace uhelp::ontology
