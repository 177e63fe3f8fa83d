#pragma once

#include <optional>

#include "dcluster/graph.hpp"

namespace dcluster {

struct PartialDominationSolution {
    VertexSet deleted;     // X
    VertexSet dominators;  // D
};

// Smallest dominating set of size <= bound, lexicographically first among
// the minimum-size ones; nullopt when none exists within the bound.
std::optional<VertexSet> min_dominating_set(const Graph& g, int bound);

// D subseteq blue with |D| <= d and red subseteq N[D]; canonical-first.
std::optional<VertexSet> red_blue_dominating_set(const Graph& g, const VertexSet& red,
                                                 const VertexSet& blue, int d);

// Enumerates D subseteq blue by ascending size then lex; the deletion set is
// X = red \ N[D] (optimal for fixed D since dominators self-dominate).
// Accepts the first D with X disjoint from forbidden and |X| <= k.
std::optional<PartialDominationSolution> annotated_partial_domination(const AnnotatedInstance& inst);

// Same problem but the deletion count must be exactly `exact_k`: feasible
// iff some D leaves |red \ N[D]| <= exact_k undominated and the component
// has room for the remaining padding deletions outside F, D and the
// undominated set. Used by the profile DP, where deletion counters are
// exact by definition.
std::optional<PartialDominationSolution> annotated_partial_domination_exact(
    const AnnotatedInstance& inst, int exact_k);

}  // namespace dcluster
