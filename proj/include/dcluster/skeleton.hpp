#pragma once

#include <optional>
#include <vector>

#include "dcluster/elimtree.hpp"
#include "dcluster/graph.hpp"

namespace dcluster {

// Solvers for Dominated Cluster Deletion and Elimination Distance to
// Dominated Clusters restricted to (q,k)-unbreakable graphs. Callers are
// responsible for verifying unbreakability; graphs too small for the
// structural lemmas are routed to the brute-force oracle.

struct DcdSolution {
    VertexSet deleted;
    std::vector<std::pair<VertexSet, VertexSet>> components;  // (component, dominators)
};

struct EddcSolution {
    EliminationTree tree;
    std::vector<std::pair<VertexSet, VertexSet>> components;
};

// Bounded search tree over hitting vertices: X a dominating set of size
// <= q+d, Y the neighborhoods of its low-degree members, Z one more
// neighborhood layer; branch on X cup Y cup Z, always keeping the empty
// set. Empty family when no q+d dominating set exists.
std::vector<VertexSet> skeleton_candidates(const Graph& g, int q, int k, int d);

// Extension test: brute-force the small side G - s - C0 for the optimal
// deletion count, then annotated partial domination inside the large
// component with the remaining budget.
std::optional<DcdSolution> check_skeleton_dcd(const Graph& g, const VertexSet& s, int q, int k,
                                              int d);

std::optional<DcdSolution> solve_dcd_unbreakable(const Graph& g, int q, int k, int d);

std::optional<EddcSolution> solve_eddc_unbreakable(const Graph& g, int q, int k, int d);

// The n^O(d) route: guess the dominating set D of the large component; every
// true skeleton is contained in the emitted superset S2 of its branch.
struct DominatorGuess {
    VertexSet dominators;         // D
    VertexSet skeleton_superset;  // S2
};
std::vector<DominatorGuess> skeletons_via_dominator_guessing(const Graph& g, int q, int k, int d);

}  // namespace dcluster
