#pragma once

#include <vector>

#include "dcluster/graph.hpp"

namespace dcluster {

// Rooted forest over a tree-structured deletion set S: labeling maps each
// vertex of S to a node; every G-path between two S-vertices must contain a
// vertex labeling a common ancestor. Stored as a parent array over S's
// vertices directly (node ids are vertex ids), parent -1 for roots.
struct EliminationTree {
    std::vector<int> vertices;  // members of S, ascending
    std::vector<int> parent;    // parallel to vertices, -1 for roots
    int depth() const;
    bool is_ancestor(int anc_index, int idx) const;
    int index_of(int vertex) const;  // -1 when absent
};

// Layer-peeling validity check: in every connected region the shallowest
// labeled vertex must be unique and everything else must sit strictly below
// it; peel and recurse on the remaining components.
bool validate_elimination_tree(const Graph& g, const EliminationTree& et);

// A depth-|S| comb: each vertex the parent of the next. Any plain deletion
// set is tree-structured this way.
EliminationTree comb_tree(const VertexSet& s);

}  // namespace dcluster
