#pragma once

#include <vector>

#include "dcluster/graph.hpp"

namespace dcluster {

// Semi-ladder of order n: sequences a_1..a_n, b_1..b_n of 2n distinct
// vertices with {a_i,b_j} an edge for all i>j and {a_i,b_i} a non-edge.
// Nothing is required for i<j.
struct SemiLadderWitness {
    std::vector<int> a_seq;
    std::vector<int> b_seq;
    int order() const { return int(a_seq.size()); }
};

struct SemiLadderResult {
    // Exact index when <= cap; cap+1 means "at least cap+1" (search cutoff).
    int index = 0;
    bool lower_bound_only = false;
    SemiLadderWitness witness;  // of order min(index, cap+1)
};

bool verify_semi_ladder(const Graph& g, const SemiLadderWitness& w);
SemiLadderResult semi_ladder_index(const Graph& g, int cap);

}  // namespace dcluster
