#pragma once

#include <string>
#include <vector>

#include "dcluster/graph.hpp"

namespace dcluster {

// DP table entry describing how a solution intersects an adhesion set A:
// deleted trace s_a, dominator trace d_a, reds left for the parent u_a, the
// exact count k_a of deletions strictly outside A, and the partition of
// A \ s_a into component traces with a dominator budget per part.
struct Mark {
    VertexSet s_a, d_a, u_a;
    int k_a = 0;
    std::vector<VertexSet> parts;
    std::vector<int> part_budget;

    void canonicalize();
    bool operator==(const Mark& o) const;
    bool operator<(const Mark& o) const;
    std::string to_string() const;
};

// All syntactically valid marks of A, canonically ordered. Members of A are
// assigned to s_a/d_a/u_a or a partition block; budgets run 0..d and k_a
// runs 0..k (capped so |s_a| + k_a stays within k).
std::vector<Mark> enumerate_marks(const VertexSet& a, int k, int d);

// u_a vertices outside R never influence realization; profiles are stored
// with u_a restricted to red.
Mark normalize_mark(const Mark& m, const AnnotatedInstance& inst);

// Definition-level test: exhaustively searches deletion sets S with
// S cap A = s_a and exactly k_a vertices outside A, then per-component
// dominator sets matching the partition, budgets, d_a and u_a clauses.
bool mark_realized_brute(const Graph& g, const AnnotatedInstance& inst, const VertexSet& a,
                         const Mark& m);

}  // namespace dcluster
