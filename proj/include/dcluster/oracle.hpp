#pragma once

#include <optional>
#include <vector>

#include "dcluster/elimtree.hpp"
#include "dcluster/graph.hpp"

// Brute-force reference solvers, implemented straight from the problem
// definitions. They deliberately depend only on graph-core and the pure
// elimination-tree checker, never on any solver module, so that
// solver/oracle agreement is meaningful evidence.

namespace dcluster {
namespace oracle {

struct OracleBudget {
    int max_vertices = 12;
    int max_k = 6;
    int max_d = 4;
    // Overridable via DCLUSTER_ORACLE_MAX_N / _MAX_K / _MAX_D.
    static OracleBudget from_env();
};

struct DcdWitness {
    bool feasible = false;
    VertexSet deleted;
    std::vector<VertexSet> dominators;  // per component of G - deleted
};

struct EddcWitness {
    bool feasible = false;
    EliminationTree tree;
    std::vector<VertexSet> dominators;  // per component of G - S
};

// Enumerate S subseteq V\F with |S| <= k ascending size/lex; accept iff
// every component of G-S has a red-blue dominating set of size <= d.
DcdWitness brute_dcd(const AnnotatedInstance& inst,
                     const OracleBudget& budget = OracleBudget::from_env());

// Memoized recursion on (component, depth): pass at depth j iff every
// component is d-dominable as is, or j > 0 and the graph is disconnected
// with all components passing at j, or connected and some non-forbidden
// deletion passes at j-1.
EddcWitness brute_eddc(const AnnotatedInstance& inst,
                       const OracleBudget& budget = OracleBudget::from_env());

struct TreedepthResult {
    int depth = 0;
    EliminationTree tree;
};

// EDDC with d = 0 and everything deletable: minimal elimination depth.
TreedepthResult brute_treedepth(const Graph& g,
                                const OracleBudget& budget = OracleBudget::from_env());

enum class SkeletonKind { dcd, eddc };

// Every valid solution S' (plain for DCD, tree-structured of depth <= k for
// EDDC), reduced to its skeleton: the S'-vertices with a neighbor in the
// large component of G-S' and another neighbor in G-N[large component].
// Solutions whose residual has no component with more than q vertices are
// skipped (the extraction needs the large component).
std::vector<VertexSet> brute_skeletons(const Graph& g, int q, int k, int d, SkeletonKind kind,
                                       const OracleBudget& budget = OracleBudget::from_env());

// Tree-structured sets of the given maximum depth, enumerated together with
// a witness layering. Exposed for the EDDC-side tests.
bool is_tree_structured_within_depth(const Graph& g, const VertexSet& s, int depth);

}  // namespace oracle
}  // namespace dcluster
