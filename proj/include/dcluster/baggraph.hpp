#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dcluster/decomposition.hpp"
#include "dcluster/graph.hpp"

namespace dcluster {

// One-subdivided star: apex a, mids b_1..b_p, leaves b'_1..b'_p, with b_i
// adjacent to a and to b'_i only. Plugging makes every plug target adjacent
// to the apex. Mids are blue and leaves red, so a p-gadget in a component
// eats exactly p of that component's dominator budget.
struct DGadget {
    int apex = -1;
    std::vector<int> inner;  // b_i, blue
    std::vector<int> outer;  // b'_i, red
    VertexSet plug_targets;  // bag-graph ids, all adjacent to apex
};

struct BagGraph {
    Graph graph;
    VertexSet interior;  // I
    VertexSet exterior;  // E = gadget vertices
    std::vector<DGadget> gadgets;
    struct Provenance {
        int child_node = -1;          // decomposition node the gadget came from, -1 for extras
        VertexSet original_component;  // contracted component in original ids
    };
    std::vector<Provenance> provenance;      // parallel to gadgets
    std::vector<int> interior_to_original;   // bag-graph interior id -> original id

    // colors implied by the gadget convention
    VertexSet gadget_red() const;
    VertexSet gadget_blue() const;
};

struct GadgetSpec {
    VertexSet plug_targets;  // original-graph ids
    int size = 0;
    int child_node = -1;
    VertexSet original_component;
};

// Interior = induced subgraph on `interior_vertices` (original ids); gadget
// ids are allocated above the interior so solutions translate back.
BagGraph assemble_bag_graph(const Graph& g, const VertexSet& interior_vertices,
                            const std::vector<GadgetSpec>& gadgets);

// Def-style construction at a decomposition node: graph[cone(x) \ s] with
// every component of comp(y) \ s that touches adh(y) \ s contracted to a
// plugged gadget, plus the requested extra gadgets on adh(x).
// `child_parts[y]` lists (component, gadget size) and must match the actual
// components exactly.
BagGraph build_bag_graph(const Graph& g, const TreeDecomposition& td, int x, const VertexSet& s,
                         const std::map<int, std::vector<std::pair<VertexSet, int>>>& child_parts,
                         const std::vector<GadgetSpec>& extra_gadgets);

// Convenience: the structural bag graph of a node (s = empty, one d-gadget
// per child component, `adhesion_gadgets` extra d-gadgets on adh(x)).
BagGraph structural_bag_graph(const Graph& g, const TreeDecomposition& td, int x, int d,
                              int adhesion_gadgets);

// q-saturation of an interior vertex: its close set (interior vertices
// adjacent or linked through exterior-only paths) when that set has at most
// q members, else just {u}; u itself is always included and never counted.
VertexSet saturate(const BagGraph& bg, int u, int q);

// sat_q^i over a set; exterior members pass through unchanged and contribute
// the interior attachment of their gadget component once.
VertexSet saturate_power(const BagGraph& bg, const VertexSet& xs, int q, int i);

struct BagSkeletonSolution {
    VertexSet deleted;  // subset of I, bag-graph ids
    std::vector<std::pair<VertexSet, VertexSet>> components;  // (component, dominators)
};

// Extra constraints threaded through by the profile DP.
struct BagSolveOptions {
    VertexSet forced_dominators;       // must appear in their component's dominator set
    std::vector<VertexSet> separate;   // pairwise different components required
    std::optional<int> exact_deletions;
    bool skip_exterior_blue_check = false;
};

// Appendix-A solver: red-blue dominating set of size <= 3qd, saturation
// branching into candidate skeletons, then extension by small-side brute
// force and partial domination in the large component. Falls back to plain
// brute force when the 3qd dominating set does not exist or no component has
// more than q interior vertices (the regime where the branching lemmas do
// not apply).
std::optional<BagSkeletonSolution> solve_adcd_on_bag_graph(const BagGraph& bg,
                                                           const VertexSet& forbidden,
                                                           const VertexSet& red,
                                                           const VertexSet& blue, int k, int d,
                                                           int q,
                                                           const BagSolveOptions& opts = {});

// The candidate family explored by the annotated skeleton-algorithm
// (exposed for tests and accounting).
std::vector<VertexSet> annotated_skeleton_candidates(const BagGraph& bg, const VertexSet& forbidden,
                                                     const VertexSet& red, const VertexSet& blue,
                                                     int k, int d, int q);

// Checks one concrete deletion set against the per-component domination,
// forced-dominator and separation requirements; used by the elimination
// DP whose deletions carry layer assignments of their own.
std::optional<BagSkeletonSolution> verify_bag_config(const BagGraph& bg, const VertexSet& forbidden,
                                                     const VertexSet& red, const VertexSet& blue,
                                                     int d, const BagSolveOptions& opts,
                                                     const VertexSet& deleted);

}  // namespace dcluster
