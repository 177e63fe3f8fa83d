#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dcluster/baggraph.hpp"
#include "dcluster/decomposition.hpp"
#include "dcluster/dp.hpp"
#include "dcluster/elimtree.hpp"

namespace dcluster {

// Extended mark: deletion traces per elimination layer, dominator and
// undominated traces, and per part of the remaining adhesion a dominator
// budget plus reach flags r^i (the part can reach a layer-i deleted vertex
// avoiding lower layers).
struct ExtendedMark {
    std::vector<VertexSet> layers;  // L_A^1..L_A^k
    VertexSet d_a, u_a;
    std::vector<VertexSet> parts;
    std::vector<int> part_budget;
    std::vector<uint32_t> part_reach;  // bit (i-1) = r^i

    // Composition across nodes additionally needs, per layer threshold i,
    // how the cone connects the surviving adhesion vertices once layers
    // below i are removed, and whether each such class reaches a layer-i
    // deleted vertex. The paper folds this into its sanity checks; here it
    // travels with the mark.
    std::vector<std::vector<VertexSet>> threshold_classes;  // [i-1] partitions A \ L^{<i}
    std::vector<std::vector<char>> threshold_reach;         // parallel flags

    void canonicalize();
    bool operator==(const ExtendedMark& o) const;
    bool operator<(const ExtendedMark& o) const;
    std::string to_string() const;
};

// All realized extended marks of `a` in g, straight from the definition:
// enumerate layered deletion sets and collect the induced marks.
std::vector<ExtendedMark> brute_extended_profile(const Graph& g, const AnnotatedInstance& inst,
                                                 const VertexSet& a);

bool extended_mark_realized_brute(const Graph& g, const AnnotatedInstance& inst, const VertexSet& a,
                                  const ExtendedMark& m);

struct EddcCertificate {
    EliminationTree tree;
    VertexSet dominators;
    std::vector<std::pair<VertexSet, VertexSet>> components;
};

struct EddcDpOptions {
    bool neutral_shortcut = true;
    bool record_traces = true;
    bool dominator_guessing_backend = false;  // n^O(d) skeleton route on bag graphs
};

class EddcDp {
public:
    EddcDp(const Graph& g, const AnnotatedInstance& inst, const TreeDecomposition& td, int q,
           EddcDpOptions options = {});

    void run();
    const std::vector<ExtendedMark>& profile(int node) const { return profiles_[node]; }
    std::optional<EddcCertificate> solve();
    const DpStats& stats() const { return stats_; }
    const std::vector<WalkTrace>& traces() const { return traces_; }

private:
    struct Assembly {
        std::vector<VertexSet> bag_layers;  // committed + new bag deletions per layer
        VertexSet d_hat;
        std::vector<std::pair<int, ExtendedMark>> child_marks;
        VertexSet h_dominators;  // original ids, interior picks
    };

    void compute_node(int x);
    void collect(int x, const ExtendedMark& m, std::vector<VertexSet>& layers,
                 VertexSet& dominators) const;

    const Graph& g_;
    AnnotatedInstance inst_;
    const TreeDecomposition& td_;
    int q_;
    EddcDpOptions options_;
    std::vector<std::vector<ExtendedMark>> profiles_;
    std::vector<std::map<ExtendedMark, Assembly>> assemblies_;
    std::vector<WalkTrace> traces_;
    DpStats stats_;
    bool ran_ = false;
};

struct EddcOutcome {
    bool feasible = false;
    std::optional<EddcCertificate> certificate;
    DpStats stats;
};

EddcOutcome solve_aeddc(const Graph& g, const AnnotatedInstance& inst,
                        const std::optional<TreeDecomposition>& imported = std::nullopt,
                        EddcDpOptions options = {});

bool verify_eddc_certificate(const Graph& g, const AnnotatedInstance& inst,
                             const EddcCertificate& cert);

}  // namespace dcluster
