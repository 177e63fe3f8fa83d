#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dcluster/baggraph.hpp"
#include "dcluster/decomposition.hpp"
#include "dcluster/marks.hpp"

namespace dcluster {

struct DpOptions {
    bool neutral_shortcut = true;
    bool record_traces = true;
};

// branching trace of one mark-shape walk: each non-leaf either commits a
// neutral child mark (one White child) or branches over realized marks
// (Black children only)
struct WalkTrace {
    struct Node {
        bool white = false;
        std::vector<int> children;
    };
    std::vector<Node> nodes;  // 0 is the root
    int decomposition_node = -1;
    long long leaves() const;
    int depth() const;
    bool valid_black_white() const;
    int max_black_path() const;
};

struct BlackWhiteReport {
    bool valid = true;
    long long traces = 0;
    long long total_nodes = 0;
    long long max_leaves = 0;
    long long leaf_bound = 0;  // alpha^beta
    int alpha = 1;
    int beta = 0;
};

BlackWhiteReport branch_accounting(const std::vector<WalkTrace>& traces, int alpha, int beta);

struct DpStats {
    int q = 0;
    int decomposition_nodes = 0;
    long long shapes_walked = 0;
    long long branches = 0;
    long long leaves = 0;
    long long bag_solver_calls = 0;
    int max_profile_size = 0;
};

struct AdcdCertificate {
    VertexSet deleted;
    VertexSet dominators;
    std::vector<std::pair<VertexSet, VertexSet>> components;  // re-derived, verified
};

// Bottom-up profile computation over a valid regular unbreakable tree
// decomposition (Appendix-B backtracking per node), plus root acceptance
// with certificate reconstruction.
class AdcdDp {
public:
    AdcdDp(const Graph& g, const AnnotatedInstance& inst, const TreeDecomposition& td, int q,
           DpOptions options = {});

    void run();

    const std::vector<Mark>& profile(int node) const { return profiles_[node]; }
    bool realized(int node, const Mark& m) const;

    std::optional<AdcdCertificate> solve();

    const DpStats& stats() const { return stats_; }
    const std::vector<WalkTrace>& traces() const { return traces_; }
    int trace_alpha() const;
    int trace_beta() const;

private:
    struct Assembly {
        VertexSet s_hat, d_hat;
        std::vector<std::pair<int, Mark>> child_marks;
        VertexSet h_deleted;     // original ids
        VertexSet h_dominators;  // original ids, interior picks only
    };

    void compute_node(int x);
    void collect(int x, const Mark& m, VertexSet& deleted, VertexSet& dominators) const;

    const Graph& g_;
    AnnotatedInstance inst_;
    const TreeDecomposition& td_;
    int q_;
    DpOptions options_;
    std::vector<std::vector<Mark>> profiles_;
    std::vector<std::map<Mark, Assembly>> assemblies_;
    std::vector<WalkTrace> traces_;
    DpStats stats_;
    bool ran_ = false;
};

// Convenience front door: build or take a decomposition, regularize,
// validate, run the DP. Returns verdict plus certificate.
struct AdcdOutcome {
    bool feasible = false;
    std::optional<AdcdCertificate> certificate;
    DpStats stats;
};

AdcdOutcome solve_adcd(const Graph& g, const AnnotatedInstance& inst,
                       const std::optional<TreeDecomposition>& imported = std::nullopt,
                       DpOptions options = {});

// Pure re-check of an emitted certificate against the instance.
bool verify_adcd_certificate(const Graph& g, const AnnotatedInstance& inst,
                             const AdcdCertificate& cert);

}  // namespace dcluster
