#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcluster/graph.hpp"

namespace dcluster {

// Rooted tree decomposition with the derived views used throughout:
// adhesion(x) = bag(parent) cap bag(x), margin(x) = bag(x) \ adhesion(x),
// cone(x) = union of descendant bags, component(x) = cone(x) \ adhesion(x).
class TreeDecomposition {
public:
    struct Node {
        int parent = -1;
        VertexSet bag;
    };

    TreeDecomposition() = default;
    TreeDecomposition(int universe, std::vector<Node> nodes);

    int node_count() const { return int(nodes_.size()); }
    int universe() const { return universe_; }
    int root() const { return root_; }
    int parent(int x) const { return nodes_[x].parent; }
    const VertexSet& bag(int x) const { return nodes_[x].bag; }
    const std::vector<int>& children(int x) const { return children_[x]; }

    VertexSet adhesion(int x) const;
    VertexSet margin(int x) const;
    VertexSet cone(int x) const;
    VertexSet component(int x) const;

    // nodes in post order (children before parents), deterministic
    std::vector<int> post_order() const;

private:
    int universe_ = 0;
    int root_ = -1;
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> children_;
};

struct UnbreakabilityReport {
    bool holds = true;
    // violating separation (A, B) of order <= k with both |A cap X| > q and
    // |B cap X| > q, when holds is false
    std::optional<std::pair<VertexSet, VertexSet>> violating_separation;
};

// Exhaustive: separator candidates enumerated in ascending lexicographic
// order, components split two ways by subset sum on their |. cap x| values;
// the first violation found is reported.
UnbreakabilityReport is_unbreakable_set(const Graph& g, const VertexSet& x, int q, int k);

struct DecompositionReport {
    bool ok = true;
    std::string issue;
    int node = -1;
};

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td, int q,
                                           int k);

// Regularity: every non-root node has a non-empty margin, a connected
// component(x), and every adhesion vertex keeps a neighbor in component(x).
bool is_regular(const Graph& g, const TreeDecomposition& td);
TreeDecomposition make_regular(const Graph& g, const TreeDecomposition& td);

struct BuiltDecomposition {
    TreeDecomposition td;
    int q = 0;  // smallest value certified by validate_decomposition
};

// Desk-scale recursive splitter standing in for the 2^O(k^2) construction:
// exhaustively picks separators of order <= k that usefully shrink the
// current part, then certifies the smallest q a posteriori.
BuiltDecomposition build_decomposition(const Graph& g, int k);

// File format: `t <node-count>` then `n <id> <parent|-> <bag ids...>`,
// all 1-based.
TreeDecomposition parse_decomposition(std::istream& in, int vertex_count);
std::string serialize_decomposition(const TreeDecomposition& td);

}  // namespace dcluster
