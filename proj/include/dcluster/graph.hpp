#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcluster/vertex_set.hpp"

namespace dcluster {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simple undirected graph, immutable after construction. Vertex ids are
// 0..n-1 in the canonical order fixed at parse/build time; deletion is
// always expressed by passing a removed-set to the operations below.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edge_list);

    int vertex_count() const { return n_; }
    int edge_count() const { return int(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const { return adj_[u].contains(v); }
    const VertexSet& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }
    VertexSet all_vertices() const { return VertexSet::full(n_); }

    VertexSet closed_neighborhood(int v) const {
        VertexSet s = adj_[v];
        s.add(v);
        return s;
    }

    // Induced subgraph on `keep`; returns the new graph and the map from
    // new ids back to original ids (ascending).
    std::pair<Graph, std::vector<int>> induced(const VertexSet& keep) const;

    bool connected_ignoring(const VertexSet& removed) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<VertexSet> adj_;
};

struct GraphStats {
    int max_degree = 0;
    int degeneracy = 0;
};

Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
std::string serialize_graph(const Graph& g);

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& removed);
VertexSet component_of(const Graph& g, int start, const VertexSet& removed);
VertexSet closed_neighborhood(const Graph& g, const VertexSet& s);
Graph double_subdivide(const Graph& g);
GraphStats graph_stats(const Graph& g);

// Annotated instance for the partial-domination style problems: forbidden
// vertices may never be deleted, Red vertices need domination, Blue
// vertices are the allowed dominators. Sets need not be disjoint.
struct AnnotatedInstance {
    Graph graph;
    VertexSet forbidden;
    VertexSet red;
    VertexSet blue;
    int k = 0;
    int d = 0;

    static AnnotatedInstance plain(const Graph& g, int k, int d) {
        AnnotatedInstance inst;
        inst.graph = g;
        inst.forbidden = VertexSet(g.vertex_count());
        inst.red = VertexSet::full(g.vertex_count());
        inst.blue = VertexSet::full(g.vertex_count());
        inst.k = k;
        inst.d = d;
        return inst;
    }
};

// Annotation file: `F <ids...>` / `R <ids...>` / `B <ids...>` lines with
// 1-based ids; a missing F line means the empty set, missing R or B means
// every vertex.
struct Annotations {
    VertexSet forbidden;
    VertexSet red;
    VertexSet blue;
};
Annotations parse_annotations(std::istream& in, int vertex_count);

}  // namespace dcluster
