#include "dcluster/elimtree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dcluster {

int EliminationTree::depth() const {
    int best = 0;
    for (size_t i = 0; i < vertices.size(); ++i) {
        int d = 0;
        for (int j = int(i); j >= 0; j = parent[j]) ++d;
        best = std::max(best, d);
    }
    return best;
}

bool EliminationTree::is_ancestor(int anc_index, int idx) const {
    for (int j = idx; j >= 0; j = parent[j])
        if (j == anc_index) return true;
    return false;
}

int EliminationTree::index_of(int vertex) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), vertex);
    if (it == vertices.end() || *it != vertex) return -1;
    return int(it - vertices.begin());
}

bool validate_elimination_tree(const Graph& g, const EliminationTree& et) {
    if (et.vertices.size() != et.parent.size()) throw std::invalid_argument("malformed labeling");
    VertexSet s(g.vertex_count());
    for (int v : et.vertices) {
        if (v < 0 || v >= g.vertex_count() || s.contains(v))
            throw std::invalid_argument("malformed labeling");
        s.add(v);
    }
    for (size_t i = 0; i < et.parent.size(); ++i)
        if (et.parent[i] >= int(et.vertices.size())) throw std::invalid_argument("malformed labeling");

    // peel(region): the labeled vertices of a connected region must have a
    // unique shallowest member whose node is an ancestor of all the others
    std::function<bool(const VertexSet&)> peel = [&](const VertexSet& region) -> bool {
        VertexSet labeled = region & s;
        if (labeled.empty()) return true;
        int top = -1;
        // find the member whose node is an ancestor of every labeled member
        DCLUSTER_FOR_SET(v, labeled) {
            int vi = et.index_of(v);
            bool all = true;
            DCLUSTER_FOR_SET(u, labeled) {
                if (!et.is_ancestor(vi, et.index_of(u))) { all = false; break; }
            }
            if (all) { top = vi; break; }
        }
        if (top < 0) return false;  // two incomparable shallow vertices in one region
        VertexSet rest = region;
        rest.remove(et.vertices[top]);
        VertexSet outside = g.all_vertices() - rest;
        for (const VertexSet& comp : connected_components(g, outside))
            if (!peel(comp)) return false;
        return true;
    };

    VertexSet removed(g.vertex_count());
    for (const VertexSet& comp : connected_components(g, removed))
        if (!peel(comp)) return false;
    return true;
}

EliminationTree comb_tree(const VertexSet& set) {
    EliminationTree et;
    et.vertices = set.to_vector();
    et.parent.resize(et.vertices.size());
    for (size_t i = 0; i < et.vertices.size(); ++i) et.parent[i] = int(i) - 1;
    return et;
}

}  // namespace dcluster
