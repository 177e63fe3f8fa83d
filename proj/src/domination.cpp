#include "dcluster/domination.hpp"

#include "dcluster/util.hpp"

namespace dcluster {

std::optional<VertexSet> min_dominating_set(const Graph& g, int bound) {
    std::optional<VertexSet> found;
    VertexSet all = g.all_vertices();
    for_each_subset_by_size(all, bound, [&](const VertexSet& d) {
        if (all.subset_of(closed_neighborhood(g, d))) {
            found = d;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<VertexSet> red_blue_dominating_set(const Graph& g, const VertexSet& red,
                                                 const VertexSet& blue, int d) {
    // a red vertex with no blue in its closed neighborhood is hopeless
    DCLUSTER_FOR_SET(r, red) {
        if (!g.closed_neighborhood(r).intersects(blue)) return std::nullopt;
    }
    std::optional<VertexSet> found;
    for_each_subset_by_size(blue, d, [&](const VertexSet& dom) {
        if ((red - closed_neighborhood(g, dom)).empty()) {
            found = dom;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<PartialDominationSolution> annotated_partial_domination(const AnnotatedInstance& inst) {
    std::optional<PartialDominationSolution> found;
    for_each_subset_by_size(inst.blue, inst.d, [&](const VertexSet& dom) {
        VertexSet undominated = inst.red - closed_neighborhood(inst.graph, dom);
        if (undominated.count() <= inst.k && !undominated.intersects(inst.forbidden)) {
            found = PartialDominationSolution{undominated, dom};
            return true;
        }
        return false;
    });
    return found;
}

std::optional<PartialDominationSolution> annotated_partial_domination_exact(
    const AnnotatedInstance& inst, int exact_k) {
    std::optional<PartialDominationSolution> found;
    VertexSet all = inst.graph.all_vertices();
    for_each_subset_by_size(inst.blue, inst.d, [&](const VertexSet& dom) {
        VertexSet undominated = inst.red - closed_neighborhood(inst.graph, dom);
        if (undominated.count() > exact_k || undominated.intersects(inst.forbidden)) return false;
        // pad X with deletable vertices that are neither dominators nor
        // already forced; extra deletions never break plain domination
        VertexSet room = all - inst.forbidden - dom - undominated;
        if (undominated.count() + room.count() < exact_k) return false;
        VertexSet x = undominated;
        int need = exact_k - x.count();
        DCLUSTER_FOR_SET(v, room) {
            if (need == 0) break;
            x.add(v);
            --need;
        }
        found = PartialDominationSolution{x, dom};
        return true;
    });
    return found;
}

}  // namespace dcluster
