#include "dcluster/oracle.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace dcluster {
namespace oracle {

namespace {

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    return v ? std::atoi(v) : fallback;
}

void check_budget(const AnnotatedInstance& inst, const OracleBudget& b) {
    if (inst.graph.vertex_count() > b.max_vertices || inst.k > b.max_k || inst.d > b.max_d)
        throw std::runtime_error("oracle budget exceeded (n=" +
                                 std::to_string(inst.graph.vertex_count()) + ", k=" +
                                 std::to_string(inst.k) + ", d=" + std::to_string(inst.d) + ")");
}

// Local exhaustive red-blue domination; kept private to this module on
// purpose (the solver modules have their own).
std::optional<VertexSet> rb_dominate(const Graph& g, const VertexSet& red, const VertexSet& blue,
                                     int d) {
    std::vector<int> blues = blue.to_vector();
    int n = int(blues.size());
    std::optional<VertexSet> found;
    VertexSet cur(g.vertex_count());
    std::function<bool(int, int)> rec = [&](int from, int remaining) -> bool {
        if (remaining == 0) {
            if ((red - closed_neighborhood(g, cur)).empty()) {
                found = cur;
                return true;
            }
            return false;
        }
        for (int i = from; i <= n - remaining; ++i) {
            cur.add(blues[i]);
            if (rec(i + 1, remaining - 1)) return true;
            cur.remove(blues[i]);
        }
        return false;
    };
    for (int size = 0; size <= std::min(d, n); ++size)
        if (rec(0, size)) return found;
    return std::nullopt;
}

bool components_dominable(const AnnotatedInstance& inst, const VertexSet& deleted,
                          std::vector<VertexSet>* dominators) {
    if (dominators) dominators->clear();
    for (const VertexSet& comp : connected_components(inst.graph, deleted)) {
        auto dom = rb_dominate(inst.graph, inst.red & comp, inst.blue & comp, inst.d);
        if (!dom) return false;
        if (dominators) dominators->push_back(*dom);
    }
    return true;
}

}  // namespace

OracleBudget OracleBudget::from_env() {
    OracleBudget b;
    b.max_vertices = env_int("DCLUSTER_ORACLE_MAX_N", b.max_vertices);
    b.max_k = env_int("DCLUSTER_ORACLE_MAX_K", b.max_k);
    b.max_d = env_int("DCLUSTER_ORACLE_MAX_D", b.max_d);
    return b;
}

DcdWitness brute_dcd(const AnnotatedInstance& inst, const OracleBudget& budget) {
    check_budget(inst, budget);
    DcdWitness w;
    VertexSet deletable = inst.graph.all_vertices() - inst.forbidden;
    std::vector<int> pool = deletable.to_vector();
    int n = int(pool.size());
    VertexSet cur(inst.graph.vertex_count());
    std::function<bool(int, int)> rec = [&](int from, int remaining) -> bool {
        if (remaining == 0) {
            if (components_dominable(inst, cur, &w.dominators)) {
                w.feasible = true;
                w.deleted = cur;
                return true;
            }
            return false;
        }
        for (int i = from; i <= n - remaining; ++i) {
            cur.add(pool[i]);
            if (rec(i + 1, remaining - 1)) return true;
            cur.remove(pool[i]);
        }
        return false;
    };
    for (int size = 0; size <= std::min(inst.k, n); ++size)
        if (rec(0, size)) break;
    return w;
}

namespace {

struct EddcSearch {
    const AnnotatedInstance& inst;
    // memo key: (component bitmask words, depth) -> chosen root vertex or -2
    // for "passes with no deletion", -3 for infeasible
    std::map<std::pair<std::vector<uint64_t>, int>, int> memo;

    explicit EddcSearch(const AnnotatedInstance& inst) : inst(inst) {}

    bool region_dominable(const VertexSet& region) {
        for (const VertexSet& comp :
             connected_components(inst.graph, inst.graph.all_vertices() - region))
            if (!rb_dominate(inst.graph, inst.red & comp, inst.blue & comp, inst.d)) return false;
        return true;
    }

    // Decides whether the (not necessarily connected) region passes at
    // depth j; fills parent links for deleted vertices when building.
    bool passes(const VertexSet& region, int j) {
        if (region.empty()) return true;
        auto key = std::make_pair(region.words(), j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second != -3;
        int decision = -3;
        if (region_dominable(region)) {
            decision = -2;
        } else if (j > 0) {
            auto comps = connected_components(inst.graph, inst.graph.all_vertices() - region);
            if (comps.size() > 1) {
                bool all = true;
                for (const VertexSet& comp : comps)
                    if (!passes(comp, j)) { all = false; break; }
                if (all) decision = -1;  // split marker
            } else {
                DCLUSTER_FOR_SET(v, region) {
                    if (inst.forbidden.contains(v)) continue;
                    VertexSet rest = region;
                    rest.remove(v);
                    if (passes(rest, j - 1)) { decision = v; break; }
                }
            }
        }
        memo[key] = decision;
        return decision != -3;
    }

    // Reconstructs deletions of a passing region into the elimination tree.
    void build(const VertexSet& region, int j, int parent_vertex,
               std::vector<std::pair<int, int>>& edges) {
        if (region.empty()) return;
        int decision = memo.at(std::make_pair(region.words(), j));
        if (decision == -2) return;
        if (decision == -1) {
            for (const VertexSet& comp :
                 connected_components(inst.graph, inst.graph.all_vertices() - region))
                build(comp, j, parent_vertex, edges);
            return;
        }
        edges.emplace_back(decision, parent_vertex);
        VertexSet rest = region;
        rest.remove(decision);
        build(rest, j - 1, decision, edges);
    }
};

}  // namespace

EddcWitness brute_eddc(const AnnotatedInstance& inst, const OracleBudget& budget) {
    check_budget(inst, budget);
    EddcWitness w;
    EddcSearch search(inst);
    VertexSet all = inst.graph.all_vertices();
    if (!search.passes(all, inst.k)) return w;
    std::vector<std::pair<int, int>> links;  // (vertex, parent vertex or -1)
    search.build(all, inst.k, -1, links);
    VertexSet s(inst.graph.vertex_count());
    for (auto [v, p] : links) s.add(v);
    w.feasible = true;
    w.tree.vertices = s.to_vector();
    w.tree.parent.assign(w.tree.vertices.size(), -1);
    for (auto [v, p] : links)
        if (p >= 0) w.tree.parent[w.tree.index_of(v)] = w.tree.index_of(p);
    for (const VertexSet& comp : connected_components(inst.graph, s)) {
        auto dom = rb_dominate(inst.graph, inst.red & comp, inst.blue & comp, inst.d);
        w.dominators.push_back(*dom);
    }
    return w;
}

namespace {

// The d = 0 specialization of the EDDC recursion: a region passes at depth j
// iff it is empty, or disconnected with every component passing at j, or
// connected with some vertex whose deletion passes at j-1. Subdivided
// corpus graphs reach ~25 vertices, so this variant adds failure memoization,
// a shortest-path lower bound, and skipping of same-neighborhood twins.
struct TreedepthSearch {
    const Graph& g;
    std::map<std::vector<uint64_t>, std::pair<int, int>> bounds;  // region -> {lo, hi}

    explicit TreedepthSearch(const Graph& g) : g(g) {}

    int eccentricity(const VertexSet& region, int start) {
        std::vector<int> dist(g.vertex_count(), -1);
        std::vector<int> queue{start};
        dist[start] = 0;
        int far = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            far = std::max(far, dist[v]);
            DCLUSTER_FOR_SET(w, g.neighbors(v) & region) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        return far;
    }

    int path_lower_bound(const VertexSet& region) {
        // td(P_{L+1}) = ceil(log2(L+2)) and a shortest path is a subgraph
        int u = region.first();
        int ecc = eccentricity(region, u);
        int lb = 0;
        while ((1 << lb) < ecc + 2) ++lb;
        return lb;
    }

    bool region_le(const VertexSet& region, int j) {
        if (region.empty()) return true;
        if (j <= 0) return false;
        auto comps = connected_components(g, g.all_vertices() - region);
        if (comps.size() > 1) {
            for (const VertexSet& comp : comps)
                if (!connected_le(comp, j)) return false;
            return true;
        }
        return connected_le(comps[0], j);
    }

    bool connected_le(const VertexSet& region, int j) {
        int n = region.count();
        if (n == 1) return j >= 1;
        auto it = bounds.find(region.words());
        if (it == bounds.end())
            it = bounds.emplace(region.words(), std::make_pair(path_lower_bound(region), n)).first;
        if (it->second.second <= j) return true;
        if (it->second.first > j) return false;
        std::vector<VertexSet> seen_nbrs;
        bool ok = false;
        DCLUSTER_FOR_SET(v, region) {
            VertexSet nb = g.neighbors(v) & region;
            bool dup = false;
            for (const VertexSet& s : seen_nbrs)
                if (s == nb) { dup = true; break; }
            if (dup) continue;  // twin: symmetric branch
            seen_nbrs.push_back(nb);
            VertexSet rest = region;
            rest.remove(v);
            if (region_le(rest, j - 1)) { ok = true; break; }
        }
        it = bounds.find(region.words());
        if (ok)
            it->second.second = std::min(it->second.second, j);
        else
            it->second.first = std::max(it->second.first, j + 1);
        return ok;
    }

    // replays a passing region to emit elimination-tree links
    void build(const VertexSet& region, int j, int parent,
               std::vector<std::pair<int, int>>& links) {
        if (region.empty()) return;
        auto comps = connected_components(g, g.all_vertices() - region);
        if (comps.size() > 1) {
            for (const VertexSet& comp : comps) build(comp, j, parent, links);
            return;
        }
        DCLUSTER_FOR_SET(v, region) {
            VertexSet rest = region;
            rest.remove(v);
            if (region_le(rest, j - 1)) {
                links.emplace_back(v, parent);
                build(rest, j - 1, v, links);
                return;
            }
        }
        throw std::logic_error("treedepth replay failed");
    }
};

}  // namespace

TreedepthResult brute_treedepth(const Graph& g, const OracleBudget&) {
    TreedepthResult res;
    if (g.vertex_count() == 0) return res;
    TreedepthSearch search(g);
    VertexSet all = g.all_vertices();
    int k = 0;
    while (!search.region_le(all, k)) ++k;
    res.depth = k;
    std::vector<std::pair<int, int>> links;
    search.build(all, k, -1, links);
    VertexSet s(g.vertex_count());
    for (auto [v, p] : links) s.add(v);
    res.tree.vertices = s.to_vector();
    res.tree.parent.assign(res.tree.vertices.size(), -1);
    for (auto [v, p] : links)
        if (p >= 0) res.tree.parent[res.tree.index_of(v)] = res.tree.index_of(p);
    return res;
}

bool is_tree_structured_within_depth(const Graph& g, const VertexSet& s, int depth) {
    // layering check: assign layers greedily by recursion — a region's
    // shallowest deleted vertex must be alone once the region is connected
    std::function<bool(const VertexSet&, int)> rec = [&](const VertexSet& region, int j) -> bool {
        VertexSet inside = region & s;
        if (inside.empty()) return true;
        if (j == 0) return false;
        auto comps = connected_components(g, g.all_vertices() - region);
        if (comps.size() > 1) {
            for (const VertexSet& comp : comps)
                if (!rec(comp, j)) return false;
            return true;
        }
        DCLUSTER_FOR_SET(v, inside) {
            VertexSet rest = region;
            rest.remove(v);
            if (rec(rest, j - 1)) return true;
        }
        return false;
    };
    return rec(g.all_vertices(), depth);
}

std::vector<VertexSet> brute_skeletons(const Graph& g, int q, int k, int d, SkeletonKind kind,
                                       const OracleBudget& budget) {
    AnnotatedInstance plain = AnnotatedInstance::plain(g, k, d);
    check_budget(plain, budget);
    std::vector<VertexSet> out;
    auto consider = [&](const VertexSet& sprime) {
        for (const VertexSet& comp : connected_components(g, sprime))
            if (!rb_dominate(g, comp, comp, d)) return;
        // skeleton extraction needs the unique large component of G - S'
        VertexSet large(g.vertex_count());
        for (const VertexSet& comp : connected_components(g, sprime))
            if (comp.count() > q) {
                if (!large.empty()) return;  // cannot happen on unbreakable inputs
                large = comp;
            }
        if (large.empty()) return;
        VertexSet beyond = g.all_vertices() - closed_neighborhood(g, large);
        VertexSet skel(g.vertex_count());
        DCLUSTER_FOR_SET(v, sprime) {
            if (g.neighbors(v).intersects(large) && g.neighbors(v).intersects(beyond)) skel.add(v);
        }
        for (const VertexSet& have : out)
            if (have == skel) return;
        out.push_back(skel);
    };

    if (kind == SkeletonKind::dcd) {
        std::vector<int> pool = g.all_vertices().to_vector();
        VertexSet cur(g.vertex_count());
        std::function<void(size_t, int)> rec = [&](size_t from, int size) {
            consider(cur);
            if (size == k) return;
            for (size_t i = from; i < pool.size(); ++i) {
                cur.add(pool[i]);
                rec(i + 1, size + 1);
                cur.remove(pool[i]);
            }
        };
        rec(0, 0);
    } else {
        // tree-structured S' of depth <= k may be large: enumerate all
        // subsets, filter by the layering check
        int n = g.vertex_count();
        for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
            VertexSet sprime(n);
            for (int v = 0; v < n; ++v)
                if ((mask >> v) & 1) sprime.add(v);
            if (!is_tree_structured_within_depth(g, sprime, k)) continue;
            consider(sprime);
        }
    }
    return out;
}

}  // namespace oracle
}  // namespace dcluster
