#include "dcluster/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "dcluster/domination.hpp"
#include "dcluster/oracle.hpp"
#include "dcluster/util.hpp"

namespace dcluster {

namespace {

// dominating set of the residual graph, smallest then lex-first
std::optional<VertexSet> residual_dominating_set(const Graph& g, const VertexSet& removed,
                                                 int bound) {
    VertexSet alive = g.all_vertices() - removed;
    std::optional<VertexSet> found;
    for_each_subset_by_size(alive, bound, [&](const VertexSet& dom) {
        VertexSet covered = dom;
        DCLUSTER_FOR_SET(v, dom) covered |= g.neighbors(v) - removed;
        if ((alive - covered).empty()) {
            found = dom;
            return true;
        }
        return false;
    });
    return found;
}

struct CandidateSearch {
    const Graph& g;
    int q, d;
    std::map<std::pair<std::vector<uint64_t>, int>, std::vector<VertexSet>> memo;

    std::vector<VertexSet> run(const VertexSet& removed, int k) {
        auto key = std::make_pair(removed.words(), k);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<VertexSet> out{removed};
        if (k > 0) {
            auto x = residual_dominating_set(g, removed, q + d);
            if (!x) {
                out.clear();  // no q+d dominating set: empty family
            } else {
                VertexSet alive = g.all_vertices() - removed;
                auto residual_degree = [&](int v) { return (g.neighbors(v) - removed).count(); };
                VertexSet branch = *x;
                VertexSet y(g.vertex_count());
                DCLUSTER_FOR_SET(v, *x) {
                    if (residual_degree(v) <= q) y |= g.neighbors(v) - removed;
                }
                VertexSet z(g.vertex_count());
                DCLUSTER_FOR_SET(v, y) {
                    if (residual_degree(v) <= q) z |= g.neighbors(v) - removed;
                }
                branch |= y;
                branch |= z;
                DCLUSTER_FOR_SET(v, branch) {
                    VertexSet next = removed;
                    next.add(v);
                    for (const VertexSet& f : run(next, k - 1)) push_unique(out, f);
                }
            }
        }
        memo[key] = out;
        return out;
    }

    static void push_unique(std::vector<VertexSet>& fam, const VertexSet& s) {
        for (const VertexSet& have : fam)
            if (have == s) return;
        fam.push_back(s);
    }
};

// minimum deletions making every component of the region d-dominable;
// deletions and dominators stay inside the region
struct SmallSideFix {
    int deletions = 0;
    VertexSet deleted;
    std::vector<std::pair<VertexSet, VertexSet>> components;
};

std::optional<SmallSideFix> fix_small_side(const Graph& g, const VertexSet& region, int cap,
                                           int d) {
    auto [sub, back] = g.induced(region);
    std::optional<SmallSideFix> best;
    for_each_subset_by_size(sub.all_vertices(), std::min(cap, sub.vertex_count()),
                            [&](const VertexSet& w) {
                                std::vector<std::pair<VertexSet, VertexSet>> doms;
                                for (const VertexSet& piece : connected_components(sub, w)) {
                                    auto [pg, pback] = sub.induced(piece);
                                    auto dom = min_dominating_set(pg, d);
                                    if (!dom) return false;
                                    VertexSet piece_orig(g.vertex_count()),
                                        dom_orig(g.vertex_count());
                                    DCLUSTER_FOR_SET(v, piece) piece_orig.add(back[v]);
                                    DCLUSTER_FOR_SET(v, *dom) dom_orig.add(back[pback[v]]);
                                    doms.emplace_back(piece_orig, dom_orig);
                                }
                                SmallSideFix fix;
                                fix.deletions = w.count();
                                fix.deleted = VertexSet(g.vertex_count());
                                DCLUSTER_FOR_SET(v, w) fix.deleted.add(back[v]);
                                fix.components = std::move(doms);
                                best = std::move(fix);
                                return true;
                            });
    return best;
}

std::optional<DcdSolution> verify_dcd(const Graph& g, const VertexSet& deleted, int d) {
    DcdSolution sol;
    sol.deleted = deleted;
    for (const VertexSet& comp : connected_components(g, deleted)) {
        auto [cg, cback] = g.induced(comp);
        auto dom = min_dominating_set(cg, d);
        if (!dom) return std::nullopt;
        VertexSet dom_orig(g.vertex_count());
        DCLUSTER_FOR_SET(v, *dom) dom_orig.add(cback[v]);
        sol.components.emplace_back(comp, dom_orig);
    }
    return sol;
}

}  // namespace

std::vector<VertexSet> skeleton_candidates(const Graph& g, int q, int k, int d) {
    CandidateSearch search{g, q, d, {}};
    std::vector<VertexSet> fam = search.run(VertexSet(g.vertex_count()), k);
    std::sort(fam.begin(), fam.end());
    return fam;
}

std::optional<DcdSolution> check_skeleton_dcd(const Graph& g, const VertexSet& s, int q, int k,
                                              int d) {
    if (s.count() > k) return std::nullopt;
    auto comps = connected_components(g, s);
    int large = -1;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].count() > q) {
            if (large >= 0) return std::nullopt;  // unbreakability rules this out
            large = int(i);
        }
    }
    VertexSet small_side(g.vertex_count());
    for (size_t i = 0; i < comps.size(); ++i)
        if (int(i) != large) small_side |= comps[i];

    int budget = k - s.count();
    auto fix = fix_small_side(g, small_side, budget, d);
    if (!fix) return std::nullopt;
    int remaining = budget - fix->deletions;

    VertexSet deleted = s | fix->deleted;
    if (large >= 0) {
        auto [cg, cback] = g.induced(comps[large]);
        AnnotatedInstance apd;
        apd.graph = cg;
        apd.forbidden = VertexSet(cg.vertex_count());
        apd.red = VertexSet::full(cg.vertex_count());
        apd.blue = VertexSet::full(cg.vertex_count());
        apd.k = remaining;
        apd.d = d;
        auto pd = annotated_partial_domination(apd);
        if (!pd) return std::nullopt;
        DCLUSTER_FOR_SET(v, pd->deleted) deleted.add(cback[v]);
    }
    return verify_dcd(g, deleted, d);
}

std::optional<DcdSolution> solve_dcd_unbreakable(const Graph& g, int q, int k, int d) {
    if (g.vertex_count() < 2 * q + 1) {
        // below the large-component threshold the structural lemmas give no
        // leverage; defer to the oracle
        auto w = oracle::brute_dcd(AnnotatedInstance::plain(g, k, d));
        if (!w.feasible) return std::nullopt;
        return verify_dcd(g, w.deleted, d);
    }
    for (const VertexSet& s : skeleton_candidates(g, q, k, d)) {
        auto sol = check_skeleton_dcd(g, s, q, k, d);
        if (sol) return sol;
    }
    return std::nullopt;
}

namespace {

struct TreeAssembly {
    std::vector<std::pair<int, int>> links;  // (vertex, parent vertex or -1)

    void chain(const std::vector<int>& order) {
        for (size_t i = 0; i < order.size(); ++i)
            links.emplace_back(order[i], i == 0 ? -1 : order[i - 1]);
    }
    void comb(const VertexSet& set, int below) {
        int prev = below;
        DCLUSTER_FOR_SET(v, set) {
            links.emplace_back(v, prev);
            prev = v;
        }
    }
    void subtree(const EliminationTree& et, const std::vector<int>& back, int below) {
        for (size_t i = 0; i < et.vertices.size(); ++i) {
            int v = back[et.vertices[i]];
            int p = et.parent[i] < 0 ? below : back[et.vertices[et.parent[i]]];
            links.emplace_back(v, p);
        }
    }
    EliminationTree freeze(int universe) const {
        VertexSet s(universe);
        for (auto [v, p] : links) s.add(v);
        EliminationTree et;
        et.vertices = s.to_vector();
        et.parent.assign(et.vertices.size(), -1);
        for (auto [v, p] : links)
            if (p >= 0) et.parent[et.index_of(v)] = et.index_of(p);
        return et;
    }
};

std::optional<EddcSolution> verify_eddc(const Graph& g, const EliminationTree& tree, int k,
                                        int d) {
    if (tree.depth() > k) return std::nullopt;
    if (!validate_elimination_tree(g, tree)) return std::nullopt;
    EddcSolution sol;
    sol.tree = tree;
    VertexSet s(g.vertex_count());
    for (int v : tree.vertices) s.add(v);
    for (const VertexSet& comp : connected_components(g, s)) {
        auto [cg, cback] = g.induced(comp);
        auto dom = min_dominating_set(cg, d);
        if (!dom) return std::nullopt;
        VertexSet dom_orig(g.vertex_count());
        DCLUSTER_FOR_SET(v, *dom) dom_orig.add(cback[v]);
        sol.components.emplace_back(comp, dom_orig);
    }
    return sol;
}

}  // namespace

std::optional<EddcSolution> solve_eddc_unbreakable(const Graph& g, int q, int k, int d) {
    if (g.vertex_count() < 3 * q * (k + q)) {
        auto w = oracle::brute_eddc(AnnotatedInstance::plain(g, k, d));
        if (!w.feasible) return std::nullopt;
        return verify_eddc(g, w.tree, k, d);
    }
    for (const VertexSet& s : skeleton_candidates(g, q, k, d)) {
        std::vector<int> order = s.to_vector();
        do {
            auto comps = connected_components(g, s);
            int large = -1;
            bool two_large = false;
            for (size_t i = 0; i < comps.size(); ++i) {
                if (comps[i].count() > q) {
                    if (large >= 0) two_large = true;
                    large = int(i);
                }
            }
            if (two_large) break;  // Lemma: large component is unique
            // hang position of each small component: the deepest order
            // position among its skeleton neighbors
            TreeAssembly assembly;
            assembly.chain(order);
            bool ok = true;
            for (size_t i = 0; i < comps.size() && ok; ++i) {
                if (int(i) == large) continue;
                VertexSet nbrs = closed_neighborhood(g, comps[i]) & s;
                int pos = 0;
                for (size_t j = 0; j < order.size(); ++j)
                    if (nbrs.contains(order[j])) pos = int(j) + 1;
                auto [cg, cback] = g.induced(comps[i]);
                AnnotatedInstance sub = AnnotatedInstance::plain(cg, k - pos, d);
                oracle::OracleBudget b = oracle::OracleBudget::from_env();
                b.max_vertices = std::max(b.max_vertices, cg.vertex_count());
                b.max_k = std::max(b.max_k, k);
                b.max_d = std::max(b.max_d, d);
                auto w = oracle::brute_eddc(sub, b);
                if (!w.feasible) { ok = false; break; }
                assembly.subtree(w.tree, cback, pos == 0 ? -1 : order[pos - 1]);
            }
            if (!ok) continue;
            if (large >= 0) {
                auto [cg, cback] = g.induced(comps[large]);
                AnnotatedInstance apd;
                apd.graph = cg;
                apd.forbidden = VertexSet(cg.vertex_count());
                apd.red = VertexSet::full(cg.vertex_count());
                apd.blue = VertexSet::full(cg.vertex_count());
                apd.k = k - int(order.size());
                apd.d = d;
                auto pd = annotated_partial_domination(apd);
                if (!pd) continue;
                VertexSet x_orig(g.vertex_count());
                DCLUSTER_FOR_SET(v, pd->deleted) x_orig.add(cback[v]);
                assembly.comb(x_orig, order.empty() ? -1 : order.back());
            }
            auto sol = verify_eddc(g, assembly.freeze(g.vertex_count()), k, d);
            if (sol) return sol;
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return std::nullopt;
}

std::vector<DominatorGuess> skeletons_via_dominator_guessing(const Graph& g, int q, int k, int d) {
    std::vector<DominatorGuess> out;
    for_each_subset_by_size(g.all_vertices(), d, [&](const VertexSet& dom) {
        VertexSet s1 = g.all_vertices() - closed_neighborhood(g, dom);
        if (s1.count() > q) return false;
        VertexSet s2(g.vertex_count());
        DCLUSTER_FOR_SET(u, s1) {
            if (g.degree(u) <= q) s2 |= g.neighbors(u);
        }
        if (s2.count() > q + k * q) return false;
        out.push_back({dom, s2});
        return false;
    });
    return out;
}

}  // namespace dcluster
