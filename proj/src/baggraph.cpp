#include "dcluster/baggraph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "dcluster/util.hpp"

namespace dcluster {

VertexSet BagGraph::gadget_red() const {
    VertexSet out(graph.vertex_count());
    for (const DGadget& gd : gadgets)
        for (int v : gd.outer) out.add(v);
    return out;
}

VertexSet BagGraph::gadget_blue() const {
    VertexSet out(graph.vertex_count());
    for (const DGadget& gd : gadgets)
        for (int v : gd.inner) out.add(v);
    return out;
}

BagGraph assemble_bag_graph(const Graph& g, const VertexSet& interior_vertices,
                            const std::vector<GadgetSpec>& gadgets) {
    std::vector<int> back = interior_vertices.to_vector();
    std::vector<int> fwd(g.vertex_count(), -1);
    for (size_t i = 0; i < back.size(); ++i) fwd[back[i]] = int(i);

    int base = int(back.size());
    int total = base;
    for (const GadgetSpec& spec : gadgets) total += 2 * spec.size + 1;

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (fwd[u] >= 0 && fwd[v] >= 0) edges.emplace_back(fwd[u], fwd[v]);

    BagGraph bg;
    bg.interior = VertexSet(total);
    bg.exterior = VertexSet(total);
    for (int i = 0; i < base; ++i) bg.interior.add(i);
    bg.interior_to_original = back;

    int next = base;
    for (const GadgetSpec& spec : gadgets) {
        DGadget gd;
        gd.apex = next++;
        gd.plug_targets = VertexSet(total);
        bg.exterior.add(gd.apex);
        DCLUSTER_FOR_SET(v, spec.plug_targets) {
            if (fwd[v] < 0) throw std::invalid_argument("gadget plug target not interior");
            gd.plug_targets.add(fwd[v]);
            edges.emplace_back(fwd[v], gd.apex);
        }
        for (int i = 0; i < spec.size; ++i) {
            int mid = next++;
            int leaf = next++;
            gd.inner.push_back(mid);
            gd.outer.push_back(leaf);
            bg.exterior.add(mid);
            bg.exterior.add(leaf);
            edges.emplace_back(gd.apex, mid);
            edges.emplace_back(mid, leaf);
        }
        bg.gadgets.push_back(std::move(gd));
        bg.provenance.push_back({spec.child_node, spec.original_component});
    }
    bg.graph = Graph(total, std::move(edges));
    return bg;
}

BagGraph build_bag_graph(const Graph& g, const TreeDecomposition& td, int x, const VertexSet& s,
                         const std::map<int, std::vector<std::pair<VertexSet, int>>>& child_parts,
                         const std::vector<GadgetSpec>& extra_gadgets) {
    VertexSet bag_rest = td.bag(x) - s;
    std::vector<GadgetSpec> specs;
    for (int y : td.children(x)) {
        VertexSet comp_rest = td.component(y) - s;
        VertexSet adh_rest = td.adhesion(y) - s;
        std::vector<VertexSet> pieces;
        for (const VertexSet& piece : connected_components(g, g.all_vertices() - comp_rest))
            if (closed_neighborhood(g, piece).intersects(adh_rest)) pieces.push_back(piece);
        auto it = child_parts.find(y);
        size_t supplied = it == child_parts.end() ? 0 : it->second.size();
        if (supplied != pieces.size())
            throw std::invalid_argument("mark partition inconsistent with actual component adjacency");
        for (const auto& [component, size] : it == child_parts.end()
                                                 ? std::vector<std::pair<VertexSet, int>>{}
                                                 : it->second) {
            bool matched = false;
            for (const VertexSet& piece : pieces)
                if (piece == component) { matched = true; break; }
            if (!matched)
                throw std::invalid_argument(
                    "mark partition inconsistent with actual component adjacency");
            GadgetSpec spec;
            spec.plug_targets = closed_neighborhood(g, component) & bag_rest;
            spec.size = size;
            spec.child_node = y;
            spec.original_component = component;
            specs.push_back(std::move(spec));
        }
    }
    for (const GadgetSpec& extra : extra_gadgets) {
        if (!extra.plug_targets.subset_of(td.adhesion(x) - s))
            throw std::invalid_argument("extra gadget plug must lie in the adhesion");
        specs.push_back(extra);
    }
    return assemble_bag_graph(g, bag_rest, specs);
}

BagGraph structural_bag_graph(const Graph& g, const TreeDecomposition& td, int x, int d,
                              int adhesion_gadgets) {
    VertexSet none(g.vertex_count());
    std::map<int, std::vector<std::pair<VertexSet, int>>> parts;
    for (int y : td.children(x)) {
        VertexSet comp = td.component(y);
        for (const VertexSet& piece : connected_components(g, g.all_vertices() - comp))
            if (closed_neighborhood(g, piece).intersects(td.adhesion(y)))
                parts[y].emplace_back(piece, d);
    }
    std::vector<GadgetSpec> extras;
    VertexSet adh = td.adhesion(x);
    for (int i = 0; i < adhesion_gadgets && !adh.empty(); ++i) {
        GadgetSpec spec;
        spec.plug_targets = adh;
        spec.size = d;
        extras.push_back(spec);
    }
    return build_bag_graph(g, td, x, none, parts, extras);
}

namespace {

// close set of a seed in the residual bag graph: interior vertices adjacent
// to u or reachable through exterior-only interior paths
VertexSet close_set(const BagGraph& bg, int u, const VertexSet& removed) {
    VertexSet close(bg.graph.vertex_count());
    VertexSet visited(bg.graph.vertex_count());
    std::vector<int> stack;
    visited.add(u);
    DCLUSTER_FOR_SET(w, bg.graph.neighbors(u) - removed) {
        if (bg.interior.contains(w)) close.add(w);
        else if (!visited.contains(w)) { visited.add(w); stack.push_back(w); }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        DCLUSTER_FOR_SET(w, bg.graph.neighbors(v) - removed) {
            if (bg.interior.contains(w)) close.add(w);
            else if (!visited.contains(w)) { visited.add(w); stack.push_back(w); }
        }
    }
    close.remove(u);
    return close;
}

VertexSet saturate_at(const BagGraph& bg, int u, int q, const VertexSet& removed) {
    VertexSet close = close_set(bg, u, removed);
    VertexSet out(bg.graph.vertex_count());
    out.add(u);
    if (close.count() <= q) out |= close;
    return out;
}

VertexSet saturate_set(const BagGraph& bg, const VertexSet& xs, int q, const VertexSet& removed) {
    VertexSet out = xs;
    DCLUSTER_FOR_SET(u, xs) {
        if (bg.interior.contains(u)) {
            out |= saturate_at(bg, u, q, removed);
        } else {
            // exterior seed: its component's interior attachment (at most q
            // by the bag-graph invariants, so no threshold applies)
            out |= close_set(bg, u, removed);
        }
    }
    return out;
}

std::optional<VertexSet> residual_rb_dom(const Graph& g, const VertexSet& red,
                                         const VertexSet& blue, int bound,
                                         const VertexSet& removed) {
    VertexSet red_alive = red - removed;
    VertexSet blue_alive = blue - removed;
    DCLUSTER_FOR_SET(r, red_alive) {
        if (!(g.closed_neighborhood(r) - removed).intersects(blue_alive)) return std::nullopt;
    }
    std::optional<VertexSet> found;
    for_each_subset_by_size(blue_alive, bound, [&](const VertexSet& dom) {
        VertexSet covered = dom;
        DCLUSTER_FOR_SET(v, dom) covered |= g.neighbors(v) - removed;
        if ((red_alive - covered).empty()) {
            found = dom;
            return true;
        }
        return false;
    });
    return found;
}

}  // namespace

VertexSet saturate(const BagGraph& bg, int u, int q) {
    if (!bg.interior.contains(u)) throw std::invalid_argument("saturate: vertex not interior");
    return saturate_at(bg, u, q, VertexSet(bg.graph.vertex_count()));
}

VertexSet saturate_power(const BagGraph& bg, const VertexSet& xs, int q, int i) {
    VertexSet out = xs;
    VertexSet removed(bg.graph.vertex_count());
    for (int round = 0; round < i; ++round) {
        VertexSet next = saturate_set(bg, out, q, removed);
        if (next == out) break;  // fixpoint
        out = next;
    }
    return out;
}

namespace {

struct CandidateSearch {
    const BagGraph& bg;
    const VertexSet& forbidden;
    const VertexSet& red;
    const VertexSet& blue;
    int d, q;
    std::map<std::pair<std::vector<uint64_t>, int>, std::vector<VertexSet>> memo;

    std::vector<VertexSet> run(const VertexSet& removed, int k) {
        auto key = std::make_pair(removed.words(), k);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<VertexSet> out;
        if (k == 0) {
            out.push_back(removed);  // contributes the current prefix only
        } else {
            auto x = residual_rb_dom(bg.graph, red, blue, 3 * q * d, removed);
            if (x) {
                out.push_back(removed);
                for (const VertexSet& f : run(removed, k - 1)) push_unique(out, f);
                VertexSet branch = saturate_power_residual(*x, removed) & bg.interior;
                branch -= forbidden;
                branch -= removed;
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

    VertexSet saturate_power_residual(const VertexSet& xs, const VertexSet& removed) {
        VertexSet out = xs;
        for (int round = 0; round < q; ++round) {
            VertexSet next = saturate_set(bg, out, q, removed);
            if (next == out) break;
            out = next;
        }
        return out;
    }

    static void push_unique(std::vector<VertexSet>& fam, const VertexSet& s) {
        for (const VertexSet& have : fam)
            if (have == s) return;
        fam.push_back(s);
    }
};

}  // namespace

std::vector<VertexSet> annotated_skeleton_candidates(const BagGraph& bg, const VertexSet& forbidden,
                                                     const VertexSet& red, const VertexSet& blue,
                                                     int k, int d, int q) {
    CandidateSearch search{bg, forbidden, red, blue, d, q, {}};
    VertexSet none(bg.graph.vertex_count());
    if (!residual_rb_dom(bg.graph, red, blue, 3 * q * d, none)) return {};
    std::vector<VertexSet> fam = search.run(none, k);
    std::sort(fam.begin(), fam.end());
    return fam;
}

namespace {

struct Extension {
    const BagGraph& bg;
    const VertexSet& forbidden;
    const VertexSet& red;
    const VertexSet& blue;
    int k, d;
    int q;
    const BagSolveOptions& opts;

    // which separate-set (if any) each component contains; -2 clash
    int separate_tag(const VertexSet& comp) const {
        int tag = -1;
        for (size_t i = 0; i < opts.separate.size(); ++i) {
            if (opts.separate[i].intersects(comp)) {
                if (tag >= 0) return -2;
                tag = int(i);
            }
        }
        return tag;
    }

    // dominator set for one final component: forced members must appear,
    // total size <= d
    std::optional<VertexSet> dominate_component(const VertexSet& comp,
                                                const VertexSet& deleted) const {
        VertexSet required = (opts.forced_dominators & comp) - deleted;
        if ((opts.forced_dominators & comp).count() != required.count())
            return std::nullopt;  // a forced dominator was deleted
        if (required.count() > d) return std::nullopt;
        VertexSet covered = required;
        DCLUSTER_FOR_SET(v, required) covered |= bg.graph.neighbors(v) - deleted;
        VertexSet need = (red & comp) - deleted - covered;
        VertexSet pool = ((blue & comp) - deleted) - required;
        std::optional<VertexSet> extra;
        for_each_subset_by_size(pool, d - required.count(), [&](const VertexSet& dom) {
            VertexSet cov = covered | dom;
            DCLUSTER_FOR_SET(v, dom) cov |= bg.graph.neighbors(v) - deleted;
            if ((need - cov).empty()) {
                extra = dom;
                return true;
            }
            return false;
        });
        if (!extra) return std::nullopt;
        return required | *extra;
    }

    bool component_ok(const VertexSet& comp, const VertexSet& deleted,
                      std::vector<std::pair<VertexSet, VertexSet>>* out) const {
        if (separate_tag(comp) == -2) return false;
        auto dom = dominate_component(comp, deleted);
        if (!dom) return false;
        if (out) out->emplace_back(comp, *dom);
        return true;
    }

    // exhaustive check of a full deletion set
    std::optional<BagSkeletonSolution> verify(const VertexSet& deleted) const {
        BagSkeletonSolution sol;
        sol.deleted = deleted;
        for (const VertexSet& comp : connected_components(bg.graph, deleted))
            if (!component_ok(comp, deleted, &sol.components)) return std::nullopt;
        return sol;
    }

    // plain brute force over deletions; exact size when requested
    std::optional<BagSkeletonSolution> brute() const {
        VertexSet pool = (bg.interior - forbidden);
        std::optional<BagSkeletonSolution> found;
        auto try_size = [&](int size) {
            for_each_subset_of_size(pool, size, [&](const VertexSet& w) {
                auto sol = verify(w);
                if (sol) {
                    found = sol;
                    return true;
                }
                return false;
            });
            return found.has_value();
        };
        if (opts.exact_deletions) {
            if (*opts.exact_deletions > pool.count()) return std::nullopt;
            try_size(*opts.exact_deletions);
        } else {
            for (int size = 0; size <= std::min(k, pool.count()); ++size)
                if (try_size(size)) break;
        }
        return found;
    }

    // small-side configurations of one component: feasible deletion sizes
    // with the canonical witness per size
    std::map<int, std::pair<VertexSet, std::vector<std::pair<VertexSet, VertexSet>>>>
    small_patterns(const VertexSet& comp, const VertexSet& base_removed, int cap) const {
        std::map<int, std::pair<VertexSet, std::vector<std::pair<VertexSet, VertexSet>>>> out;
        VertexSet pool = (comp & bg.interior) - forbidden;
        for_each_subset_by_size(pool, std::min(cap, pool.count()), [&](const VertexSet& w) {
            int size = w.count();
            if (out.count(size)) return false;
            VertexSet removed = base_removed | w;
            std::vector<std::pair<VertexSet, VertexSet>> doms;
            bool ok = true;
            VertexSet todo = comp - w;
            for (int v = todo.first(); v >= 0; v = todo.first()) {
                VertexSet piece = component_of(bg.graph, v, removed);
                todo -= piece;
                if (!component_ok(piece, removed, &doms)) { ok = false; break; }
            }
            if (ok) out[size] = {w, std::move(doms)};
            return false;
        });
        return out;
    }

    std::optional<BagSkeletonSolution> extend(const VertexSet& skeleton) const {
        if (skeleton.intersects(forbidden)) return std::nullopt;
        int s = skeleton.count();
        if (s > k) return std::nullopt;
        if (opts.exact_deletions && s > *opts.exact_deletions) return std::nullopt;

        auto comps = connected_components(bg.graph, skeleton);
        int large = -1;
        for (size_t i = 0; i < comps.size(); ++i) {
            if ((comps[i] & bg.interior).count() > q) {
                if (large >= 0) return std::nullopt;  // bag-graph invariant 3 rules this out
                large = int(i);
            }
        }
        if (large >= 0 && separate_tag(comps[large]) == -2)
            return std::nullopt;  // two must-separate sets locked inside the large component

        // per-small-component feasible deletion patterns
        int hard_cap = (opts.exact_deletions ? *opts.exact_deletions : k) - s;
        std::vector<std::map<int, std::pair<VertexSet, std::vector<std::pair<VertexSet, VertexSet>>>>>
            patterns;
        for (size_t i = 0; i < comps.size(); ++i) {
            if (int(i) == large) continue;
            patterns.push_back(small_patterns(comps[i], skeleton, hard_cap));
            if (patterns.back().empty()) return std::nullopt;
        }

        // choose one size per small component; iterate over total sizes
        std::optional<BagSkeletonSolution> found;
        std::vector<int> chosen(patterns.size(), 0);
        std::function<void(size_t, int, std::function<void(int)>)> iterate =
            [&](size_t idx, int acc, std::function<void(int)> leaf) {
                if (found) return;
                if (idx == patterns.size()) {
                    leaf(acc);
                    return;
                }
                for (auto& [size, pattern] : patterns[idx]) {
                    if (acc + size + s > k && !opts.exact_deletions) break;
                    if (opts.exact_deletions && acc + size + s > *opts.exact_deletions) break;
                    chosen[idx] = size;
                    iterate(idx + 1, acc + size, leaf);
                    if (found) return;
                }
            };

        auto assemble = [&](int small_total) {
            VertexSet deleted = skeleton;
            for (size_t i = 0; i < patterns.size(); ++i) deleted |= patterns[i].at(chosen[i]).first;
            if (large < 0) {
                if (opts.exact_deletions && s + small_total != *opts.exact_deletions) return;
                if (s + small_total > k) return;
                auto sol = verify(deleted);
                if (sol) found = sol;
                return;
            }
            // large component: partial domination with the remaining budget
            const VertexSet& c0 = comps[size_t(large)];
            int budget = (opts.exact_deletions ? *opts.exact_deletions : k) - s - small_total;
            if (budget < 0) return;
            VertexSet required = opts.forced_dominators & c0;
            if (required.count() > d) return;
            VertexSet covered = required;
            DCLUSTER_FOR_SET(v, required) covered |= bg.graph.neighbors(v) - deleted;
            VertexSet pool = ((blue & c0) - required);
            std::optional<std::pair<VertexSet, VertexSet>> big;  // (X, D)
            for_each_subset_by_size(pool, d - required.count(), [&](const VertexSet& extra) {
                VertexSet cov = covered | extra;
                DCLUSTER_FOR_SET(v, extra) cov |= bg.graph.neighbors(v) - deleted;
                VertexSet undominated = (red & c0) - cov;
                if (undominated.intersects(forbidden)) return false;
                if (undominated.count() > budget) return false;
                VertexSet x = undominated;
                if (opts.exact_deletions) {
                    VertexSet room = ((c0 & bg.interior) - forbidden) - required - extra - x;
                    int need = budget - x.count();
                    if (room.count() < need) return false;
                    DCLUSTER_FOR_SET(v, room) {
                        if (need == 0) break;
                        x.add(v);
                        --need;
                    }
                }
                big = std::make_pair(x, required | extra);
                return true;
            });
            if (!big) return;
            VertexSet full = deleted | big->first;
            auto sol = verify(full);
            if (sol) found = sol;
        };

        iterate(0, 0, assemble);
        return found;
    }
};

}  // namespace

std::optional<BagSkeletonSolution> verify_bag_config(const BagGraph& bg, const VertexSet& forbidden,
                                                     const VertexSet& red, const VertexSet& blue,
                                                     int d, const BagSolveOptions& opts,
                                                     const VertexSet& deleted) {
    Extension ext{bg, forbidden, red, blue, deleted.count(), d, 0, opts};
    if (deleted.intersects(forbidden)) return std::nullopt;
    return ext.verify(deleted);
}

std::optional<BagSkeletonSolution> solve_adcd_on_bag_graph(const BagGraph& bg,
                                                           const VertexSet& forbidden,
                                                           const VertexSet& red,
                                                           const VertexSet& blue, int k, int d,
                                                           int q, const BagSolveOptions& opts) {
    if (!bg.exterior.subset_of(forbidden))
        throw std::invalid_argument("bag-graph solver: exterior must be forbidden");
    if (!opts.skip_exterior_blue_check && (bg.exterior & blue).count() > q * d)
        throw std::invalid_argument("bag-graph solver: too many blue exterior vertices");

    Extension ext{bg, forbidden, red, blue, k, d, q, opts};
    std::vector<VertexSet> family = annotated_skeleton_candidates(bg, forbidden, red, blue, k, d, q);
    if (family.empty()) {
        // No 3qd red-blue dominating set: the branching lemma does not
        // apply, which at desk scale only happens outside the
        // large-component regime; solve exhaustively.
        return ext.brute();
    }
    for (const VertexSet& candidate : family) {
        auto sol = ext.extend(candidate);
        if (sol) return sol;
    }
    return std::nullopt;
}

}  // namespace dcluster
