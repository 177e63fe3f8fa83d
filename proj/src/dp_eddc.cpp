#include "dcluster/dp_eddc.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dcluster/util.hpp"

namespace dcluster {

void ExtendedMark::canonicalize() {
    std::vector<size_t> order(parts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return parts[a].first() < parts[b].first(); });
    std::vector<VertexSet> ps;
    std::vector<int> bs;
    std::vector<uint32_t> rs;
    for (size_t i : order) {
        ps.push_back(parts[i]);
        bs.push_back(part_budget[i]);
        rs.push_back(part_reach[i]);
    }
    parts = std::move(ps);
    part_budget = std::move(bs);
    part_reach = std::move(rs);
    for (size_t t = 0; t < threshold_classes.size(); ++t) {
        auto& classes = threshold_classes[t];
        auto& reach = threshold_reach[t];
        std::vector<size_t> co(classes.size());
        for (size_t i = 0; i < co.size(); ++i) co[i] = i;
        std::sort(co.begin(), co.end(),
                  [&](size_t a, size_t b) { return classes[a].first() < classes[b].first(); });
        std::vector<VertexSet> cs;
        std::vector<char> fs;
        for (size_t i : co) {
            cs.push_back(classes[i]);
            fs.push_back(reach[i]);
        }
        classes = std::move(cs);
        reach = std::move(fs);
    }
}

bool ExtendedMark::operator==(const ExtendedMark& o) const {
    return layers == o.layers && d_a == o.d_a && u_a == o.u_a && parts == o.parts &&
           part_budget == o.part_budget && part_reach == o.part_reach &&
           threshold_classes == o.threshold_classes && threshold_reach == o.threshold_reach;
}

bool ExtendedMark::operator<(const ExtendedMark& o) const {
    if (layers != o.layers) return layers < o.layers;
    if (!(d_a == o.d_a)) return d_a < o.d_a;
    if (!(u_a == o.u_a)) return u_a < o.u_a;
    if (parts != o.parts) return parts < o.parts;
    if (part_budget != o.part_budget) return part_budget < o.part_budget;
    if (part_reach != o.part_reach) return part_reach < o.part_reach;
    if (threshold_classes != o.threshold_classes) return threshold_classes < o.threshold_classes;
    return threshold_reach < o.threshold_reach;
}

std::string ExtendedMark::to_string() const {
    std::string s = "L=[";
    for (size_t i = 0; i < layers.size(); ++i) {
        if (i) s += ",";
        s += layers[i].to_string();
    }
    s += "] D=" + d_a.to_string() + " U=" + u_a.to_string() + " P=[";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i].to_string() + ":" + std::to_string(part_budget[i]) + ":r" +
             std::to_string(part_reach[i]);
    }
    return s + "]";
}

namespace {

bool layers_valid(const Graph& g, const std::vector<VertexSet>& layers) {
    int n = g.vertex_count();
    VertexSet lower(n);
    for (const VertexSet& level : layers) {
        std::vector<int> verts = level.to_vector();
        for (size_t a = 0; a < verts.size(); ++a) {
            VertexSet comp = component_of(g, verts[a], lower);
            for (size_t b = a + 1; b < verts.size(); ++b)
                if (comp.contains(verts[b])) return false;
        }
        lower |= level;
    }
    return true;
}

struct InducedExtras {
    std::vector<VertexSet> parts;
    std::vector<uint32_t> part_reach;
    std::vector<std::vector<VertexSet>> threshold_classes;
    std::vector<std::vector<char>> threshold_reach;
};

InducedExtras induced_extras(const Graph& g, const VertexSet& a,
                             const std::vector<VertexSet>& layers) {
    int n = g.vertex_count();
    int k = int(layers.size());
    VertexSet all_deleted(n);
    for (const VertexSet& level : layers) all_deleted |= level;

    InducedExtras out;
    VertexSet seen(n);
    VertexSet trace_pool = a - all_deleted;
    DCLUSTER_FOR_SET(v, trace_pool) {
        if (seen.contains(v)) continue;
        VertexSet comp = component_of(g, v, all_deleted);
        VertexSet trace = comp & a;
        seen |= trace;
        uint32_t reach = 0;
        VertexSet lower(n);
        for (int i = 1; i <= k; ++i) {
            VertexSet region = component_of(g, v, lower);
            if (region.intersects(layers[i - 1])) reach |= uint32_t(1) << (i - 1);
            lower |= layers[i - 1];
        }
        out.parts.push_back(trace);
        out.part_reach.push_back(reach);
    }
    // threshold classes carry reach to layer-i vertices strictly outside the
    // adhesion; trace vertices are directly visible to the consumer
    out.threshold_classes.resize(k);
    out.threshold_reach.resize(k);
    VertexSet lower(n);
    for (int i = 1; i <= k; ++i) {
        VertexSet pool = a - lower;
        VertexSet done(n);
        DCLUSTER_FOR_SET(v, pool) {
            if (done.contains(v)) continue;
            VertexSet comp = component_of(g, v, lower);
            VertexSet cls = comp & pool;
            done |= cls;
            out.threshold_classes[i - 1].push_back(cls);
            out.threshold_reach[i - 1].push_back(comp.intersects(layers[i - 1] - a) ? 1 : 0);
        }
        lower |= layers[i - 1];
    }
    return out;
}

}  // namespace

std::vector<ExtendedMark> brute_extended_profile(const Graph& g, const AnnotatedInstance& inst,
                                                 const VertexSet& a) {
    int n = g.vertex_count();
    int k = inst.k;
    std::set<ExtendedMark> collected;
    VertexSet pool = g.all_vertices() - inst.forbidden;
    std::vector<int> members = pool.to_vector();
    std::vector<VertexSet> layers(k, VertexSet(n));

    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == members.size()) {
            if (!layers_valid(g, layers)) return;
            VertexSet deleted(n);
            for (const VertexSet& level : layers) deleted |= level;
            InducedExtras extras = induced_extras(g, a, layers);
            auto comps = connected_components(g, deleted);
            // components without an adhesion trace must be plainly dominable
            for (const VertexSet& c : comps) {
                if ((c & a).empty()) {
                    bool ok = false;
                    for_each_subset_by_size(inst.blue & c, inst.d, [&](const VertexSet& dc) {
                        VertexSet covered = dc;
                        DCLUSTER_FOR_SET(v, dc) covered |= g.neighbors(v) - deleted;
                        if (((inst.red & c) - covered).empty()) {
                            ok = true;
                            return true;
                        }
                        return false;
                    });
                    if (!ok) return;
                }
            }
            // per part: the dominator-set choices it admits
            std::vector<std::vector<std::tuple<VertexSet, VertexSet, int>>> summaries;
            for (const VertexSet& part : extras.parts) {
                const VertexSet* comp = nullptr;
                for (const VertexSet& c : comps)
                    if (part.intersects(c)) { comp = &c; break; }
                std::vector<std::tuple<VertexSet, VertexSet, int>> list;
                VertexSet below_red = (inst.red & *comp) - a;
                for_each_subset_by_size(inst.blue & *comp, inst.d, [&](const VertexSet& dc) {
                    VertexSet covered = dc;
                    DCLUSTER_FOR_SET(v, dc) covered |= g.neighbors(v) - deleted;
                    if (!(below_red - covered).empty()) return false;
                    list.emplace_back(dc & part, (inst.red & part) - covered, dc.count());
                    return false;
                });
                if (list.empty()) return;  // some part cannot be served at all
                summaries.push_back(std::move(list));
            }
            ExtendedMark base;
            base.layers.resize(k, VertexSet(n));
            for (int i = 0; i < k; ++i) base.layers[i] = layers[i] & a;
            base.d_a = VertexSet(n);
            base.u_a = VertexSet(n);
            base.parts = extras.parts;
            base.part_budget.assign(extras.parts.size(), 0);
            base.part_reach = extras.part_reach;
            base.threshold_classes = extras.threshold_classes;
            base.threshold_reach = extras.threshold_reach;
            std::function<void(size_t, ExtendedMark&)> pick = [&](size_t pi, ExtendedMark& m) {
                if (pi == base.parts.size()) {
                    ExtendedMark out = m;
                    out.canonicalize();
                    collected.insert(out);
                    return;
                }
                std::set<std::tuple<std::vector<uint64_t>, std::vector<uint64_t>, int>> seen;
                for (const auto& [delta, upart, used] : summaries[pi]) {
                    if (!seen.insert({delta.words(), upart.words(), used}).second) continue;
                    ExtendedMark next = m;
                    next.d_a |= delta;
                    next.u_a |= upart;
                    next.part_budget[pi] = used;
                    pick(pi + 1, next);
                }
            };
            pick(0, base);
            return;
        }
        rec(idx + 1);
        for (int level = 0; level < k; ++level) {
            layers[level].add(members[idx]);
            rec(idx + 1);
            layers[level].remove(members[idx]);
        }
    };
    rec(0);
    return std::vector<ExtendedMark>(collected.begin(), collected.end());
}

bool extended_mark_realized_brute(const Graph& g, const AnnotatedInstance& inst, const VertexSet& a,
                                  const ExtendedMark& m) {
    for (const ExtendedMark& have : brute_extended_profile(g, inst, a)) {
        if (have.layers != m.layers) continue;
        if (!(have.d_a == m.d_a)) continue;
        if (have.parts != m.parts) continue;
        if (have.part_reach != m.part_reach) continue;
        if (have.threshold_classes != m.threshold_classes) continue;
        if (have.threshold_reach != m.threshold_reach) continue;
        if (!have.u_a.subset_of(m.u_a)) continue;
        bool fits = true;
        for (size_t i = 0; i < have.part_budget.size(); ++i)
            if (have.part_budget[i] > m.part_budget[i]) { fits = false; break; }
        if (fits) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

struct EddcChildSelection {
    bool selected = false;
    bool neutral = false;
    ExtendedMark mark;
    std::vector<VertexSet> basis_layers;
    VertexSet basis_d;
};

struct ShapeSpec {
    std::vector<VertexSet> layers;
    VertexSet d_a, u_a;
    std::vector<VertexSet> parts;
    std::vector<int> part_budget;
};

// Check-graph for layer threshold i: the full bag restricted to vertices
// not deleted below i, with one connector node per child threshold-class.
struct LayerCheckGraph {
    // adjacency over bag vertices (original ids) plus connectors
    const Graph* g = nullptr;
    VertexSet bag_present;                  // original ids
    std::vector<VertexSet> connectors;      // class members, original ids
    std::vector<char> connector_reach;      // class reaches a layer-i vertex below

    // connected component of a seed set under bag edges + connectors
    VertexSet reach_from(const VertexSet& seed) const {
        VertexSet comp = seed & bag_present;
        std::vector<int> stack = comp.to_vector();
        std::vector<char> used(connectors.size(), 0);
        bool grew = true;
        while (grew) {
            grew = false;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                DCLUSTER_FOR_SET(w, g->neighbors(v) & bag_present) {
                    if (!comp.contains(w)) {
                        comp.add(w);
                        stack.push_back(w);
                    }
                }
            }
            for (size_t c = 0; c < connectors.size(); ++c) {
                if (used[c]) continue;
                if ((connectors[c] & bag_present).intersects(comp)) {
                    used[c] = 1;
                    grew = true;
                    DCLUSTER_FOR_SET(w, connectors[c] & bag_present) {
                        if (!comp.contains(w)) {
                            comp.add(w);
                            stack.push_back(w);
                        }
                    }
                }
            }
        }
        return comp;
    }

    bool connector_used(const VertexSet& comp, size_t c) const {
        return (connectors[c] & bag_present).intersects(comp);
    }
};

}  // namespace

EddcDp::EddcDp(const Graph& g, const AnnotatedInstance& inst, const TreeDecomposition& td, int q,
               EddcDpOptions options)
    : g_(g), inst_(inst), td_(td), q_(q), options_(options) {
    profiles_.resize(td.node_count());
    assemblies_.resize(td.node_count());
    stats_.q = q;
    stats_.decomposition_nodes = td.node_count();
}

void EddcDp::run() {
    if (ran_) return;
    for (int x : td_.post_order()) compute_node(x);
    for (const auto& p : profiles_)
        stats_.max_profile_size = std::max(stats_.max_profile_size, int(p.size()));
    ran_ = true;
}

void EddcDp::compute_node(int x) {
    const int n = g_.vertex_count();
    const int k = inst_.k;
    const VertexSet adh = td_.adhesion(x);
    const VertexSet bag = td_.bag(x);
    const std::vector<int>& kids = td_.children(x);
    const VertexSet cone = td_.cone(x);

    std::vector<ShapeSpec> shapes;
    {
        std::vector<int> members = adh.to_vector();
        std::vector<int> assign(members.size(), 0);  // 0..k-1 layer, k = D, k+1 = U, k+2 = plain
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i < members.size()) {
                for (int c = 0; c < k + 3; ++c) {
                    assign[i] = c;
                    rec(i + 1);
                }
                return;
            }
            ShapeSpec base;
            base.layers.assign(k, VertexSet(n));
            base.d_a = VertexSet(n);
            base.u_a = VertexSet(n);
            std::vector<int> rest;
            for (size_t j = 0; j < members.size(); ++j) {
                int v = members[j];
                if (assign[j] < k) {
                    if (inst_.forbidden.contains(v)) return;
                    base.layers[assign[j]].add(v);
                } else if (assign[j] == k) {
                    if (!inst_.blue.contains(v)) return;
                    base.d_a.add(v);
                    rest.push_back(v);
                } else if (assign[j] == k + 1) {
                    if (!inst_.red.contains(v)) return;  // canonical u stays red
                    base.u_a.add(v);
                    rest.push_back(v);
                } else {
                    rest.push_back(v);
                }
            }
            VertexSet deleted(n);
            for (const VertexSet& level : base.layers) deleted |= level;
            for_each_partition(rest, n, [&](const std::vector<VertexSet>& blocks) {
                for (const VertexSet& part : blocks) {
                    VertexSet comp =
                        component_of(g_, part.first(), (g_.all_vertices() - cone) | deleted);
                    if (!part.subset_of(comp)) return;
                }
                std::vector<int> budgets(blocks.size(), 0);
                std::function<void(size_t)> budget_rec = [&](size_t bi) {
                    if (bi == blocks.size()) {
                        ShapeSpec s = base;
                        s.parts = blocks;
                        s.part_budget = budgets;
                        shapes.push_back(std::move(s));
                        return;
                    }
                    for (int p = (blocks[bi] & base.d_a).count(); p <= inst_.d; ++p) {
                        budgets[bi] = p;
                        budget_rec(bi + 1);
                    }
                };
                budget_rec(0);
            });
        };
        rec(0);
    }

    std::set<ExtendedMark> profile_out;
    auto& assembly_map = assemblies_[x];

    for (const ShapeSpec& shape : shapes) {
        ++stats_.shapes_walked;
        WalkTrace trace;
        trace.decomposition_node = x;
        trace.nodes.emplace_back();

        std::vector<EddcChildSelection> selection(kids.size());
        std::vector<VertexSet> bag_layers = shape.layers;
        VertexSet d_hat = shape.d_a;
        std::vector<int> below_reach(std::max(k, 1), 0);
        int below_dom = 0;

        auto traces_of = [&](const VertexSet& ay) {
            std::vector<VertexSet> t(k, VertexSet(n));
            for (int i = 0; i < k; ++i) t[i] = bag_layers[i] & ay;
            return t;
        };

        // ------------------------------------------------------------------
        auto finalize = [&]() {
            VertexSet committed(n);
            for (const VertexSet& level : bag_layers) committed |= level;
            VertexSet interior = bag - committed;

            std::vector<GadgetSpec> specs;
            for (size_t i = 0; i < kids.size(); ++i) {
                const ExtendedMark& my = selection[i].mark;
                for (size_t pi = 0; pi < my.parts.size(); ++pi) {
                    GadgetSpec spec;
                    spec.plug_targets = my.parts[pi];
                    spec.size = my.part_budget[pi] - (my.d_a & my.parts[pi]).count();
                    spec.child_node = kids[i];
                    specs.push_back(std::move(spec));
                }
            }
            for (size_t pi = 0; pi < shape.parts.size(); ++pi) {
                GadgetSpec spec;
                spec.plug_targets = shape.parts[pi];
                spec.size = inst_.d - shape.part_budget[pi];
                specs.push_back(std::move(spec));
            }
            BagGraph bg = assemble_bag_graph(g_, interior, specs);
            int hn = bg.graph.vertex_count();

            VertexSet adhesions_all(n);
            adhesions_all |= adh;
            for (int y : kids) adhesions_all |= td_.adhesion(y);
            VertexSet child_dominated(n);
            for (size_t i = 0; i < kids.size(); ++i)
                child_dominated |= td_.adhesion(kids[i]) - selection[i].mark.u_a;
            VertexSet covered = closed_neighborhood(g_, d_hat);

            VertexSet fh(hn), rh(hn), bh(hn);
            for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv) {
                int ov = bg.interior_to_original[hv];
                if (inst_.forbidden.contains(ov) || adhesions_all.contains(ov) ||
                    d_hat.contains(ov))
                    fh.add(hv);
                if (inst_.red.contains(ov) && !shape.u_a.contains(ov) &&
                    !child_dominated.contains(ov) && !covered.contains(ov))
                    rh.add(hv);
                if (inst_.blue.contains(ov) && !adhesions_all.contains(ov) &&
                    !d_hat.contains(ov))
                    bh.add(hv);
            }
            fh |= bg.exterior;
            rh |= bg.gadget_red();
            bh |= bg.gadget_blue();

            BagSolveOptions vopts;
            vopts.skip_exterior_blue_check = true;
            vopts.forced_dominators = VertexSet(hn);
            for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv)
                if (d_hat.contains(bg.interior_to_original[hv]))
                    vopts.forced_dominators.add(hv);
            for (const VertexSet& part : shape.parts) {
                VertexSet mapped(hn);
                for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv)
                    if (part.contains(bg.interior_to_original[hv])) mapped.add(hv);
                vopts.separate.push_back(mapped);
            }

            // layer check graphs (thresholds 1..k) over the full bag plus
            // child threshold-class connectors
            std::vector<LayerCheckGraph> check(k);
            {
                VertexSet lower(n);
                for (int i = 1; i <= k; ++i) {
                    check[i - 1].g = &g_;
                    check[i - 1].bag_present = bag - lower;
                    for (size_t ci = 0; ci < kids.size(); ++ci) {
                        const ExtendedMark& my = selection[ci].mark;
                        if (int(my.threshold_classes.size()) < i) continue;
                        for (size_t cc = 0; cc < my.threshold_classes[i - 1].size(); ++cc) {
                            check[i - 1].connectors.push_back(my.threshold_classes[i - 1][cc]);
                            check[i - 1].connector_reach.push_back(
                                my.threshold_reach[i - 1][cc]);
                        }
                    }
                    lower |= bag_layers[i - 1];
                }
            }

            VertexSet deletable = interior - (inst_.forbidden | adhesions_all | d_hat);

            std::set<std::pair<std::vector<uint64_t>, std::vector<int>>> tried;

            // full validation of a concrete new-deletion assignment
            auto consider = [&](const VertexSet& new_del, const std::vector<int>& new_layer) {
                auto key = std::make_pair(new_del.words(), new_layer);
                if (!tried.insert(key).second) return;
                std::vector<VertexSet> full_layers = bag_layers;
                {
                    int idx = 0;
                    DCLUSTER_FOR_SET(v, new_del) full_layers[new_layer[idx++]].add(v);
                }
                for (int i = 0; i < k; ++i)
                    if (full_layers[i].count() + below_reach[i] > q_ * k) return;

                // domination / separation / budget checks on the bag graph
                VertexSet w_h(hn);
                for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv)
                    if (new_del.contains(bg.interior_to_original[hv])) w_h.add(hv);
                auto sol = verify_bag_config(bg, fh, rh, bh, inst_.d, vopts, w_h);
                if (!sol) return;

                // per-threshold separation: terminals are this layer's bag
                // vertices and the child classes that reach the layer
                // strictly below the bag; two terminals sharing a component
                // of the check graph witness an invalid layering
                VertexSet lower(n);
                for (int i = 1; i <= k; ++i) {
                    LayerCheckGraph cg = check[i - 1];
                    cg.bag_present = bag - lower;
                    std::vector<VertexSet> terminal_seeds;
                    DCLUSTER_FOR_SET(v, full_layers[i - 1]) {
                        VertexSet s(n);
                        s.add(v);
                        terminal_seeds.push_back(s);
                    }
                    for (size_t c = 0; c < cg.connectors.size(); ++c)
                        if (cg.connector_reach[c]) terminal_seeds.push_back(cg.connectors[c]);
                    for (size_t aidx = 0; aidx < terminal_seeds.size(); ++aidx) {
                        VertexSet comp = cg.reach_from(terminal_seeds[aidx]);
                        for (size_t bidx = aidx + 1; bidx < terminal_seeds.size(); ++bidx)
                            if ((terminal_seeds[bidx] & cg.bag_present).intersects(comp)) return;
                    }
                    lower |= full_layers[i - 1];
                }

                // outputs: the x-level mark this assembly realizes
                ExtendedMark out;
                out.layers.resize(k, VertexSet(n));
                for (int i = 0; i < k; ++i) out.layers[i] = shape.layers[i];
                out.d_a = shape.d_a;
                out.u_a = shape.u_a;
                out.parts = shape.parts;
                out.part_budget = shape.part_budget;
                out.part_reach.assign(shape.parts.size(), 0);
                out.threshold_classes.resize(k);
                out.threshold_reach.resize(k);
                {
                    VertexSet low(n);
                    for (int i = 1; i <= k; ++i) {
                        LayerCheckGraph cg = check[i - 1];
                        cg.bag_present = bag - low;
                        VertexSet pool = adh - low;
                        VertexSet done(n);
                        DCLUSTER_FOR_SET(v, pool) {
                            if (done.contains(v)) continue;
                            VertexSet seed(n);
                            seed.add(v);
                            VertexSet comp = cg.reach_from(seed);
                            VertexSet cls = comp & pool;
                            done |= cls;
                            // below-the-adhesion reach, for composing upward
                            bool below = comp.intersects(full_layers[i - 1] - adh);
                            // full reach per the definition, for the part flags
                            bool full = comp.intersects(full_layers[i - 1]);
                            for (size_t c = 0; c < cg.connectors.size() && !(below && full);
                                 ++c) {
                                if (cg.connector_reach[c] && cg.connector_used(comp, c))
                                    below = full = true;
                            }
                            out.threshold_classes[i - 1].push_back(cls);
                            out.threshold_reach[i - 1].push_back(below ? 1 : 0);
                            if (full) {
                                for (size_t pi = 0; pi < shape.parts.size(); ++pi)
                                    if (shape.parts[pi].intersects(cls))
                                        out.part_reach[pi] |= uint32_t(1) << (i - 1);
                            }
                        }
                        low |= full_layers[i - 1];
                    }
                }
                out.canonicalize();
                if (profile_out.count(out)) return;
                profile_out.insert(out);
                Assembly as;
                as.bag_layers = full_layers;
                as.d_hat = d_hat;
                for (size_t i = 0; i < kids.size(); ++i)
                    as.child_marks.emplace_back(kids[i], selection[i].mark);
                as.h_dominators = VertexSet(n);
                for (const auto& [comp, dom] : sol->components) {
                    DCLUSTER_FOR_SET(hv, dom & bg.interior)
                        as.h_dominators.add(bg.interior_to_original[hv]);
                }
                assembly_map.emplace(out, std::move(as));
            };

            // enumerate new deletions with layer assignments: skeleton
            // candidates drive the choice, the large component is served by
            // dominator guesses plus bounded extra deletions
            std::vector<VertexSet> family =
                annotated_skeleton_candidates(bg, fh, rh, bh, std::min(k, deletable.count()),
                                              inst_.d, q_);
            bool have_family = !family.empty();

            auto enumerate_layerings = [&](const VertexSet& dels) {
                std::vector<int> verts = dels.to_vector();
                if (k == 0) {
                    if (verts.empty()) consider(dels, {});
                    return;
                }
                std::vector<int> assign(verts.size(), 0);
                std::function<void(size_t)> rec2 = [&](size_t idx) {
                    if (idx == verts.size()) {
                        consider(dels, assign);
                        return;
                    }
                    for (int level = 0; level < k; ++level) {
                        assign[idx] = level;
                        rec2(idx + 1);
                    }
                };
                rec2(0);
            };

            if (!have_family) {
                // no 3qd dominating set: exhaustive desk-scale fallback
                for_each_subset_lex(deletable, deletable.count(), [&](const VertexSet& w) {
                    enumerate_layerings(w);
                    return false;
                });
            } else {
                for (const VertexSet& skel_h : family) {
                    VertexSet skel(n);
                    DCLUSTER_FOR_SET(hv, skel_h & bg.interior)
                        skel.add(bg.interior_to_original[hv]);
                    if (!skel.subset_of(deletable)) continue;
                    auto comps = connected_components(bg.graph, skel_h);
                    int large = -1;
                    for (size_t i = 0; i < comps.size(); ++i)
                        if ((comps[i] & bg.interior).count() > q_) { large = int(i); break; }
                    VertexSet small_pool(n);
                    for (size_t i = 0; i < comps.size(); ++i) {
                        if (int(i) == large) continue;
                        DCLUSTER_FOR_SET(hv, comps[i] & bg.interior) {
                            int ov = bg.interior_to_original[hv];
                            if (deletable.contains(ov)) small_pool.add(ov);
                        }
                    }
                    VertexSet big_pool(n);
                    if (large >= 0) {
                        DCLUSTER_FOR_SET(hv, comps[size_t(large)] & bg.interior) {
                            int ov = bg.interior_to_original[hv];
                            if (deletable.contains(ov)) big_pool.add(ov);
                        }
                    }
                    for_each_subset_lex(small_pool, small_pool.count(), [&](const VertexSet& sw) {
                        for_each_subset_lex(big_pool, std::min(big_pool.count(), k),
                                            [&](const VertexSet& bw) {
                                                enumerate_layerings(skel | sw | bw);
                                                return false;
                                            });
                        return false;
                    });
                }
            }
        };
        // ------------------------------------------------------------------

        std::function<void(int)> walk = [&](int trace_at) {
            for (int i = 0; i < k; ++i)
                if (bag_layers[i].count() + below_reach[i] > q_ * std::max(k, 1)) return;
            if (d_hat.count() + below_dom > q_ * inst_.d) return;

            int next = -1;
            for (size_t i = 0; i < kids.size(); ++i) {
                if (!selection[i].selected) { next = int(i); break; }
                if (selection[i].neutral) {
                    VertexSet ay = td_.adhesion(kids[i]);
                    if (selection[i].basis_layers != traces_of(ay) ||
                        !(selection[i].basis_d == (d_hat & ay))) {
                        next = int(i);
                        break;
                    }
                }
            }
            if (next < 0) {
                for (size_t i = 0; i < kids.size(); ++i) {
                    VertexSet ay = td_.adhesion(kids[i]);
                    if (selection[i].mark.layers != traces_of(ay)) return;
                    if (!(selection[i].mark.d_a == (d_hat & ay))) return;
                }
                {
                    std::vector<VertexSet> at(k, VertexSet(n));
                    for (int i = 0; i < k; ++i) at[i] = bag_layers[i] & adh;
                    if (at != shape.layers) return;
                    if (!((d_hat & adh) == shape.d_a)) return;
                }
                finalize();
                return;
            }

            int y = kids[next];
            const VertexSet ay = td_.adhesion(y);
            const auto& child_profile = profiles_[y];
            EddcChildSelection saved = selection[next];

            if (options_.neutral_shortcut) {
                const ExtendedMark* neutral = nullptr;
                for (const ExtendedMark& cm : child_profile) {
                    bool zero = true;
                    for (int p : cm.part_budget)
                        if (p != 0) zero = false;
                    for (uint32_t r : cm.part_reach)
                        if (r != 0) zero = false;
                    if (!zero) continue;
                    if (cm.layers != traces_of(ay)) continue;
                    if (!(cm.d_a == (d_hat & ay))) continue;
                    if (!neutral || cm.u_a.count() < neutral->u_a.count()) neutral = &cm;
                }
                if (neutral) {
                    selection[next] = {true, true, *neutral, traces_of(ay), d_hat & ay};
                    trace.nodes.emplace_back();
                    trace.nodes.back().white = true;
                    int id = int(trace.nodes.size()) - 1;
                    trace.nodes[trace_at].children.push_back(id);
                    walk(id);
                    selection[next] = saved;
                    return;
                }
            }

            for (const ExtendedMark& cm : child_profile) {
                bool ok = true;
                for (int i = 0; i < k && ok; ++i) {
                    if (!(bag_layers[i] & ay).subset_of(cm.layers[i])) ok = false;
                    if (ok && d_hat.intersects(cm.layers[i])) ok = false;
                    for (int j = 0; j < k && ok; ++j)
                        if (j != i && bag_layers[j].intersects(cm.layers[i])) ok = false;
                }
                if (!ok) continue;
                if (!(d_hat & ay).subset_of(cm.d_a)) continue;
                for (int i = 0; i < k && ok; ++i)
                    if (bag_layers[i].intersects(cm.d_a)) ok = false;
                if (!ok) continue;
                VertexSet shape_deleted(n);
                for (const VertexSet& level : shape.layers) shape_deleted |= level;
                VertexSet trace_in_adh(n);
                for (int i = 0; i < k; ++i) trace_in_adh |= cm.layers[i] & adh;
                if (!trace_in_adh.subset_of(shape_deleted)) continue;
                if (!(cm.d_a & adh).subset_of(shape.d_a)) continue;

                auto save_layers = bag_layers;
                VertexSet save_d = d_hat;
                auto save_reach = below_reach;
                int save_dom = below_dom;
                for (int i = 0; i < k; ++i) bag_layers[i] |= cm.layers[i];
                d_hat |= cm.d_a;
                for (int i = 0; i < k; ++i) {
                    bool any = false;
                    for (uint32_t r : cm.part_reach)
                        if (r & (uint32_t(1) << i)) any = true;
                    if (any) ++below_reach[i];
                }
                for (size_t pi = 0; pi < cm.parts.size(); ++pi)
                    below_dom += cm.part_budget[pi] - (cm.d_a & cm.parts[pi]).count();
                selection[next] = {true, false, cm, {}, VertexSet(n)};
                ++stats_.branches;
                trace.nodes.emplace_back();
                int id = int(trace.nodes.size()) - 1;
                trace.nodes[trace_at].children.push_back(id);
                walk(id);
                selection[next] = saved;
                bag_layers = save_layers;
                d_hat = save_d;
                below_reach = save_reach;
                below_dom = save_dom;
            }
        };

        walk(0);
        stats_.leaves += trace.leaves();
        if (options_.record_traces) traces_.push_back(std::move(trace));
    }

    profiles_[x].assign(profile_out.begin(), profile_out.end());
}

void EddcDp::collect(int x, const ExtendedMark& m, std::vector<VertexSet>& layers,
                     VertexSet& dominators) const {
    const Assembly& as = assemblies_[x].at(m);
    for (size_t i = 0; i < as.bag_layers.size(); ++i) layers[i] |= as.bag_layers[i];
    dominators |= as.d_hat;
    dominators |= as.h_dominators;
    for (const auto& [y, my] : as.child_marks) collect(y, my, layers, dominators);
}

std::optional<EddcCertificate> EddcDp::solve() {
    run();
    int root = td_.root();
    if (profiles_[root].empty()) return std::nullopt;
    const ExtendedMark& m = profiles_[root].front();

    std::vector<VertexSet> layers(inst_.k, VertexSet(g_.vertex_count()));
    VertexSet dominators(g_.vertex_count());
    collect(root, m, layers, dominators);

    // assemble the elimination tree: in every connected region the
    // shallowest deleted vertex is unique by layer validity; peel it
    EddcCertificate cert;
    VertexSet all_deleted(g_.vertex_count());
    for (const VertexSet& level : layers) all_deleted |= level;
    std::vector<std::pair<int, int>> links;
    std::function<void(const VertexSet&, int)> peel = [&](const VertexSet& region, int parent) {
        if (!(region & all_deleted).count()) return;
        int v = -1;
        for (const VertexSet& level : layers) {
            VertexSet here = region & level;
            if (!here.empty()) {
                v = here.first();
                break;
            }
        }
        links.emplace_back(v, parent);
        VertexSet rest = region;
        rest.remove(v);
        for (const VertexSet& comp : connected_components(g_, g_.all_vertices() - rest))
            peel(comp, v);
    };
    for (const VertexSet& comp : connected_components(g_, VertexSet(g_.vertex_count())))
        peel(comp, -1);

    VertexSet s(g_.vertex_count());
    for (auto [v, p] : links) s.add(v);
    cert.tree.vertices = s.to_vector();
    cert.tree.parent.assign(cert.tree.vertices.size(), -1);
    for (auto [v, p] : links)
        if (p >= 0) cert.tree.parent[cert.tree.index_of(v)] = cert.tree.index_of(p);
    cert.dominators = dominators;
    for (const VertexSet& comp : connected_components(g_, s))
        cert.components.emplace_back(comp, dominators & comp);
    if (!verify_eddc_certificate(g_, inst_, cert))
        throw std::logic_error("reconstructed elimination certificate failed verification");
    return cert;
}

bool verify_eddc_certificate(const Graph& g, const AnnotatedInstance& inst,
                             const EddcCertificate& cert) {
    if (cert.tree.depth() > inst.k) return false;
    VertexSet s(g.vertex_count());
    for (int v : cert.tree.vertices) {
        if (inst.forbidden.contains(v)) return false;
        s.add(v);
    }
    if (!validate_elimination_tree(g, cert.tree)) return false;
    if (cert.dominators.intersects(s)) return false;
    if (!cert.dominators.subset_of(inst.blue)) return false;
    for (const VertexSet& comp : connected_components(g, s)) {
        VertexSet dom = cert.dominators & comp;
        if (dom.count() > inst.d) return false;
        VertexSet covered = dom;
        DCLUSTER_FOR_SET(v, dom) covered |= g.neighbors(v) - s;
        if (!((inst.red & comp) - covered).empty()) return false;
    }
    return true;
}

EddcOutcome solve_aeddc(const Graph& g, const AnnotatedInstance& inst,
                        const std::optional<TreeDecomposition>& imported, EddcDpOptions options) {
    TreeDecomposition td;
    int q = 0;
    if (imported) {
        td = make_regular(g, *imported);
        for (q = 0; q <= g.vertex_count(); ++q)
            if (validate_decomposition(g, td, q, inst.k).ok) break;
        if (q > g.vertex_count()) throw std::invalid_argument("imported decomposition invalid");
    } else {
        BuiltDecomposition built = build_decomposition(g, inst.k);
        td = built.td;
        q = built.q;
    }
    EddcDp dp(g, inst, td, q, options);
    EddcOutcome out;
    out.certificate = dp.solve();
    out.feasible = out.certificate.has_value();
    out.stats = dp.stats();
    return out;
}

}  // namespace dcluster
