#include "dcluster/dp.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <stdexcept>

#include "dcluster/util.hpp"

namespace dcluster {

long long WalkTrace::leaves() const {
    long long n = 0;
    for (const Node& node : nodes)
        if (node.children.empty()) ++n;
    return n;
}

int WalkTrace::depth() const {
    std::function<int(int)> rec = [&](int i) {
        int best = 0;
        for (int c : nodes[i].children) best = std::max(best, rec(c));
        return best + 1;
    };
    return nodes.empty() ? 0 : rec(0);
}

bool WalkTrace::valid_black_white() const {
    for (const Node& node : nodes) {
        if (node.children.empty()) continue;
        int white = 0;
        for (int c : node.children) white += nodes[c].white ? 1 : 0;
        bool one_white = white == 1 && node.children.size() == 1;
        bool all_black = white == 0;
        if (!one_white && !all_black) return false;
    }
    return true;
}

int WalkTrace::max_black_path() const {
    std::function<int(int)> rec = [&](int i) {
        int best = 0;
        for (int c : nodes[i].children) best = std::max(best, rec(c));
        return best + (i > 0 && !nodes[i].white ? 1 : 0);
    };
    return nodes.empty() ? 0 : rec(0);
}

BlackWhiteReport branch_accounting(const std::vector<WalkTrace>& traces, int alpha, int beta) {
    BlackWhiteReport rep;
    rep.alpha = std::max(alpha, 1);
    rep.beta = beta;
    rep.leaf_bound = 1;
    for (int i = 0; i < beta; ++i) {
        rep.leaf_bound *= rep.alpha;
        if (rep.leaf_bound > (1ll << 50)) break;  // saturate, plenty for the assertion
    }
    for (const WalkTrace& t : traces) {
        ++rep.traces;
        rep.total_nodes += (long long)t.nodes.size();
        rep.max_leaves = std::max(rep.max_leaves, t.leaves());
        if (!t.valid_black_white() || t.max_black_path() > beta || t.leaves() > rep.leaf_bound ||
            (long long)t.nodes.size() > rep.leaf_bound * std::max(t.depth(), 1)) {
            rep.valid = false;
        }
    }
    return rep;
}

namespace {

bool defect_skip_ds_check() {
    static const char* v = std::getenv("DCLUSTER_DEFECT");
    return v && std::strcmp(v, "skip-ds-check") == 0;
}

}  // namespace

AdcdDp::AdcdDp(const Graph& g, const AnnotatedInstance& inst, const TreeDecomposition& td, int q,
               DpOptions options)
    : g_(g), inst_(inst), td_(td), q_(q), options_(options) {
    profiles_.resize(td.node_count());
    assemblies_.resize(td.node_count());
    stats_.q = q;
    stats_.decomposition_nodes = td.node_count();
}

void AdcdDp::run() {
    if (ran_) return;
    for (int x : td_.post_order()) compute_node(x);
    for (const auto& p : profiles_)
        stats_.max_profile_size = std::max(stats_.max_profile_size, int(p.size()));
    ran_ = true;
}

bool AdcdDp::realized(int node, const Mark& m) const {
    Mark n = normalize_mark(m, inst_);
    n.canonicalize();
    const auto& prof = profiles_[node];
    return std::binary_search(prof.begin(), prof.end(), n);
}

namespace {

struct ChildSelection {
    bool selected = false;
    bool neutral = false;
    Mark mark;
    VertexSet basis_s, basis_d;  // traces the neutral pick was based on
};

}  // namespace

void AdcdDp::compute_node(int x) {
    const int n = g_.vertex_count();
    const VertexSet adh = td_.adhesion(x);
    const VertexSet bag = td_.bag(x);
    const std::vector<int>& kids = td_.children(x);
    const VertexSet cone = td_.cone(x);

    // shapes: candidate marks with k_a = 0 and u_a restricted to red
    std::vector<Mark> shapes;
    for (Mark& m : enumerate_marks(adh, inst_.k, inst_.d)) {
        if (m.k_a != 0) continue;
        if (!(m.u_a & (g_.all_vertices() - inst_.red)).empty()) continue;
        if (m.s_a.intersects(inst_.forbidden)) continue;
        if (!m.d_a.subset_of(inst_.blue)) continue;
        bool ok = true;
        for (size_t i = 0; i < m.parts.size() && ok; ++i)
            if ((m.d_a & m.parts[i]).count() > m.part_budget[i]) ok = false;
        if (!ok) continue;
        // each part must be connectable inside the cone once s_a is gone
        for (const VertexSet& part : m.parts) {
            int head = part.first();
            if (head < 0) continue;
            VertexSet comp = component_of(g_, head, (g_.all_vertices() - cone) | m.s_a);
            if (!part.subset_of(comp)) { ok = false; break; }
        }
        if (ok) shapes.push_back(std::move(m));
    }

    std::vector<Mark> profile_out;
    auto& assembly_map = assemblies_[x];

    for (const Mark& shape : shapes) {
        ++stats_.shapes_walked;
        WalkTrace trace;
        trace.decomposition_node = x;
        trace.nodes.emplace_back();

        std::map<int, Assembly> found_by_ka;

        std::vector<ChildSelection> selection(kids.size());
        VertexSet s_hat = shape.s_a;
        VertexSet d_hat = shape.d_a;
        int below_del = 0;
        int below_dom = 0;

        std::function<void(int)> walk = [&](int trace_at) {
            // budget gates
            if (s_hat.count() + below_del > inst_.k) return;
            if (d_hat.count() + below_dom > q_ * inst_.d) return;

            // next child to resolve: unselected, or a neutral whose basis is stale
            int next = -1;
            for (size_t i = 0; i < kids.size(); ++i) {
                if (!selection[i].selected) { next = int(i); break; }
                if (selection[i].neutral) {
                    VertexSet ay = td_.adhesion(kids[i]);
                    if (!((s_hat & ay) == selection[i].basis_s) ||
                        !((d_hat & ay) == selection[i].basis_d)) {
                        next = int(i);
                        break;
                    }
                }
            }
            if (next < 0) {
                // final consistency across all selections
                for (size_t i = 0; i < kids.size(); ++i) {
                    VertexSet ay = td_.adhesion(kids[i]);
                    if (!((s_hat & ay) == selection[i].mark.s_a)) return;
                    if (!((d_hat & ay) == selection[i].mark.d_a)) return;
                }
                if (!((s_hat & adh) == shape.s_a)) return;
                if (!((d_hat & adh) == shape.d_a)) return;

                // assemble the bag graph
                VertexSet interior = bag - s_hat;
                std::vector<GadgetSpec> specs;
                for (size_t i = 0; i < kids.size(); ++i) {
                    const Mark& my = selection[i].mark;
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

                VertexSet undominated_share(n);  // A_y vertices the children leave red
                for (size_t i = 0; i < kids.size(); ++i)
                    undominated_share |= td_.adhesion(kids[i]) - selection[i].mark.u_a;

                VertexSet covered = closed_neighborhood(g_, d_hat);

                VertexSet fh(hn), rh(hn), bh(hn);
                for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv) {
                    int ov = bg.interior_to_original[hv];
                    if (inst_.forbidden.contains(ov) || adhesions_all.contains(ov) ||
                        d_hat.contains(ov))
                        fh.add(hv);
                    if (inst_.red.contains(ov) && !shape.u_a.contains(ov) &&
                        !undominated_share.contains(ov) && !covered.contains(ov))
                        rh.add(hv);
                    if (inst_.blue.contains(ov) && !adhesions_all.contains(ov) &&
                        !adh.contains(ov) && !d_hat.contains(ov))
                        bh.add(hv);
                }
                fh |= bg.exterior;
                rh |= bg.gadget_red();
                bh |= bg.gadget_blue();

                BagSolveOptions opts;
                opts.skip_exterior_blue_check = true;
                opts.forced_dominators = VertexSet(hn);
                for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv)
                    if (d_hat.contains(bg.interior_to_original[hv]))
                        opts.forced_dominators.add(hv);
                for (const VertexSet& part : shape.parts) {
                    VertexSet mapped(hn);
                    for (int hv = 0; hv < int(bg.interior_to_original.size()); ++hv)
                        if (part.contains(bg.interior_to_original[hv])) mapped.add(hv);
                    opts.separate.push_back(mapped);
                }

                int offset = (s_hat - shape.s_a).count() + below_del;
                int cap = inst_.k - shape.s_a.count();
                for (int m = 0; offset + m <= cap; ++m) {
                    int ka = offset + m;
                    if (found_by_ka.count(ka)) continue;
                    ++stats_.bag_solver_calls;
                    opts.exact_deletions = m;
                    auto sol = solve_adcd_on_bag_graph(bg, fh, rh, bh, m, inst_.d, q_, opts);
                    if (!sol) continue;
                    Assembly as;
                    as.s_hat = s_hat;
                    as.d_hat = d_hat;
                    for (size_t i = 0; i < kids.size(); ++i)
                        as.child_marks.emplace_back(kids[i], selection[i].mark);
                    as.h_deleted = VertexSet(n);
                    DCLUSTER_FOR_SET(hv, sol->deleted)
                        as.h_deleted.add(bg.interior_to_original[hv]);
                    as.h_dominators = VertexSet(n);
                    for (const auto& [comp, dom] : sol->components) {
                        DCLUSTER_FOR_SET(hv, dom & bg.interior)
                            as.h_dominators.add(bg.interior_to_original[hv]);
                    }
                    found_by_ka.emplace(ka, std::move(as));
                }
                return;
            }

            int y = kids[next];
            const VertexSet ay = td_.adhesion(y);
            const auto& child_profile = profiles_[y];
            ChildSelection saved = selection[next];

            if (options_.neutral_shortcut) {
                // neutral pick: zero-cost mark matching the current traces,
                // with the unique minimal u
                const Mark* neutral = nullptr;
                for (const Mark& cm : child_profile) {
                    if (cm.k_a != 0) continue;
                    bool zero = true;
                    for (int p : cm.part_budget)
                        if (p != 0) { zero = false; break; }
                    if (!zero) continue;
                    if (!((s_hat & ay) == cm.s_a) || !((d_hat & ay) == cm.d_a)) continue;
                    if (!neutral || cm.u_a.count() < neutral->u_a.count()) neutral = &cm;
                }
                if (neutral) {
                    selection[next] = {true, true, *neutral, s_hat & ay, d_hat & ay};
                    trace.nodes.emplace_back();
                    trace.nodes.back().white = true;
                    int id = int(trace.nodes.size()) - 1;
                    trace.nodes[trace_at].children.push_back(id);
                    walk(id);
                    selection[next] = saved;
                    return;
                }
            }

            for (const Mark& cm : child_profile) {
                if (!(s_hat & ay).subset_of(cm.s_a)) continue;
                if (!(d_hat & ay).subset_of(cm.d_a)) continue;
                if (!defect_skip_ds_check()) {
                    if (d_hat.intersects(cm.s_a) || s_hat.intersects(cm.d_a)) continue;
                }
                if (!(cm.s_a & adh).subset_of(shape.s_a)) continue;
                if (!(cm.d_a & adh).subset_of(shape.d_a)) continue;
                VertexSet save_s = s_hat, save_d = d_hat;
                int save_bdel = below_del, save_bdom = below_dom;
                s_hat |= cm.s_a;
                d_hat |= cm.d_a;
                below_del += cm.k_a;
                for (size_t pi = 0; pi < cm.parts.size(); ++pi)
                    below_dom += cm.part_budget[pi] - (cm.d_a & cm.parts[pi]).count();
                selection[next] = {true, false, cm, VertexSet(n), VertexSet(n)};
                ++stats_.branches;
                trace.nodes.emplace_back();
                int id = int(trace.nodes.size()) - 1;
                trace.nodes[trace_at].children.push_back(id);
                walk(id);
                selection[next] = saved;
                s_hat = save_s;
                d_hat = save_d;
                below_del = save_bdel;
                below_dom = save_bdom;
            }
        };

        walk(0);
        stats_.leaves += trace.leaves();
        if (options_.record_traces) traces_.push_back(std::move(trace));

        for (auto& [ka, assembly] : found_by_ka) {
            Mark m = shape;
            m.k_a = ka;
            profile_out.push_back(m);
            assembly_map.emplace(m, std::move(assembly));
        }
    }

    std::sort(profile_out.begin(), profile_out.end());
    profiles_[x] = std::move(profile_out);
}

void AdcdDp::collect(int x, const Mark& m, VertexSet& deleted, VertexSet& dominators) const {
    const Assembly& as = assemblies_[x].at(m);
    deleted |= as.s_hat;
    deleted |= as.h_deleted;
    dominators |= as.d_hat;
    dominators |= as.h_dominators;
    for (const auto& [y, my] : as.child_marks) collect(y, my, deleted, dominators);
}

std::optional<AdcdCertificate> AdcdDp::solve() {
    run();
    int root = td_.root();
    const Mark* best = nullptr;
    for (const Mark& m : profiles_[root])
        if (m.k_a <= inst_.k && (!best || m.k_a < best->k_a)) best = &m;
    if (!best) return std::nullopt;
    AdcdCertificate cert;
    cert.deleted = VertexSet(g_.vertex_count());
    cert.dominators = VertexSet(g_.vertex_count());
    collect(root, *best, cert.deleted, cert.dominators);
    for (const VertexSet& comp : connected_components(g_, cert.deleted))
        cert.components.emplace_back(comp, cert.dominators & comp);
    if (!verify_adcd_certificate(g_, inst_, cert))
        throw std::logic_error("reconstructed certificate failed verification");
    return cert;
}

int AdcdDp::trace_alpha() const {
    int alpha = 1;
    for (const auto& p : profiles_) alpha = std::max(alpha, int(p.size()));
    return alpha;
}

int AdcdDp::trace_beta() const { return inst_.k + q_ * inst_.d; }

bool verify_adcd_certificate(const Graph& g, const AnnotatedInstance& inst,
                             const AdcdCertificate& cert) {
    if (cert.deleted.count() > inst.k) return false;
    if (cert.deleted.intersects(inst.forbidden)) return false;
    if (cert.deleted.intersects(cert.dominators)) return false;
    if (!cert.dominators.subset_of(inst.blue)) return false;
    for (const VertexSet& comp : connected_components(g, cert.deleted)) {
        VertexSet dom = cert.dominators & comp;
        if (dom.count() > inst.d) return false;
        VertexSet covered = dom;
        DCLUSTER_FOR_SET(v, dom) covered |= g.neighbors(v) - cert.deleted;
        if (!((inst.red & comp) - covered).empty()) return false;
    }
    return true;
}

AdcdOutcome solve_adcd(const Graph& g, const AnnotatedInstance& inst,
                       const std::optional<TreeDecomposition>& imported, DpOptions options) {
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
    AdcdDp dp(g, inst, td, q, options);
    AdcdOutcome out;
    out.certificate = dp.solve();
    out.feasible = out.certificate.has_value();
    out.stats = dp.stats();
    return out;
}

}  // namespace dcluster
