#include "dcluster/marks.hpp"

#include <algorithm>
#include <functional>

#include "dcluster/util.hpp"

namespace dcluster {

void Mark::canonicalize() {
    std::vector<size_t> order(parts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return parts[a].first() < parts[b].first(); });
    std::vector<VertexSet> ps;
    std::vector<int> bs;
    for (size_t i : order) {
        ps.push_back(parts[i]);
        bs.push_back(part_budget[i]);
    }
    parts = std::move(ps);
    part_budget = std::move(bs);
}

bool Mark::operator==(const Mark& o) const {
    return s_a == o.s_a && d_a == o.d_a && u_a == o.u_a && k_a == o.k_a && parts == o.parts &&
           part_budget == o.part_budget;
}

bool Mark::operator<(const Mark& o) const {
    if (!(s_a == o.s_a)) return s_a < o.s_a;
    if (!(d_a == o.d_a)) return d_a < o.d_a;
    if (!(u_a == o.u_a)) return u_a < o.u_a;
    if (k_a != o.k_a) return k_a < o.k_a;
    if (parts.size() != o.parts.size()) return parts.size() < o.parts.size();
    for (size_t i = 0; i < parts.size(); ++i) {
        if (!(parts[i] == o.parts[i])) return parts[i] < o.parts[i];
        if (part_budget[i] != o.part_budget[i]) return part_budget[i] < o.part_budget[i];
    }
    return false;
}

std::string Mark::to_string() const {
    std::string s = "S=" + s_a.to_string() + " D=" + d_a.to_string() + " U=" + u_a.to_string() +
                    " k=" + std::to_string(k_a) + " P=[";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i].to_string() + ":" + std::to_string(part_budget[i]);
    }
    return s + "]";
}

std::vector<Mark> enumerate_marks(const VertexSet& a, int k, int d) {
    std::vector<Mark> out;
    std::vector<int> members = a.to_vector();
    int n = int(members.size());
    int universe = a.universe();
    // assignment per member: 0 = s_a, 1 = d_a, 2 = u_a, 3 = partitioned rest
    std::vector<int> assign(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i < n) {
            for (int c = 0; c < 4; ++c) {
                assign[i] = c;
                rec(i + 1);
            }
            return;
        }
        Mark base;
        base.s_a = VertexSet(universe);
        base.d_a = VertexSet(universe);
        base.u_a = VertexSet(universe);
        std::vector<int> rest;
        for (int j = 0; j < n; ++j) {
            switch (assign[j]) {
                case 0: base.s_a.add(members[j]); break;
                case 1: base.d_a.add(members[j]); rest.push_back(members[j]); break;
                case 2: base.u_a.add(members[j]); rest.push_back(members[j]); break;
                default: rest.push_back(members[j]);
            }
        }
        for_each_partition(rest, universe, [&](const std::vector<VertexSet>& blocks) {
            std::vector<int> budgets(blocks.size(), 0);
            std::function<void(size_t)> budget_rec = [&](size_t bi) {
                if (bi == blocks.size()) {
                    for (int ka = 0; ka + base.s_a.count() <= k; ++ka) {
                        Mark m = base;
                        m.k_a = ka;
                        m.parts = blocks;
                        m.part_budget = budgets;
                        m.canonicalize();
                        out.push_back(std::move(m));
                    }
                    return;
                }
                for (int p = 0; p <= d; ++p) {
                    budgets[bi] = p;
                    budget_rec(bi + 1);
                }
            };
            budget_rec(0);
        });
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

Mark normalize_mark(const Mark& m, const AnnotatedInstance& inst) {
    Mark n = m;
    n.u_a = m.u_a & inst.red;
    return n;
}

namespace {

bool component_clause(const Graph& g, const AnnotatedInstance& inst, const VertexSet& a,
                      const Mark& m, const VertexSet& comp, const VertexSet& deleted) {
    VertexSet trace = comp & a;
    if (trace.empty()) {
        // plain red-blue domination within the component, budget d
        VertexSet red = inst.red & comp;
        VertexSet blue = inst.blue & comp;
        bool ok = false;
        for_each_subset_by_size(blue, inst.d, [&](const VertexSet& dom) {
            VertexSet cov = dom;
            DCLUSTER_FOR_SET(v, dom) cov |= g.neighbors(v) - deleted;
            if ((red - cov).empty()) { ok = true; return true; }
            return false;
        });
        return ok;
    }
    int part = -1;
    for (size_t i = 0; i < m.parts.size(); ++i)
        if (m.parts[i] == trace) { part = int(i); break; }
    if (part < 0) return false;
    VertexSet base = m.d_a & trace;
    if (!base.subset_of(inst.blue)) return false;
    int budget = m.part_budget[part] - base.count();
    if (budget < 0) return false;
    VertexSet need = (inst.red & comp) - m.u_a;
    VertexSet cov = base;
    DCLUSTER_FOR_SET(v, base) cov |= g.neighbors(v) - deleted;
    VertexSet pool = ((inst.blue & comp) - a);  // D_C cap P is pinned to d_a cap P
    bool ok = false;
    for_each_subset_by_size(pool, budget, [&](const VertexSet& extra) {
        VertexSet c = cov | extra;
        DCLUSTER_FOR_SET(v, extra) c |= g.neighbors(v) - deleted;
        if ((need - c).empty()) { ok = true; return true; }
        return false;
    });
    return ok;
}

}  // namespace

bool mark_realized_brute(const Graph& g, const AnnotatedInstance& inst, const VertexSet& a,
                         const Mark& m) {
    if (!m.s_a.subset_of(a) || m.s_a.intersects(inst.forbidden)) return false;
    int total = m.s_a.count() + m.k_a;
    if (total > inst.k) return false;
    VertexSet pool = (g.all_vertices() - inst.forbidden) - a;
    bool found = false;
    for_each_subset_of_size(pool, m.k_a, [&](const VertexSet& outside) {
        VertexSet deleted = outside | m.s_a;
        for (const VertexSet& comp : connected_components(g, deleted)) {
            if (!component_clause(g, inst, a, m, comp, deleted)) return false;
        }
        found = true;
        return true;
    });
    return found;
}

}  // namespace dcluster
