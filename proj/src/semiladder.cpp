#include "dcluster/semiladder.hpp"

#include <stdexcept>

namespace dcluster {

bool verify_semi_ladder(const Graph& g, const SemiLadderWitness& w) {
    int n = w.order();
    if (int(w.b_seq.size()) != n) return false;
    VertexSet used(g.vertex_count());
    for (auto& seq : {w.a_seq, w.b_seq}) {
        for (int v : seq) {
            if (v < 0 || v >= g.vertex_count())
                throw std::out_of_range("witness vertex out of range");
            if (used.contains(v)) return false;  // 2n vertices must be distinct
            used.add(v);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (g.has_edge(w.a_seq[i], w.b_seq[i])) return false;
        for (int j = 0; j < i; ++j)
            if (!g.has_edge(w.a_seq[i], w.b_seq[j])) return false;
    }
    return true;
}

namespace {

// Incremental extension: a partial semi-ladder of order m is extended by a
// fresh pair (a_{m+1}, b_{m+1}); the new a must be adjacent to every earlier
// b and non-adjacent to the new b. Constraints never look forward, so
// depth-first search over pairs in ascending id order finds the
// lexicographically first witness of each order.
struct Search {
    const Graph& g;
    int target;
    VertexSet used;
    SemiLadderWitness cur;

    explicit Search(const Graph& g, int target)
        : g(g), target(target), used(g.vertex_count()) {}

    bool extend() {
        if (cur.order() == target) return true;
        int n = g.vertex_count();
        for (int a = 0; a < n; ++a) {
            if (used.contains(a)) continue;
            bool ok = true;
            for (int b : cur.b_seq)
                if (!g.has_edge(a, b)) { ok = false; break; }
            if (!ok) continue;
            used.add(a);
            for (int b = 0; b < n; ++b) {
                if (used.contains(b) || g.has_edge(a, b)) continue;
                used.add(b);
                cur.a_seq.push_back(a);
                cur.b_seq.push_back(b);
                if (extend()) return true;
                cur.a_seq.pop_back();
                cur.b_seq.pop_back();
                used.remove(b);
            }
            used.remove(a);
        }
        return false;
    }
};

}  // namespace

SemiLadderResult semi_ladder_index(const Graph& g, int cap) {
    SemiLadderResult res;
    for (int order = 1; order <= cap + 1; ++order) {
        Search s(g, order);
        if (!s.extend()) break;
        res.index = order;
        res.witness = s.cur;
    }
    res.lower_bound_only = res.index > cap;
    return res;
}

}  // namespace dcluster
