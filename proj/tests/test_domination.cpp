#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcluster/domination.hpp"
#include "dcluster/generators.hpp"
#include "dcluster/util.hpp"

using namespace dcluster;

TEST_CASE("min dominating set basics") {
    auto star = min_dominating_set(gen_star(6), 1);
    REQUIRE(star.has_value());
    CHECK(*star == VertexSet::of(6, {0}));

    CHECK(!min_dominating_set(gen_cycle(6), 1).has_value());
    auto c6 = min_dominating_set(gen_cycle(6), 2);
    REQUIRE(c6.has_value());
    CHECK(c6->count() == 2);

    CHECK(!min_dominating_set(Graph(3, {}), 2).has_value());
    auto edgeless = min_dominating_set(Graph(3, {}), 3);
    REQUIRE(edgeless.has_value());
    CHECK(edgeless->count() == 3);
}

TEST_CASE("min dominating set is lexicographically first among minimum") {
    // P5 minimum dominating sets have size 2; {0,3} is the lex-first one
    Graph p5 = gen_path(5);
    auto d = min_dominating_set(p5, 5);
    REQUIRE(d.has_value());
    CHECK(*d == VertexSet::of(5, {0, 3}));
}

TEST_CASE("red blue domination") {
    Graph p3 = gen_path(3);
    CHECK(red_blue_dominating_set(p3, VertexSet(3), VertexSet(3), 0).has_value());
    auto center = red_blue_dominating_set(p3, VertexSet::of(3, {0, 2}), VertexSet::of(3, {1}), 1);
    REQUIRE(center.has_value());
    CHECK(*center == VertexSet::of(3, {1}));
    CHECK(!red_blue_dominating_set(p3, VertexSet::of(3, {0, 2}), VertexSet::of(3, {0}), 1)
               .has_value());
}

TEST_CASE("apd trivial cases") {
    // K1 with R=B={0}, k=0, d=1: dominate the single vertex with itself
    AnnotatedInstance k1;
    k1.graph = Graph(1, {});
    k1.forbidden = VertexSet(1);
    k1.red = VertexSet::full(1);
    k1.blue = VertexSet::full(1);
    k1.k = 0;
    k1.d = 1;
    auto sol = annotated_partial_domination(k1);
    REQUIRE(sol.has_value());
    CHECK(sol->deleted.empty());
    CHECK(sol->dominators == VertexSet::of(1, {0}));

    // K2 with everything forbidden and no blue: infeasible
    AnnotatedInstance k2;
    k2.graph = gen_clique(2);
    k2.forbidden = VertexSet::full(2);
    k2.red = VertexSet::full(2);
    k2.blue = VertexSet(2);
    k2.k = 1;
    k2.d = 0;
    CHECK(!annotated_partial_domination(k2).has_value());
}

TEST_CASE("apd on P9") {
    // a single dominator covers at most 3 path vertices, so (k=2,d=1) is
    // infeasible; (k=3,d=2) works, e.g. D={2,6} leaving {0,4,8}
    CHECK(!annotated_partial_domination(AnnotatedInstance::plain(gen_path(9), 2, 1)).has_value());
    AnnotatedInstance inst = AnnotatedInstance::plain(gen_path(9), 3, 2);
    auto sol = annotated_partial_domination(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->deleted.count() <= 3);
    CHECK(sol->dominators.count() <= 2);
    VertexSet covered = closed_neighborhood(inst.graph, sol->dominators);
    CHECK((inst.red - sol->deleted - covered).empty());
}

namespace {

// independent oracle: enumerate (X, D) pairs outright
bool apd_pair_oracle(const AnnotatedInstance& inst) {
    bool found = false;
    for_each_subset_by_size(inst.graph.all_vertices() - inst.forbidden, inst.k,
                            [&](const VertexSet& x) {
                                bool ok = false;
                                for_each_subset_by_size(inst.blue - x, inst.d,
                                                        [&](const VertexSet& dom) {
                                                            VertexSet covered =
                                                                closed_neighborhood(inst.graph, dom);
                                                            if (((inst.red - x) - covered).empty()) {
                                                                ok = true;
                                                                return true;
                                                            }
                                                            return false;
                                                        });
                                if (ok) found = true;
                                return found;
                            });
    return found;
}

AnnotatedInstance random_instance(uint64_t seed) {
    SplitMix64 rng(seed);
    AnnotatedInstance inst;
    int n = 4 + int(rng.below(7));  // up to 10
    inst.graph = gen_erdos_renyi(n, 0.3, rng.next());
    inst.forbidden = VertexSet(n);
    inst.red = VertexSet(n);
    inst.blue = VertexSet(n);
    for (int v = 0; v < n; ++v) {
        if (rng.unit() < 0.2) inst.forbidden.add(v);
        if (rng.unit() < 0.7) inst.red.add(v);
        if (rng.unit() < 0.7) inst.blue.add(v);
    }
    inst.k = int(rng.below(4));
    inst.d = int(rng.below(3));
    return inst;
}

}  // namespace

TEST_CASE("apd agrees with the (X,D)-pair oracle; X = red minus N[D] is optimal") {
    for (uint64_t seed = 0; seed < 120; ++seed) {
        AnnotatedInstance inst = random_instance(seed);
        auto sol = annotated_partial_domination(inst);
        bool expected = apd_pair_oracle(inst);
        CHECK(sol.has_value() == expected);
        if (sol) {
            CHECK(sol->deleted.count() <= inst.k);
            CHECK(!sol->deleted.intersects(inst.forbidden));
            CHECK(sol->dominators.count() <= inst.d);
            CHECK(!sol->dominators.intersects(sol->deleted));
            VertexSet covered = closed_neighborhood(inst.graph, sol->dominators);
            CHECK(((inst.red - sol->deleted) - covered).empty());
        }
    }
}

TEST_CASE("apd monotone in budgets") {
    for (uint64_t seed = 200; seed < 260; ++seed) {
        AnnotatedInstance inst = random_instance(seed);
        if (!annotated_partial_domination(inst).has_value()) continue;
        AnnotatedInstance bigger_k = inst;
        bigger_k.k += 1;
        CHECK(annotated_partial_domination(bigger_k).has_value());
        AnnotatedInstance bigger_d = inst;
        bigger_d.d += 1;
        CHECK(annotated_partial_domination(bigger_d).has_value());
    }
}

TEST_CASE("apd exact-count variant") {
    AnnotatedInstance inst = AnnotatedInstance::plain(gen_path(9), 4, 2);
    auto exact = annotated_partial_domination_exact(inst, 4);
    REQUIRE(exact.has_value());
    CHECK(exact->deleted.count() == 4);
    // exact count beyond the padding room is infeasible
    AnnotatedInstance tiny = AnnotatedInstance::plain(Graph(1, {}), 1, 1);
    auto too_many = annotated_partial_domination_exact(tiny, 2);
    CHECK(!too_many.has_value());
}
