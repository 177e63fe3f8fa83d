#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcluster/generators.hpp"
#include "dcluster/oracle.hpp"
#include "dcluster/util.hpp"

using namespace dcluster;
using namespace dcluster::oracle;

TEST_CASE("brute dcd basics") {
    AnnotatedInstance k1;
    k1.graph = Graph(1, {});
    k1.forbidden = VertexSet(1);
    k1.red = VertexSet::full(1);
    k1.blue = VertexSet(1);
    k1.k = 0;
    k1.d = 0;
    CHECK(!brute_dcd(k1).feasible);  // a red vertex with no blue dominator

    AnnotatedInstance all = AnnotatedInstance::plain(gen_cycle(5), 5, 0);
    CHECK(brute_dcd(all).feasible);  // delete everything

    AnnotatedInstance p9 = AnnotatedInstance::plain(gen_path(9), 2, 1);
    DcdWitness w = brute_dcd(p9);
    CHECK(w.feasible);
    CHECK(w.deleted.count() <= 2);
}

TEST_CASE("brute dcd witness is valid") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(seed);
        AnnotatedInstance inst = AnnotatedInstance::plain(gen_erdos_renyi(8, 0.3, rng.next()),
                                                          int(rng.below(3)), int(rng.below(3)));
        DcdWitness w = brute_dcd(inst);
        if (!w.feasible) continue;
        auto comps = connected_components(inst.graph, w.deleted);
        REQUIRE(comps.size() == w.dominators.size());
        for (size_t i = 0; i < comps.size(); ++i) {
            CHECK(w.dominators[i].count() <= inst.d);
            CHECK(w.dominators[i].subset_of(comps[i]));
            VertexSet covered = closed_neighborhood(inst.graph, w.dominators[i]) - w.deleted;
            CHECK((comps[i] & inst.red).subset_of(covered | (comps[i] - inst.red)));
            CHECK(((comps[i] & inst.red) - covered).empty());
        }
    }
}

TEST_CASE("brute treedepth small values") {
    CHECK(brute_treedepth(Graph(0, {})).depth == 0);
    CHECK(brute_treedepth(Graph(1, {})).depth == 1);
    CHECK(brute_treedepth(gen_path(3)).depth == 2);
    CHECK(brute_treedepth(gen_path(7)).depth == 3);
    CHECK(brute_treedepth(gen_cycle(4)).depth == 3);
    CHECK(brute_treedepth(gen_clique(5)).depth == 5);
}

TEST_CASE("brute treedepth equals the d=0 eddc recursion") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = gen_erdos_renyi(7, 0.35, seed);
        int td = brute_treedepth(g).depth;
        AnnotatedInstance inst;
        inst.graph = g;
        inst.forbidden = VertexSet(7);
        inst.red = VertexSet::full(7);
        inst.blue = VertexSet(7);
        inst.d = 0;
        inst.k = td;
        CHECK(brute_eddc(inst).feasible);
        inst.k = td - 1;
        if (td > 0) CHECK(!brute_eddc(inst).feasible);
    }
}

TEST_CASE("brute eddc base cases and monotonicity") {
    // k=0: per-component red-blue domination
    AnnotatedInstance two_triangles;
    two_triangles.graph = Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    two_triangles.forbidden = VertexSet(6);
    two_triangles.red = VertexSet::full(6);
    two_triangles.blue = VertexSet::full(6);
    two_triangles.k = 0;
    two_triangles.d = 1;
    CHECK(brute_eddc(two_triangles).feasible);

    for (uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed);
        AnnotatedInstance inst = AnnotatedInstance::plain(gen_erdos_renyi(7, 0.3, rng.next()),
                                                          int(rng.below(3)), int(rng.below(2)));
        if (!brute_eddc(inst).feasible) continue;
        AnnotatedInstance more_k = inst;
        more_k.k += 1;
        CHECK(brute_eddc(more_k).feasible);
        AnnotatedInstance more_d = inst;
        more_d.d += 1;
        CHECK(brute_eddc(more_d).feasible);
    }
}

TEST_CASE("eddc witness trees validate") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed);
        AnnotatedInstance inst = AnnotatedInstance::plain(gen_erdos_renyi(7, 0.35, rng.next()),
                                                          int(rng.below(4)), int(rng.below(2)));
        EddcWitness w = brute_eddc(inst);
        if (!w.feasible) continue;
        CHECK(w.tree.depth() <= inst.k);
        CHECK(validate_elimination_tree(inst.graph, w.tree));
    }
}

TEST_CASE("dcd positive implies eddc positive at the same depth") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed);
        AnnotatedInstance inst = AnnotatedInstance::plain(gen_erdos_renyi(7, 0.3, rng.next()),
                                                          int(rng.below(3)), int(rng.below(2)));
        if (brute_dcd(inst).feasible) CHECK(brute_eddc(inst).feasible);
    }
}

TEST_CASE("budget guard") {
    AnnotatedInstance big = AnnotatedInstance::plain(gen_clique(14), 1, 1);
    OracleBudget strict;
    strict.max_vertices = 10;
    CHECK_THROWS(brute_dcd(big, strict));
}

TEST_CASE("elimination tree checker") {
    Graph p3 = gen_path(3);
    EliminationTree single;
    single.vertices = {1};
    single.parent = {-1};
    CHECK(validate_elimination_tree(p3, single));

    // two adjacent vertices as incomparable roots: the edge dodges ancestors
    EliminationTree bad;
    bad.vertices = {0, 1};
    bad.parent = {-1, -1};
    CHECK(!validate_elimination_tree(p3, bad));

    // a left comb over a path is always fine
    EliminationTree comb = comb_tree(VertexSet::of(3, {0, 1, 2}));
    CHECK(validate_elimination_tree(p3, comb));
    CHECK(comb.depth() == 3);
}

TEST_CASE("brute skeletons contain the empty set on easy instances") {
    Graph k6 = gen_clique(6);
    auto skels = brute_skeletons(k6, 2, 1, 1, SkeletonKind::dcd);
    bool has_empty = false;
    for (const VertexSet& s : skels)
        if (s.empty()) has_empty = true;
    CHECK(has_empty);
}
