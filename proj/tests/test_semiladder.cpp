#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcluster/generators.hpp"
#include "dcluster/semiladder.hpp"

using namespace dcluster;

namespace {

// the 8-vertex graph with exactly the six solid pairs of the order-4 figure
Graph figure_graph() {
    // a1..a4 = 0..3, b1..b4 = 4..7
    return Graph(8, {{1, 4}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}});
}

}  // namespace

TEST_CASE("figure witness verifies at order 4") {
    Graph g = figure_graph();
    SemiLadderWitness w;
    w.a_seq = {0, 1, 2, 3};
    w.b_seq = {4, 5, 6, 7};
    CHECK(verify_semi_ladder(g, w));
}

TEST_CASE("order-1 witness is any non-adjacent distinct pair") {
    Graph g = gen_path(3);
    SemiLadderWitness w;
    w.a_seq = {0};
    w.b_seq = {2};
    CHECK(verify_semi_ladder(g, w));
    w.b_seq = {1};
    CHECK(!verify_semi_ladder(g, w));  // adjacent
}

TEST_CASE("complete graphs admit no order-2 witness") {
    Graph k4 = gen_clique(4);
    // all order-2 witnesses fail: the a2-b2 edge is always present
    std::vector<int> ids{0, 1, 2, 3};
    std::sort(ids.begin(), ids.end());
    int count = 0;
    do {
        SemiLadderWitness w;
        w.a_seq = {ids[0], ids[1]};
        w.b_seq = {ids[2], ids[3]};
        if (verify_semi_ladder(k4, w)) ++count;
    } while (std::next_permutation(ids.begin(), ids.end()));
    CHECK(count == 0);
}

TEST_CASE("index of cliques and edgeless graphs") {
    CHECK(semi_ladder_index(gen_clique(5), 6).index == 0);
    CHECK(semi_ladder_index(gen_clique(2), 3).index == 0);
    CHECK(semi_ladder_index(Graph(4, {}), 5).index == 1);
    CHECK(semi_ladder_index(Graph(2, {}), 5).index == 1);
}

TEST_CASE("K_{n,n} minus a perfect matching has index exactly n") {
    for (int n = 1; n <= 5; ++n) {
        auto res = semi_ladder_index(gen_biclique_minus_matching(n), n + 1);
        CHECK(res.index == n);
        CHECK(!res.lower_bound_only);
        CHECK(verify_semi_ladder(gen_biclique_minus_matching(n), res.witness));
    }
}

TEST_CASE("half graph index is its order") {
    for (int n = 2; n <= 5; ++n) {
        auto res = semi_ladder_index(gen_half_graph(n), n + 1);
        CHECK(res.index == n);
    }
}

TEST_CASE("cap reporting distinguishes exact from lower bound") {
    auto res = semi_ladder_index(gen_half_graph(5), 3);
    CHECK(res.index == 4);
    CHECK(res.lower_bound_only);
}

TEST_CASE("index is monotone under vertex deletion") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        Graph g = gen_erdos_renyi(8, 0.35, seed);
        int base = semi_ladder_index(g, 8).index;
        for (int v = 0; v < 8; ++v) {
            VertexSet keep = g.all_vertices();
            keep.remove(v);
            auto [h, back] = g.induced(keep);
            CHECK(semi_ladder_index(h, 8).index <= base);
        }
    }
}

TEST_CASE("search results are accepted by the verifier") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        Graph g = gen_erdos_renyi(8, 0.5, seed);
        auto res = semi_ladder_index(g, 6);
        if (res.index > 0 && !res.lower_bound_only)
            CHECK(verify_semi_ladder(g, res.witness));
    }
}
