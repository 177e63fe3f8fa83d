#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcluster/generators.hpp"
#include "dcluster/graph.hpp"
#include "dcluster/oracle.hpp"
#include "dcluster/util.hpp"

#include <sstream>

using namespace dcluster;

TEST_CASE("parse single edge") {
    Graph g = parse_graph_text("p 2 1\ne 1 2\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("parse edgeless") {
    Graph g = parse_graph_text("p 3 0\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("parse rejects self-loop") {
    CHECK_THROWS_AS(parse_graph_text("p 2 1\ne 1 1\n"), ParseError);
}

TEST_CASE("parse rejects duplicates and bad ids with line numbers") {
    try {
        parse_graph_text("p 3 2\ne 1 2\ne 2 1\n");
        FAIL("expected duplicate edge error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph_text("p 2 1\ne 1 5\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("p 2 2\ne 1 2\n"), ParseError);
}

TEST_CASE("parse/serialize round-trips bit-exactly") {
    for (uint64_t seed : {1ull, 2ull, 3ull, 17ull}) {
        Graph g = gen_erdos_renyi(8, 0.4, seed);
        std::string text = serialize_graph(g);
        Graph h = parse_graph_text(text);
        CHECK(serialize_graph(h) == text);
    }
}

TEST_CASE("components: cycle split by antipodal pair") {
    Graph g = gen_cycle(6);
    auto comps = connected_components(g, VertexSet::of(6, {0, 3}));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].count() == 2);
    CHECK(comps[1].count() == 2);
}

TEST_CASE("components: K5 whole, P9 cut") {
    auto one = connected_components(gen_clique(5), VertexSet(5));
    REQUIRE(one.size() == 1);
    CHECK(one[0].count() == 5);

    auto three = connected_components(gen_path(9), VertexSet::of(9, {3, 7}));
    REQUIRE(three.size() == 3);
    CHECK(three[0] == VertexSet::of(9, {0, 1, 2}));
    CHECK(three[1] == VertexSet::of(9, {4, 5, 6}));
    CHECK(three[2] == VertexSet::of(9, {8}));
}

TEST_CASE("components partition and are internally connected, no cross edges") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = gen_erdos_renyi(9, 0.25, seed);
        SplitMix64 rng(seed * 7 + 1);
        VertexSet removed(9);
        for (int v = 0; v < 9; ++v)
            if (rng.unit() < 0.3) removed.add(v);
        auto comps = connected_components(g, removed);
        VertexSet seen(9);
        for (const VertexSet& c : comps) {
            CHECK(!c.intersects(seen));
            CHECK(!c.intersects(removed));
            seen |= c;
            // internally connected
            CHECK(component_of(g, c.first(), g.all_vertices() - c) == c);
        }
        CHECK(seen == g.all_vertices() - removed);
        for (size_t i = 0; i < comps.size(); ++i)
            for (size_t j = i + 1; j < comps.size(); ++j)
                CHECK(!closed_neighborhood(g, comps[i]).intersects(comps[j]));
    }
}

TEST_CASE("closed neighborhood") {
    Graph star = gen_star(5);
    CHECK(closed_neighborhood(star, VertexSet::of(5, {0})) == VertexSet::full(5));
    CHECK(closed_neighborhood(star, VertexSet(5)).empty());
    Graph p5 = gen_path(5);
    CHECK(closed_neighborhood(p5, VertexSet::of(5, {2})) == VertexSet::of(5, {1, 2, 3}));
}

TEST_CASE("double subdivision shapes") {
    Graph k2 = gen_clique(2);
    Graph s2 = double_subdivide(k2);
    CHECK(s2.vertex_count() == 4);
    CHECK(s2.edge_count() == 4);  // a 4-cycle through the two originals
    CHECK(connected_components(s2, VertexSet(4)).size() == 1);
    CHECK(s2.degree(0) == 2);
    CHECK(s2.degree(1) == 2);

    Graph k3 = gen_clique(3);
    Graph s3 = double_subdivide(k3);
    CHECK(s3.vertex_count() == 9);
    CHECK(s3.edge_count() == 12);
}

TEST_CASE("graph stats") {
    GraphStats c6 = graph_stats(gen_cycle(6));
    CHECK(c6.max_degree == 2);
    CHECK(c6.degeneracy == 2);
    GraphStats k5 = graph_stats(gen_clique(5));
    CHECK(k5.max_degree == 4);
    CHECK(k5.degeneracy == 4);
    GraphStats sub = graph_stats(double_subdivide(gen_clique(4)));
    CHECK(sub.degeneracy == 2);
}

TEST_CASE("double subdivision is 2-degenerate whenever there is an edge") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = gen_erdos_renyi(7, 0.4, seed);
        if (g.edge_count() == 0) continue;
        CHECK(graph_stats(double_subdivide(g)).degeneracy == 2);
    }
}

TEST_CASE("annotation parsing") {
    std::istringstream in("# comment\nF 1 3\nR 2\n");
    Annotations ann = parse_annotations(in, 4);
    CHECK(ann.forbidden == VertexSet::of(4, {0, 2}));
    CHECK(ann.red == VertexSet::of(4, {1}));
    CHECK(ann.blue == VertexSet::full(4));
}

TEST_CASE("treedepth of double subdivision (small spot checks)") {
    // td(double_subdivide(G)) = td(G) + 1, brute oracle both sides
    for (int n = 2; n <= 5; ++n) {
        Graph g = gen_path(n);
        CHECK(oracle::brute_treedepth(double_subdivide(g)).depth ==
              oracle::brute_treedepth(g).depth + 1);
    }
    Graph c4 = gen_cycle(4);
    CHECK(oracle::brute_treedepth(double_subdivide(c4)).depth ==
          oracle::brute_treedepth(c4).depth + 1);
}
