#include "dcluster/generators.hpp"

#include <stdexcept>

namespace dcluster {

Graph gen_path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph gen_cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (n > 2) edges.emplace_back(n - 1, 0);
    return Graph(n, std::move(edges));
}

Graph gen_clique(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph gen_star(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return Graph(n, std::move(edges));
}

Graph gen_half_graph(int n) {
    // vertices 0..n-1 are a_1..a_n, n..2n-1 are b_1..b_n
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) edges.emplace_back(i, n + j);
    return Graph(2 * n, std::move(edges));
}

Graph gen_biclique_minus_matching(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) edges.emplace_back(i, n + j);
    return Graph(2 * n, std::move(edges));
}

Graph gen_subdivided_clique(int n) {
    std::vector<std::pair<int, int>> edges;
    int next = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, next);
            edges.emplace_back(next, j);
            ++next;
        }
    return Graph(next, std::move(edges));
}

Graph gen_erdos_renyi(int n, double p, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.unit() < p) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph gen_random_connected(int n, double p, uint64_t seed) {
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Graph g = gen_erdos_renyi(n, p, rng.next());
        if (g.connected_ignoring(VertexSet(n))) return g;
    }
    // fall back to a random spanning tree plus extra edges
    SplitMix64 tree_rng(seed ^ 0xabcdefull);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(int(tree_rng.below(uint64_t(i))), i);
    Graph base(n, edges);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!base.has_edge(i, j) && tree_rng.unit() < p) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph generate(const FamilySpec& spec) {
    const std::string& f = spec.family;
    if (f == "path") return gen_path(spec.n);
    if (f == "cycle") return gen_cycle(spec.n);
    if (f == "clique") return gen_clique(spec.n);
    if (f == "star") return gen_star(spec.n);
    if (f == "half-graph") return gen_half_graph(spec.n);
    if (f == "biclique-minus-matching") return gen_biclique_minus_matching(spec.n);
    if (f == "subdivided-clique") return gen_subdivided_clique(spec.n);
    if (f == "double-subdivision") return double_subdivide(gen_erdos_renyi(spec.n, spec.p, spec.seed));
    if (f == "er") return gen_erdos_renyi(spec.n, spec.p, spec.seed);
    if (f == "er-connected") return gen_random_connected(spec.n, spec.p, spec.seed);
    throw std::invalid_argument("unknown family: " + f);
}

std::vector<std::string> known_families() {
    return {"path", "cycle", "clique", "star", "half-graph", "biclique-minus-matching",
            "subdivided-clique", "double-subdivision", "er", "er-connected"};
}

}  // namespace dcluster
