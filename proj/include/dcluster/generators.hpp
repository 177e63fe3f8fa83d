#pragma once

#include <string>
#include <vector>

#include "dcluster/graph.hpp"
#include "dcluster/util.hpp"

namespace dcluster {

// Seeded instance generators. The same (family, n, seed, p) always yields
// the same graph.
Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_clique(int n);
Graph gen_star(int n);  // K_{1,n-1}
// a_i adjacent to b_j exactly when i > j; semi-ladder index n by design
Graph gen_half_graph(int n);
Graph gen_biclique_minus_matching(int n);  // K_{n,n} minus a perfect matching
Graph gen_subdivided_clique(int n);        // K_n with every edge subdivided once
Graph gen_erdos_renyi(int n, double p, uint64_t seed);
Graph gen_random_connected(int n, double p, uint64_t seed);

struct FamilySpec {
    std::string family;
    int n = 0;
    double p = 0.3;
    uint64_t seed = 0;
};

// Dispatch by family name; throws on unknown families.
Graph generate(const FamilySpec& spec);
std::vector<std::string> known_families();

}  // namespace dcluster
