#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcluster/vertex_set.hpp"

namespace dcluster {

// Enumerates subsets of `pool` with at most `max_size` members in ascending
// lexicographic order on the sorted id sequence ({} first, then {p0},
// {p0,p1}, ...). Stops early when the visitor returns true.
inline bool for_each_subset_lex(const VertexSet& pool, int max_size,
                                const std::function<bool(const VertexSet&)>& visit) {
    std::vector<int> ids = pool.to_vector();
    VertexSet cur(pool.universe());
    std::function<bool(size_t, int)> rec = [&](size_t from, int size) -> bool {
        if (visit(cur)) return true;
        if (size == max_size) return false;
        for (size_t i = from; i < ids.size(); ++i) {
            cur.add(ids[i]);
            if (rec(i + 1, size + 1)) return true;
            cur.remove(ids[i]);
        }
        return false;
    };
    return rec(0, 0);
}

// Enumerates subsets of `pool` by ascending size, lexicographic within each
// size. This is the canonical order for "smallest solution, lex-first" picks.
inline bool for_each_subset_by_size(const VertexSet& pool, int max_size,
                                    const std::function<bool(const VertexSet&)>& visit) {
    std::vector<int> ids = pool.to_vector();
    int n = int(ids.size());
    if (max_size > n) max_size = n;
    VertexSet cur(pool.universe());
    std::function<bool(int, int)> rec = [&](int from, int remaining) -> bool {
        if (remaining == 0) return visit(cur);
        if (n - from < remaining) return false;
        for (int i = from; i <= n - remaining; ++i) {
            cur.add(ids[i]);
            if (rec(i + 1, remaining - 1)) return true;
            cur.remove(ids[i]);
        }
        return false;
    };
    for (int size = 0; size <= max_size; ++size)
        if (rec(0, size)) return true;
    return false;
}

// Enumerates exact-size subsets, lex order.
inline bool for_each_subset_of_size(const VertexSet& pool, int size,
                                    const std::function<bool(const VertexSet&)>& visit) {
    std::vector<int> ids = pool.to_vector();
    int n = int(ids.size());
    if (size > n) return false;
    VertexSet cur(pool.universe());
    std::function<bool(int, int)> rec = [&](int from, int remaining) -> bool {
        if (remaining == 0) return visit(cur);
        if (n - from < remaining) return false;
        for (int i = from; i <= n - remaining; ++i) {
            cur.add(ids[i]);
            if (rec(i + 1, remaining - 1)) return true;
            cur.remove(ids[i]);
        }
        return false;
    };
    return rec(0, size);
}

// All set partitions of `items` into nonempty blocks, canonical order
// (each element joins an existing block in order or opens a new one, so
// blocks are sorted by their minimum element).
inline void for_each_partition(const std::vector<int>& items, int universe,
                               const std::function<void(const std::vector<VertexSet>&)>& visit) {
    std::vector<VertexSet> blocks;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == items.size()) {
            visit(blocks);
            return;
        }
        for (auto& b : blocks) {
            b.add(items[i]);
            rec(i + 1);
            b.remove(items[i]);
        }
        blocks.emplace_back(universe);
        blocks.back().add(items[i]);
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

// splitmix64: seeded, splittable enough for reproducible instance generation.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }
    double unit() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }
    SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dull); }

private:
    uint64_t state_;
};

}  // namespace dcluster
