#pragma once

#include <cstdint>
#include <cassert>
#include <string>
#include <vector>

namespace dcluster {

// Fixed-width bit vector over a graph universe 0..n-1. All solver state
// (deleted sets, dominators, bags, ...) is expressed with these, and all
// iteration is ascending by id so every search is deterministic.
class VertexSet {
public:
    VertexSet() : n_(0) {}
    explicit VertexSet(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.add(v);
        return s;
    }
    static VertexSet of(int universe, std::initializer_list<int> ids) {
        VertexSet s(universe);
        for (int v : ids) s.add(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }
    void add(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= uint64_t(1) << (v & 63);
    }
    void remove(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(uint64_t(1) << (v & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }
    // Canonical total order: by smallest differing word, i.e. lexicographic
    // on the ascending id sequence when sizes match.
    bool operator<(const VertexSet& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] != o.words_[i]) {
                uint64_t diff = words_[i] ^ o.words_[i];
                uint64_t low = diff & (~diff + 1);
                return words_[i] & low;  // the side owning the smallest id comes first
            }
        }
        return false;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool subset_of(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    int first() const {  // -1 when empty
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + __builtin_ctzll(words_[i]));
        return -1;
    }
    int next(int v) const {  // smallest member > v, or -1
        ++v;
        if (v >= n_) return -1;
        size_t i = v >> 6;
        uint64_t w = words_[i] & (~uint64_t(0) << (v & 63));
        while (true) {
            if (w) return int(i * 64 + __builtin_ctzll(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool sep = false;
        for (int v = first(); v >= 0; v = next(v)) {
            if (sep) s += ",";
            s += std::to_string(v);
            sep = true;
        }
        return s + "}";
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    int n_;
    std::vector<uint64_t> words_;
};

struct VertexSetHash {
    size_t operator()(const VertexSet& s) const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ uint64_t(s.universe());
        for (uint64_t w : s.words()) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return size_t(h);
    }
};

// Visits members ascending.
#define DCLUSTER_FOR_SET(v, set) \
    for (int v = (set).first(); v >= 0; v = (set).next(v))

}  // namespace dcluster
