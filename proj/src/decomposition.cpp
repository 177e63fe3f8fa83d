#include "dcluster/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "dcluster/util.hpp"

namespace dcluster {

TreeDecomposition::TreeDecomposition(int universe, std::vector<Node> nodes)
    : universe_(universe), nodes_(std::move(nodes)) {
    children_.resize(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        int p = nodes_[i].parent;
        if (p < 0) {
            if (root_ >= 0) throw std::invalid_argument("decomposition has two roots");
            root_ = int(i);
        } else {
            children_[p].push_back(int(i));
        }
    }
    if (!nodes_.empty() && root_ < 0) throw std::invalid_argument("decomposition has no root");
}

VertexSet TreeDecomposition::adhesion(int x) const {
    if (nodes_[x].parent < 0) return VertexSet(universe_);
    return nodes_[x].bag & nodes_[nodes_[x].parent].bag;
}

VertexSet TreeDecomposition::margin(int x) const { return nodes_[x].bag - adhesion(x); }

VertexSet TreeDecomposition::cone(int x) const {
    VertexSet out = nodes_[x].bag;
    for (int c : children_[x]) out |= cone(c);
    return out;
}

VertexSet TreeDecomposition::component(int x) const { return cone(x) - adhesion(x); }

std::vector<int> TreeDecomposition::post_order() const {
    std::vector<int> out;
    std::function<void(int)> rec = [&](int x) {
        for (int c : children_[x]) rec(c);
        out.push_back(x);
    };
    if (root_ >= 0) rec(root_);
    return out;
}

namespace {

// Two-sided split of component weights: returns a component subset T with
// base + sum(T) > q and base + sum(rest) > q, when one exists.
std::optional<std::vector<int>> two_sided_split(const std::vector<int>& weights, int base, int q) {
    int total = 0;
    for (int w : weights) total += w;
    int need = q + 1 - base;  // each side needs at least this much component weight
    if (need < 0) need = 0;
    if (total < 2 * need) return std::nullopt;
    // reachable sums with predecessor tracking
    std::vector<std::vector<char>> take(weights.size());
    std::vector<char> reach(total + 1, 0);
    reach[0] = 1;
    for (size_t i = 0; i < weights.size(); ++i) {
        take[i].assign(total + 1, 0);
        for (int s = total; s >= weights[i]; --s) {
            if (reach[s - weights[i]] && !reach[s]) {
                reach[s] = 1;
                take[i][s] = 1;
            }
        }
    }
    for (int s = need; s <= total - need; ++s) {
        if (!reach[s]) continue;
        std::vector<int> chosen;
        int cur = s;
        for (int i = int(weights.size()) - 1; i >= 0 && cur > 0; --i) {
            if (take[i][cur]) {
                chosen.push_back(i);
                cur -= weights[i];
            }
        }
        std::reverse(chosen.begin(), chosen.end());
        return chosen;
    }
    return std::nullopt;
}

}  // namespace

UnbreakabilityReport is_unbreakable_set(const Graph& g, const VertexSet& x, int q, int k) {
    UnbreakabilityReport report;
    VertexSet all = g.all_vertices();
    for_each_subset_lex(all, k, [&](const VertexSet& sep) {
        int base = (sep & x).count();
        auto comps = connected_components(g, sep);
        std::vector<int> weights(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) weights[i] = (comps[i] & x).count();
        auto split = two_sided_split(weights, base, q);
        if (!split) return false;
        VertexSet a = sep, b = sep;
        size_t si = 0;
        for (size_t i = 0; i < comps.size(); ++i) {
            if (si < split->size() && (*split)[si] == int(i)) {
                a |= comps[i];
                ++si;
            } else {
                b |= comps[i];
            }
        }
        if ((a & x).count() <= q || (b & x).count() <= q) return false;
        report.holds = false;
        report.violating_separation = std::make_pair(a, b);
        return true;
    });
    return report;
}

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td, int q,
                                           int k) {
    DecompositionReport rep;
    auto fail = [&](const std::string& what, int node) {
        rep.ok = false;
        rep.issue = what;
        rep.node = node;
        return rep;
    };
    int n = g.vertex_count();
    if (td.universe() != n) return fail("universe mismatch", -1);
    if (td.node_count() == 0) return n == 0 ? rep : fail("vertex not covered", -1);

    // vertex coverage and connected occurrence sets
    for (int v = 0; v < n; ++v) {
        std::vector<int> holders;
        for (int xnode = 0; xnode < td.node_count(); ++xnode)
            if (td.bag(xnode).contains(v)) holders.push_back(xnode);
        if (holders.empty()) return fail("vertex " + std::to_string(v) + " not covered", -1);
        // the occurrence set is a connected subtree iff exactly one holder
        // lacks a holding parent
        int roots = 0;
        for (int h : holders) {
            int p = td.parent(h);
            if (p < 0 || !td.bag(p).contains(v)) ++roots;
        }
        if (roots != 1)
            return fail("vertex " + std::to_string(v) + " occurrence set disconnected", -1);
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int xnode = 0; xnode < td.node_count() && !covered; ++xnode)
            covered = td.bag(xnode).contains(u) && td.bag(xnode).contains(v);
        if (!covered)
            return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} not covered",
                        -1);
    }
    for (int xnode = 0; xnode < td.node_count(); ++xnode) {
        if (td.adhesion(xnode).count() > q)
            return fail("adhesion larger than q", xnode);
    }
    for (int xnode = 0; xnode < td.node_count(); ++xnode) {
        auto [sub, back] = g.induced(td.cone(xnode));
        VertexSet bag_local(sub.vertex_count());
        for (size_t i = 0; i < back.size(); ++i)
            if (td.bag(xnode).contains(back[i])) bag_local.add(int(i));
        if (!is_unbreakable_set(sub, bag_local, q, k).holds)
            return fail("bag not (q,k)-unbreakable in its cone", xnode);
    }
    return rep;
}

bool is_regular(const Graph& g, const TreeDecomposition& td) {
    for (int x = 0; x < td.node_count(); ++x) {
        if (x == td.root()) continue;
        if (td.margin(x).empty()) return false;
        VertexSet comp = td.component(x);
        if (comp.empty()) return false;
        auto pieces = connected_components(g, g.all_vertices() - comp);
        if (pieces.size() != 1) return false;
        DCLUSTER_FOR_SET(v, td.adhesion(x)) {
            if (!g.neighbors(v).intersects(comp)) return false;
        }
    }
    return true;
}

namespace {

struct MutableTree {
    struct Node {
        int parent = -1;
        VertexSet bag;
        bool alive = true;
    };
    int universe;
    std::vector<Node> nodes;

    explicit MutableTree(const TreeDecomposition& td) : universe(td.universe()) {
        nodes.resize(td.node_count());
        for (int i = 0; i < td.node_count(); ++i) {
            nodes[i].parent = td.parent(i);
            nodes[i].bag = td.bag(i);
        }
    }

    TreeDecomposition freeze() const {
        std::vector<int> remap(nodes.size(), -1);
        std::vector<TreeDecomposition::Node> out;
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (!nodes[i].alive) continue;
            remap[i] = int(out.size());
            out.push_back({nodes[i].parent, nodes[i].bag});
        }
        for (auto& node : out)
            if (node.parent >= 0) node.parent = remap[node.parent];
        return TreeDecomposition(universe, std::move(out));
    }

    std::vector<int> children(int x) const {
        std::vector<int> out;
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].alive && nodes[i].parent == x) out.push_back(int(i));
        return out;
    }

    VertexSet cone(int x) const {
        VertexSet out = nodes[x].bag;
        for (int c : children(x)) out |= cone(c);
        return out;
    }
    VertexSet adhesion(int x) const {
        if (nodes[x].parent < 0) return VertexSet(universe);
        return nodes[x].bag & nodes[nodes[x].parent].bag;
    }

    void strip_from_subtree(int x, int v) {
        if (nodes[x].bag.contains(v)) nodes[x].bag.remove(v);
        for (int c : children(x)) strip_from_subtree(c, v);
    }
};

}  // namespace

TreeDecomposition make_regular(const Graph& g, const TreeDecomposition& td) {
    MutableTree t(td);
    int root = td.root();
    // post-order over the mutable tree so children are regular before their
    // parent splits (the split assigns children by their then-connected
    // components)
    auto post_order = [&]() {
        std::vector<int> order;
        std::function<void(int)> rec = [&](int x) {
            for (int c : t.children(x)) rec(c);
            order.push_back(x);
        };
        rec(root);
        return order;
    };
    bool changed = true;
    int guard = 0;
    while (changed) {
        if (++guard > 10000) throw std::logic_error("regularization did not converge");
        changed = false;
        for (int x : post_order()) {
            if (!t.nodes[x].alive || x == root) continue;
            int parent = t.nodes[x].parent;
            VertexSet adh = t.adhesion(x);
            // empty margin: fold the node into its parent
            if ((t.nodes[x].bag - adh).empty()) {
                for (int c : t.children(x)) t.nodes[c].parent = parent;
                t.nodes[x].alive = false;
                changed = true;
                break;
            }
            // adhesion vertex with no neighbor below: shrink it out
            VertexSet comp = t.cone(x) - adh;
            bool shrunk = false;
            DCLUSTER_FOR_SET(v, adh) {
                if (!g.neighbors(v).intersects(comp)) {
                    t.strip_from_subtree(x, v);
                    changed = shrunk = true;
                    break;
                }
            }
            if (shrunk) break;
            // disconnected component(x): one copy per piece
            auto pieces = connected_components(g, g.all_vertices() - comp);
            if (pieces.size() > 1) {
                std::vector<int> kids = t.children(x);
                for (const VertexSet& piece : pieces) {
                    MutableTree::Node copy;
                    copy.parent = parent;
                    copy.bag = (t.nodes[x].bag & piece) | adh;
                    int id = int(t.nodes.size());
                    t.nodes.push_back(copy);
                    for (int c : kids) {
                        VertexSet child_comp = t.cone(c) - t.adhesion(c);
                        if (child_comp.intersects(piece)) t.nodes[c].parent = id;
                    }
                }
                t.nodes[x].alive = false;
                changed = true;
                break;
            }
        }
    }
    return t.freeze();
}

BuiltDecomposition build_decomposition(const Graph& g, int k) {
    int n = g.vertex_count();
    std::vector<TreeDecomposition::Node> nodes;

    // split(region U, adhesion A): emit a node with bag A cup C for the most
    // balanced useful separator C, recursing on the components left over
    std::function<int(const VertexSet&, const VertexSet&, int)> split =
        [&](const VertexSet& region, const VertexSet& adhesion, int parent) -> int {
        auto [sub, back] = g.induced(region);
        VertexSet pool = sub.all_vertices();
        std::optional<VertexSet> best;
        int best_max = -1;
        for_each_subset_lex(pool, k, [&](const VertexSet& sep) {
            auto comps = connected_components(sub, sep);
            if (comps.empty()) return false;
            VertexSet sep_orig(n), adh_plus(n);
            DCLUSTER_FOR_SET(v, sep) sep_orig.add(back[v]);
            adh_plus = adhesion | sep_orig;
            int max_piece = 0;
            bool useful = true;
            for (const VertexSet& comp : comps) {
                VertexSet comp_orig(n);
                DCLUSTER_FOR_SET(v, comp) comp_orig.add(back[v]);
                VertexSet child_region = comp_orig | (closed_neighborhood(g, comp_orig) & adh_plus);
                if (child_region.count() >= region.count()) {
                    useful = false;
                    break;
                }
                max_piece = std::max(max_piece, comp_orig.count());
            }
            if (useful && (best_max < 0 || max_piece < best_max)) {
                best_max = max_piece;
                best = sep_orig;
            }
            return false;
        });
        int id = int(nodes.size());
        nodes.push_back({});
        nodes[id].parent = parent;
        if (!best) {
            nodes[id].bag = region;
            return id;
        }
        nodes[id].bag = adhesion | *best;
        VertexSet rest = region - nodes[id].bag;
        for (const VertexSet& comp : connected_components(g, g.all_vertices() - rest)) {
            VertexSet child_adh = closed_neighborhood(g, comp) & nodes[id].bag;
            split(comp | child_adh, child_adh, id);
        }
        return id;
    };

    split(g.all_vertices(), VertexSet(n), -1);
    TreeDecomposition td = make_regular(g, TreeDecomposition(n, std::move(nodes)));
    for (int q = 0; q <= n; ++q) {
        if (validate_decomposition(g, td, q, k).ok) return {td, q};
    }
    throw std::logic_error("constructed decomposition failed validation");
}

TreeDecomposition parse_decomposition(std::istream& in, int vertex_count) {
    std::string line;
    int line_no = 0, declared = -1;
    std::vector<TreeDecomposition::Node> nodes;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "t") {
            if (!(ls >> declared) || declared < 0)
                throw ParseError("line " + std::to_string(line_no) + ": malformed t line");
            nodes.resize(declared);
        } else if (head == "n") {
            int id;
            std::string parent_tok;
            if (declared < 0 || !(ls >> id >> parent_tok) || id < 1 || id > declared)
                throw ParseError("line " + std::to_string(line_no) + ": malformed n line");
            TreeDecomposition::Node& node = nodes[id - 1];
            node.parent = parent_tok == "-" ? -1 : std::stoi(parent_tok) - 1;
            if (node.parent >= declared || node.parent < -1)
                throw ParseError("line " + std::to_string(line_no) + ": parent out of range");
            node.bag = VertexSet(vertex_count);
            int v;
            while (ls >> v) {
                if (v < 1 || v > vertex_count)
                    throw ParseError("line " + std::to_string(line_no) + ": bag vertex out of range");
                node.bag.add(v - 1);
            }
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown directive");
        }
    }
    if (declared < 0) throw ParseError("missing t line");
    return TreeDecomposition(vertex_count, std::move(nodes));
}

std::string serialize_decomposition(const TreeDecomposition& td) {
    std::ostringstream out;
    out << "t " << td.node_count() << "\n";
    for (int x = 0; x < td.node_count(); ++x) {
        out << "n " << x + 1 << " ";
        if (td.parent(x) < 0) out << "-";
        else out << td.parent(x) + 1;
        DCLUSTER_FOR_SET(v, td.bag(x)) out << " " << v + 1;
        out << "\n";
    }
    return out.str();
}

}  // namespace dcluster
