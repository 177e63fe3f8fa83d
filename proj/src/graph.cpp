#include "dcluster/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace dcluster {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
    adj_.assign(n, VertexSet(n));
    for (auto& [u, v] : edge_list) {
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw ParseError("edge endpoint out of range");
        if (u == v) throw ParseError("self-loop");
        if (adj_[u].contains(v)) throw ParseError("duplicate edge");
        adj_[u].add(v);
        adj_[v].add(u);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edges_ = std::move(edge_list);
}

std::pair<Graph, std::vector<int>> Graph::induced(const VertexSet& keep) const {
    std::vector<int> back = keep.to_vector();
    std::vector<int> fwd(n_, -1);
    for (size_t i = 0; i < back.size(); ++i) fwd[back[i]] = int(i);
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges_)
        if (fwd[u] >= 0 && fwd[v] >= 0) es.emplace_back(fwd[u], fwd[v]);
    return {Graph(int(back.size()), std::move(es)), std::move(back)};
}

bool Graph::connected_ignoring(const VertexSet& removed) const {
    VertexSet alive = all_vertices() - removed;
    int start = alive.first();
    if (start < 0) return true;
    return component_of(*this, start, removed) == alive;
}

namespace {

int parse_vertex_token(const std::string& tok, int n, int line_no) {
    size_t pos = 0;
    int id;
    try {
        id = std::stoi(tok, &pos);
    } catch (...) {
        throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" + tok + "'");
    if (id < 1 || id > n)
        throw ParseError("line " + std::to_string(line_no) + ": vertex id " + tok +
                         " out of range 1.." + std::to_string(n));
    return id - 1;
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<VertexSet> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "p") {
            if (n >= 0) throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw ParseError("line " + std::to_string(line_no) + ": malformed header");
            seen.assign(n, VertexSet(n));
        } else if (head == "e") {
            if (n < 0) throw ParseError("line " + std::to_string(line_no) + ": edge before header");
            std::string a, b;
            if (!(ls >> a >> b))
                throw ParseError("line " + std::to_string(line_no) + ": malformed edge line");
            int u = parse_vertex_token(a, n, line_no);
            int v = parse_vertex_token(b, n, line_no);
            if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
            if (seen[u].contains(v))
                throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
            seen[u].add(v);
            seen[v].add(u);
            edges.emplace_back(u, v);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" + head + "'");
        }
    }
    if (n < 0) throw ParseError("missing header line 'p <n> <m>'");
    if (int(edges.size()) != m)
        throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Graph(n, std::move(edges));
}

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

VertexSet component_of(const Graph& g, int start, const VertexSet& removed) {
    VertexSet comp(g.vertex_count());
    if (removed.contains(start)) return comp;
    std::vector<int> stack{start};
    comp.add(start);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        VertexSet fresh = g.neighbors(v) - removed;
        fresh -= comp;
        DCLUSTER_FOR_SET(w, fresh) {
            comp.add(w);
            stack.push_back(w);
        }
    }
    return comp;
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& removed) {
    std::vector<VertexSet> out;
    VertexSet todo = g.all_vertices() - removed;
    for (int v = todo.first(); v >= 0; v = todo.first()) {
        VertexSet comp = component_of(g, v, removed);
        todo -= comp;
        out.push_back(std::move(comp));
    }
    return out;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& s) {
    VertexSet out = s;
    DCLUSTER_FOR_SET(v, s) out |= g.neighbors(v);
    return out;
}

Graph double_subdivide(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    int next = n;
    for (auto [u, v] : g.edges()) {
        // two disjoint paths of length 2 replacing {u,v}
        for (int rep = 0; rep < 2; ++rep) {
            int mid = next++;
            edges.emplace_back(u, mid);
            edges.emplace_back(mid, v);
        }
    }
    return Graph(next, std::move(edges));
}

GraphStats graph_stats(const Graph& g) {
    GraphStats st;
    int n = g.vertex_count();
    for (int v = 0; v < n; ++v) st.max_degree = std::max(st.max_degree, g.degree(v));
    // degeneracy by repeated minimum-degree peeling
    VertexSet removed(n);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    for (int round = 0; round < n; ++round) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!removed.contains(v) && (best < 0 || deg[v] < deg[best])) best = v;
        if (best < 0) break;
        st.degeneracy = std::max(st.degeneracy, deg[best]);
        removed.add(best);
        DCLUSTER_FOR_SET(w, g.neighbors(best)) if (!removed.contains(w))--deg[w];
    }
    return st;
}

Annotations parse_annotations(std::istream& in, int n) {
    Annotations ann{VertexSet(n), VertexSet::full(n), VertexSet::full(n)};
    bool saw_r = false, saw_b = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        VertexSet* target = nullptr;
        if (head == "F") target = &ann.forbidden;
        else if (head == "R") {
            if (!saw_r) { ann.red = VertexSet(n); saw_r = true; }
            target = &ann.red;
        } else if (head == "B") {
            if (!saw_b) { ann.blue = VertexSet(n); saw_b = true; }
            target = &ann.blue;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown annotation '" + head + "'");
        }
        std::string tok;
        while (ls >> tok) target->add(parse_vertex_token(tok, n, line_no));
    }
    return ann;
}

}  // namespace dcluster
