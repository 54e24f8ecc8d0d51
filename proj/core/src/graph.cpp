#include "walklll/graph.hpp"

#include "walklll/hash.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace walklll {

OrderedGraph::OrderedGraph(int n) {
    if (n < 0)
        throw GraphError("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n));
}

OrderedGraph OrderedGraph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
    OrderedGraph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        if (u == v)
            throw GraphError("self-loop at vertex " + std::to_string(u));
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto &list : g.adjacency_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw GraphError("duplicate edge");
    }
    g.edge_count_ = edges.size();
    return g;
}

const std::vector<Vertex> &OrderedGraph::neighbors(Vertex v) const {
    if (v < 0 || v >= size())
        throw GraphError("vertex " + std::to_string(v) + " out of range");
    return adjacency_[v];
}

bool OrderedGraph::adjacent(Vertex u, Vertex v) const {
    const auto &list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> OrderedGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

SubsetMask OrderedGraph::neighbor_mask(Vertex v) const {
    if (size() > 64)
        throw GraphError("bitmask view needs at most 64 vertices");
    SubsetMask m = 0;
    for (Vertex u : neighbors(v))
        m |= SubsetMask{1} << u;
    return m;
}

InducedSubgraph induced_subgraph(const OrderedGraph &g, const VertexSet &s) {
    InducedSubgraph out;
    out.to_parent = normalize_vertex_set(s);
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t k = 0; k < out.to_parent.size(); ++k) {
        Vertex v = out.to_parent[k];
        if (v < 0 || v >= g.size())
            throw GraphError("vertex " + std::to_string(v) + " out of range");
        local[v] = static_cast<int>(k);
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t k = 0; k < out.to_parent.size(); ++k)
        for (Vertex w : g.neighbors(out.to_parent[k]))
            if (local[w] > static_cast<int>(k))
                edges.emplace_back(static_cast<int>(k), local[w]);
    out.graph = OrderedGraph::from_edges(static_cast<int>(out.to_parent.size()), edges);
    return out;
}

VertexSet neighbors(const OrderedGraph &g, Vertex i) { return g.neighbors(i); }

VertexSet normalize_vertex_set(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

SubsetMask to_mask(const VertexSet &s) {
    SubsetMask m = 0;
    for (Vertex v : s) {
        if (v < 0 || v >= 64)
            throw GraphError("vertex " + std::to_string(v) + " does not fit in a 64-bit mask");
        m |= SubsetMask{1} << v;
    }
    return m;
}

VertexSet from_mask(SubsetMask mask) {
    VertexSet out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

OrderedGraph complete_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return OrderedGraph::from_edges(n, e);
}

OrderedGraph path_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u + 1 < n; ++u)
        e.emplace_back(u, u + 1);
    return OrderedGraph::from_edges(n, e);
}

OrderedGraph cycle_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int u = 0; u + 1 < n; ++u)
        e.emplace_back(u, u + 1);
    if (n >= 3)
        e.emplace_back(0, n - 1);
    return OrderedGraph::from_edges(n, e);
}

OrderedGraph petersen_graph() {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    for (auto &[u, v] : e)
        if (u > v)
            std::swap(u, v);
    return OrderedGraph::from_edges(10, e);
}

OrderedGraph torus_grid(int w, int h) {
    if (w < 3 || h < 3)
        throw GraphError("torus needs both sides >= 3");
    std::vector<std::pair<Vertex, Vertex>> e;
    auto id = [w](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            e.emplace_back(id(x, y), id((x + 1) % w, y));
            e.emplace_back(id(x, y), id(x, (y + 1) % h));
        }
    for (auto &[u, v] : e)
        if (u > v)
            std::swap(u, v);
    return OrderedGraph::from_edges(w * h, e);
}

OrderedGraph read_graph(std::istream &in) {
    std::string line;
    int n = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        long long a, b;
        if (n < 0) {
            if (!(ls >> a))
                continue;
            if (a < 0)
                throw GraphError("line " + std::to_string(lineno) + ": negative vertex count");
            n = static_cast<int>(a);
            continue;
        }
        if (!(ls >> a))
            continue;
        if (!(ls >> b))
            throw GraphError("line " + std::to_string(lineno) + ": expected two vertex labels");
        if (a < 1 || b < 1 || a > n || b > n)
            throw GraphError("line " + std::to_string(lineno) + ": label out of range 1.." + std::to_string(n));
        std::string rest;
        if (ls >> rest)
            throw GraphError("line " + std::to_string(lineno) + ": trailing tokens");
        edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (n < 0)
        throw GraphError("missing vertex count");
    return OrderedGraph::from_edges(n, edges);
}

OrderedGraph read_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open graph file " + path);
    return read_graph(in);
}

void write_graph(std::ostream &out, const OrderedGraph &g) {
    out << g.size() << '\n';
    for (auto [u, v] : g.edges())
        out << (u + 1) << ' ' << (v + 1) << '\n';
}

std::vector<VertexSet> read_vertex_sets(std::istream &in, int n) {
    std::vector<VertexSet> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        VertexSet s;
        long long a;
        while (ls >> a) {
            if (a < 1 || a > n)
                throw GraphError("line " + std::to_string(lineno) + ": label out of range 1.." + std::to_string(n));
            s.push_back(static_cast<int>(a - 1));
        }
        if (!ls.eof())
            throw GraphError("line " + std::to_string(lineno) + ": not a label");
        out.push_back(normalize_vertex_set(std::move(s)));
    }
    return out;
}

std::vector<VertexSet> read_vertex_sets_file(const std::string &path, int n) {
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open vertex-set file " + path);
    return read_vertex_sets(in, n);
}

std::uint64_t graph_hash(const OrderedGraph &g) {
    Fnv1a h;
    h.update("graph").update_u64(static_cast<std::uint64_t>(g.size()));
    for (auto [u, v] : g.edges())
        h.update_u64(static_cast<std::uint64_t>(u)).update_u64(static_cast<std::uint64_t>(v));
    return h.value();
}

} // namespace walklll
