#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walklll {

/// Vertex labels are 0..n-1. The integer order of the labels is the total
/// order used by self-bounding walks.
using Vertex = int;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// Subset of a universe of at most 64 elements, bit i <=> element i.
using SubsetMask = std::uint64_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite simple graph with a fixed vertex order. Immutable once built.
class OrderedGraph {
public:
    OrderedGraph() = default;
    /// Edgeless graph on n vertices.
    explicit OrderedGraph(int n);

    /// Throws GraphError on self-loops, duplicate edges or labels outside [0,n).
    static OrderedGraph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);

    int size() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    /// Sorted neighbor list. Throws GraphError for an out-of-range vertex.
    const std::vector<Vertex> &neighbors(Vertex v) const;
    bool adjacent(Vertex u, Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    /// Edges (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Neighborhood as a bitmask; requires size() <= 64.
    SubsetMask neighbor_mask(Vertex v) const;

    bool operator==(const OrderedGraph &) const = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

struct InducedSubgraph {
    OrderedGraph graph;
    /// to_parent[k] is the label in the parent graph of vertex k.
    std::vector<Vertex> to_parent;
};

/// Subgraph induced by `s`, relabeled 0..|s|-1 preserving the vertex order.
InducedSubgraph induced_subgraph(const OrderedGraph &g, const VertexSet &s);

/// The neighborhood of i (never contains i).
VertexSet neighbors(const OrderedGraph &g, Vertex i);

VertexSet normalize_vertex_set(VertexSet s);
SubsetMask to_mask(const VertexSet &s);
VertexSet from_mask(SubsetMask mask);

// Small named graphs used across tests, benchmarks and the CLI.
OrderedGraph complete_graph(int n);
OrderedGraph path_graph(int n);
OrderedGraph cycle_graph(int n);
OrderedGraph petersen_graph();
/// w x h periodic grid (4-regular when w, h >= 3).
OrderedGraph torus_grid(int w, int h);

// Text format: first token n, then one "i j" edge per line, 1-based.
OrderedGraph read_graph(std::istream &in);
OrderedGraph read_graph_file(const std::string &path);
void write_graph(std::ostream &out, const OrderedGraph &g);

/// One set per line, 1-based labels; empty lines are empty sets.
std::vector<VertexSet> read_vertex_sets(std::istream &in, int n);
std::vector<VertexSet> read_vertex_sets_file(const std::string &path, int n);

/// Content hash of the graph (vertex count and sorted edge list).
std::uint64_t graph_hash(const OrderedGraph &g);

} // namespace walklll
