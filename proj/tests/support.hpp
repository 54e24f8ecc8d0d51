#pragma once

#include "walklll/graph.hpp"
#include "walklll/walks.hpp"

#include <random>
#include <string>
#include <vector>

namespace walklll::testkit {

/// One representative per isomorphism class of connected graphs on n
/// vertices (n <= 6): 1, 1, 2, 6, 21, 112 graphs.
const std::vector<OrderedGraph> &connected_graphs(int n);
/// All of the above for n = 1..max_n.
std::vector<OrderedGraph> connected_graphs_upto(int max_n);

/// Erdos-Renyi graph G(n, q).
OrderedGraph random_graph(std::mt19937_64 &rng, int n, double q);
/// Random connected graph: a random spanning tree plus G(n, q) edges.
OrderedGraph random_connected_graph(std::mt19937_64 &rng, int n, double q);

std::vector<double> random_activities(std::mt19937_64 &rng, int n, double lo, double hi);

/// Filter family presets by name: none, edges, neighborhoods, full, random.
FilterFamily preset_filters(const OrderedGraph &g, const std::string &name, std::mt19937_64 &rng);

/// Uniform random walk with `steps` steps (stays put on isolated vertices).
std::vector<Vertex> random_walk(std::mt19937_64 &rng, const OrderedGraph &g, int steps);

/// Scale s such that s * dir is on the boundary of the Shearer region,
/// within tol (dir nonzero, entries in [0, 1]). Returns the member end.
double critical_scale(const OrderedGraph &g, const std::vector<double> &dir, double tol = 1e-10);

std::string temp_path(const std::string &name);

} // namespace walklll::testkit
