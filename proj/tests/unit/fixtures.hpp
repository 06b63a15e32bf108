#pragma once

#include <sstream>
#include <string>

#include "fastppr/graph.hpp"

namespace fastppr::fixtures {

inline Graph parse(const std::string& text, bool undirected = false) {
  std::istringstream in(text);
  return load_edge_list(in, undirected).graph;
}

inline Graph two_cycle() { return Graph::from_edges(2, {{0, 1}, {1, 0}}); }
inline Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Graph self_loop() { return Graph::from_edges(1, {{0, 0}}); }

// Center 0; leaves 1..3 each get a self-loop from dangling closure.
inline Graph star_out() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}); }
// Leaves 1..3 point at center 0, which is closed with a self-loop.
inline Graph star_in() { return Graph::from_edges(4, {{1, 0}, {2, 0}, {3, 0}}); }

// pi_s(t) on the two-cycle: 1/(2-alpha) on the diagonal, (1-alpha)/(2-alpha) off it.
inline double two_cycle_ppr(NodeId s, NodeId t, double alpha = 0.2) {
  return (s == t ? 1.0 : 1.0 - alpha) / (2.0 - alpha);
}

}  // namespace fastppr::fixtures
