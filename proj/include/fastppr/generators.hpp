#pragma once

#include <cstdint>

#include "fastppr/graph.hpp"

namespace fastppr {

/// Directed configuration model with independent power-law in- and
/// out-degree sequences (tail exponent `exponent`, minimum degree 1) scaled
/// to roughly `average_degree` edges per node before deduplication.
Graph power_law_digraph(NodeId n, double average_degree, double exponent, std::uint64_t seed);

/// `edges` uniformly random ordered pairs (duplicates collapse).
Graph random_digraph(NodeId n, std::uint64_t edges, std::uint64_t seed);

}  // namespace fastppr
