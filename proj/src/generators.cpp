#include "fastppr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fastppr/rng.hpp"

namespace fastppr {

namespace {

std::vector<std::uint32_t> power_law_sequence(NodeId n, double average_degree, double exponent,
                                              RngStream& rng) {
  std::vector<double> weight(n);
  const double shape = exponent - 1.0;
  for (auto& w : weight) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    w = std::min(std::pow(u, -1.0 / shape), static_cast<double>(n));
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  const double scale = average_degree * n / total;
  std::vector<std::uint32_t> degree(n);
  for (NodeId i = 0; i < n; ++i) {
    const double x = weight[i] * scale;
    auto d = static_cast<std::uint32_t>(x);
    if (rng.uniform() < x - d) ++d;  // randomized rounding keeps the mean
    degree[i] = std::clamp<std::uint32_t>(d, 1, n);
  }
  return degree;
}

}  // namespace

Graph power_law_digraph(NodeId n, double average_degree, double exponent, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("graph needs at least one node");
  if (!(exponent > 2.0)) throw std::invalid_argument("exponent must exceed 2");
  if (!(average_degree >= 1.0)) throw std::invalid_argument("average degree must be >= 1");
  RngStream rng(seed, 0);
  auto out_deg = power_law_sequence(n, average_degree, exponent, rng);
  auto in_deg = power_law_sequence(n, average_degree, exponent, rng);

  std::vector<NodeId> out_stubs, in_stubs;
  for (NodeId u = 0; u < n; ++u) out_stubs.insert(out_stubs.end(), out_deg[u], u);
  for (NodeId u = 0; u < n; ++u) in_stubs.insert(in_stubs.end(), in_deg[u], u);
  // Balance stub counts by topping up the shorter side with random nodes.
  auto& shorter = out_stubs.size() < in_stubs.size() ? out_stubs : in_stubs;
  const std::size_t target = std::max(out_stubs.size(), in_stubs.size());
  while (shorter.size() < target) shorter.push_back(static_cast<NodeId>(rng.below(n)));
  std::shuffle(in_stubs.begin(), in_stubs.end(), rng);

  std::vector<std::pair<NodeId, NodeId>> edges(target);
  for (std::size_t i = 0; i < target; ++i) edges[i] = {out_stubs[i], in_stubs[i]};
  return Graph::from_edges(n, std::move(edges));
}

Graph random_digraph(NodeId n, std::uint64_t edges, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("graph needs at least one node");
  RngStream rng(seed, 0);
  std::vector<std::pair<NodeId, NodeId>> list(edges);
  for (auto& e : list) {
    e = {static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n))};
  }
  return Graph::from_edges(n, std::move(list));
}

}  // namespace fastppr
