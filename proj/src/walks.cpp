#include "fastppr/walks.hpp"

#include <algorithm>

namespace fastppr {

NodeMask::NodeMask(NodeId node_count, std::span<const NodeId> members)
    : bits_(node_count, 0) {
  for (NodeId u : members) bits_[u] = 1;
}

TargetAvoidingScorer::TargetAvoidingScorer(const Graph& g, const NodeMask& targets,
                                           std::span<const double> target_values)
    : graph_(g),
      targets_(targets),
      values_(target_values),
      pass_(g.node_count(), 0.0),
      score_(g.node_count(), 0.0),
      known_(g.node_count(), 0) {
  if (targets.size() != g.node_count() || target_values.size() != g.node_count()) {
    throw std::invalid_argument("target mask/values must cover every node");
  }
}

void TargetAvoidingScorer::fill(NodeId u) {
  const auto nbrs = graph_.out_neighbors(u);
  std::size_t outside = 0;
  double inside_sum = 0.0;
  for (NodeId z : nbrs) {
    if (targets_.contains(z)) {
      inside_sum += values_[z];
    } else {
      ++outside;
    }
  }
  const auto d = static_cast<double>(nbrs.size());
  pass_[u] = static_cast<double>(outside) / d;
  score_[u] = inside_sum / d;
  known_[u] = 1;
}

double TargetAvoidingScorer::pass_probability(NodeId u) {
  if (!known_[u]) fill(u);
  return pass_[u];
}

double TargetAvoidingScorer::score(NodeId u) {
  if (!known_[u]) fill(u);
  return score_[u];
}

ScoredWalk TargetAvoidingScorer::walk(NodeId s, std::uint32_t length,
                                      std::uint32_t max_length, double min_pass,
                                      RngStream& rng) {
  ScoredWalk out;
  const std::uint32_t stop = std::min(length, max_length);
  double weight = 1.0;
  NodeId u = s;
  for (std::uint32_t i = 0; i < stop; ++i) {
    const double pass = pass_probability(u);
    out.score += weight * score(u);
    weight *= pass;
    if (weight == 0.0 || pass < min_pass) break;

    const auto nbrs = graph_.out_neighbors(u);
    NodeId next;
    std::uint64_t tries = 0;
    do {
      if (++tries > kRejectionCap) {
        throw RejectionLimitError("target-avoiding step exceeded rejection cap");
      }
      next = nbrs.size() == 1 ? nbrs[0] : nbrs[rng.below(nbrs.size())];
    } while (targets_.contains(next));
    out.rejections += tries - 1;
    u = next;
    out.steps_taken = i + 1;
  }
  return out;
}

}  // namespace fastppr
