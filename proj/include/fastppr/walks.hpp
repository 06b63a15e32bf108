#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "fastppr/graph.hpp"
#include "fastppr/rng.hpp"

namespace fastppr {

/// Dense membership mask over the nodes of one graph.
class NodeMask {
 public:
  NodeMask() = default;
  explicit NodeMask(NodeId node_count) : bits_(node_count, 0) {}
  NodeMask(NodeId node_count, std::span<const NodeId> members);

  bool contains(NodeId u) const noexcept { return bits_[u] != 0; }
  void insert(NodeId u) noexcept { bits_[u] = 1; }
  std::size_t size() const noexcept { return bits_.size(); }

 private:
  std::vector<std::uint8_t> bits_;
};

struct WalkOutcome {
  NodeId hit = kNoNode;  ///< first stop-set node visited, or kNoNode
  std::uint32_t steps_taken = 0;
  std::uint32_t length = 0;

  bool hit_stop_set() const noexcept { return hit != kNoNode; }
};

/// Draws L with P[L = i] = alpha (1 - alpha)^i on {0, 1, 2, ...}.
inline std::uint32_t sample_geometric(double alpha, RngStream& rng) {
  return std::geometric_distribution<std::uint32_t>(alpha)(rng);
}

inline NodeId random_out_neighbor(const Graph& g, NodeId u, RngStream& rng) {
  const auto nbrs = g.out_neighbors(u);
  return nbrs.size() == 1 ? nbrs[0] : nbrs[rng.below(nbrs.size())];
}

/// Walks V_0 = s, ..., V_L and reports the first V_i accepted by `in_stop`.
/// Position 0 is checked, so a source inside the stop set hits immediately.
template <typename StopPredicate>
WalkOutcome walk_first_hit(const Graph& g, NodeId s, std::uint32_t length,
                           StopPredicate&& in_stop, RngStream& rng) {
  WalkOutcome out;
  out.length = length;
  NodeId u = s;
  for (std::uint32_t i = 0;; ++i) {
    if (in_stop(u)) {
      out.hit = u;
      out.steps_taken = i;
      return out;
    }
    if (i == length) break;
    u = random_out_neighbor(g, u, rng);
  }
  out.steps_taken = length;
  return out;
}

inline WalkOutcome walk_first_hit(const Graph& g, NodeId s, std::uint32_t length,
                                  const NodeMask& stop_set, RngStream& rng) {
  return walk_first_hit(g, s, length, [&](NodeId u) { return stop_set.contains(u); }, rng);
}

/// Last node of a walk of the given length.
inline NodeId walk_endpoint(const Graph& g, NodeId s, std::uint32_t length, RngStream& rng) {
  NodeId u = s;
  for (std::uint32_t i = 0; i < length; ++i) u = random_out_neighbor(g, u, rng);
  return u;
}

class RejectionLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScoredWalk {
  double score = 0.0;
  std::uint32_t steps_taken = 0;
  std::uint64_t rejections = 0;
};

/// Scores target-avoiding walks against a fixed target set.
///
/// For u outside the target set T, pass(u) is the fraction of u's
/// out-neighbors outside T and score(u) is the degree-normalized sum of the
/// target values of u's out-neighbors inside T. Both are computed on first
/// visit and memoized, so one scorer serves all walks of a query.
///
/// A walk of length L collects, for every position i < min(L, max_length),
/// the term prod_{j<i} pass(V_j) * score(V_i). Its expectation over L and the
/// walk equals pi_s(t) when target values are exact.
class TargetAvoidingScorer {
 public:
  static constexpr std::uint64_t kRejectionCap = 1'000'000;

  /// `target_values` is dense (length n); only entries of members of
  /// `targets` are read.
  TargetAvoidingScorer(const Graph& g, const NodeMask& targets,
                       std::span<const double> target_values);

  double pass_probability(NodeId u);
  double score(NodeId u);

  /// Runs one walk from s (s must lie outside the target set). The walk
  /// stops after min(length, max_length) steps, or right after collecting
  /// the term of a node whose pass probability is below `min_pass`.
  ScoredWalk walk(NodeId s, std::uint32_t length, std::uint32_t max_length,
                  double min_pass, RngStream& rng);

 private:
  void fill(NodeId u);

  const Graph& graph_;
  const NodeMask& targets_;
  std::span<const double> values_;
  std::vector<double> pass_;
  std::vector<double> score_;
  std::vector<std::uint8_t> known_;
};

}  // namespace fastppr
