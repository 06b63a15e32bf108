#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "fastppr/graph.hpp"

namespace fastppr {

struct SparseEntry {
  NodeId node;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted-by-node sparse vector.
using SparseVector = std::vector<SparseEntry>;

/// Value at `node`, or 0 when absent.
double sparse_lookup(const SparseVector& v, NodeId node) noexcept;

/// Output of a reverse push around one target.
///
/// target_set holds t plus every node whose estimate exceeds eps_r; the
/// frontier is every in-neighbor of the target set that is not itself in it.
/// Estimates under-approximate the true inverse-PPR by less than eps_inv.
struct FrontierResult {
  NodeId target = kNoNode;
  double alpha = 0.0;
  double beta = 0.0;
  double eps_r = 0.0;
  double eps_inv = 0.0;
  std::vector<NodeId> target_set;    // sorted
  std::vector<NodeId> frontier_set;  // sorted
  SparseVector estimates;            // every node that received mass
  SparseVector residuals;            // nonzero residuals at termination
  std::uint64_t push_count = 0;
  std::chrono::nanoseconds reverse_time{0};

  double estimate(NodeId w) const noexcept { return sparse_lookup(estimates, w); }
  bool in_target_set(NodeId w) const noexcept;
  bool in_frontier(NodeId w) const noexcept;
  double max_residual() const noexcept;
};

inline constexpr std::uint64_t kUnlimitedPushes = std::numeric_limits<std::uint64_t>::max();

/// The part of a FrontierResult the forward phase needs: estimates for the
/// target set and the frontier. This is also the persisted form.
struct FrontierRecord {
  NodeId target = kNoNode;
  double eps_r = 0.0;
  SparseVector target_set;
  SparseVector frontier_set;

  friend bool operator==(const FrontierRecord&, const FrontierRecord&) = default;
};

FrontierRecord make_record(const FrontierResult& r);

/// Fixed-threshold reverse push: pushes from any node whose residual exceeds
/// alpha * beta * eps_r, in FIFO order. `max_pushes` truncates the loop for
/// diagnostics; the error bound only holds when it is left unlimited.
FrontierResult frontier_push(const Graph& g, NodeId t, double eps_r, double beta,
                             double alpha, std::uint64_t max_pushes = kUnlimitedPushes);

struct ReversePushResult {
  std::vector<double> estimates;  // dense, length n
  std::uint64_t push_count = 0;
};

/// Plain reverse push to additive error `additive_error`, without target or
/// frontier bookkeeping.
ReversePushResult reverse_push(const Graph& g, NodeId t, double alpha, double additive_error);

/// Time-balanced reverse push. Always pushes the largest residual and keeps
/// eps_r = max_residual / (alpha * beta); stops once the elapsed reverse time
/// reaches the predicted forward time walk_seconds * c * eps_r / delta, or
/// when no residual mass is left.
FrontierResult balanced_frontier(const Graph& g, NodeId t, double delta, double c,
                                 double beta, double alpha, double walk_seconds);

/// Mean wall time of one geometric walk, measured over 1000 walks from
/// uniform random starts. Cached per (graph instance, alpha).
double calibrated_walk_seconds(const Graph& g, double alpha);

/// Uncached measurement behind calibrated_walk_seconds.
double measure_walk_seconds(const Graph& g, double alpha, std::uint32_t walks,
                            std::uint64_t seed);

}  // namespace fastppr
