#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fastppr/graph.hpp"

namespace fastppr {

enum class PprDirection { kForward, kInverse, kGlobal };

/// Dense ground-truth vector.
///
/// kForward holds pi_s(.) for source `node`; kInverse holds pi_.(t) for
/// target `node`; kGlobal is the uniform-teleport PageRank (node unused).
/// Every entry is within `tolerance` of the exact value.
struct PprVector {
  NodeId node = kNoNode;
  PprDirection direction = PprDirection::kForward;
  Eigen::VectorXd values;
  double tolerance = 0.0;
};

/// Row-stochastic random-walk matrix W = D^-1 A.
template <typename Scalar = double>
Eigen::SparseMatrix<Scalar, Eigen::RowMajor> transition_matrix(const Graph& g) {
  std::vector<Eigen::Triplet<Scalar>> entries;
  entries.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const Scalar w = Scalar(1) / Scalar(g.out_degree(u));
    for (NodeId v : g.out_neighbors(u)) entries.emplace_back(u, v, w);
  }
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> m(g.node_count(), g.node_count());
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

/// Forward PPR by power iteration on pi = alpha e_s + (1 - alpha) W^T pi.
PprVector power_iteration_ppr(const Graph& g, NodeId s, double alpha, double tol);

/// Inverse PPR by power iteration on x = alpha e_t + (1 - alpha) W x.
PprVector power_iteration_inverse_ppr(const Graph& g, NodeId t, double alpha, double tol);

/// Inverse PPR by reverse push run to residual threshold alpha * tol.
PprVector exact_inverse_ppr(const Graph& g, NodeId t, double alpha, double tol);

/// Global PageRank with uniform teleport 1/n.
PprVector global_pagerank(const Graph& g, double alpha, double tol);

class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(double achievable);
  double achievable_bound() const noexcept { return achievable_; }

 private:
  double achievable_;
};

/// Truncated walk-length expansion sum_{i<=l_cap} alpha (1-alpha)^i e_s W^i,
/// evaluated by propagating the exact step distribution over the CSR. Its
/// max-norm error is below (1-alpha)^(l_cap+1). With `tol` set, throws
/// TruncationError when that bound is not below tol.
PprVector brute_force_walk_enum(const Graph& g, NodeId s, double alpha, std::uint32_t l_cap,
                                std::optional<double> tol = std::nullopt);

}  // namespace fastppr
