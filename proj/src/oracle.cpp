#include "fastppr/oracle.hpp"

#include <cmath>
#include <string>

#include "fastppr/frontier.hpp"

namespace fastppr {

namespace {

void check_args(const Graph& g, NodeId node, double alpha, double tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (node != kNoNode && !g.contains(node)) throw std::invalid_argument("node out of range");
}

/// Iterates x <- base + (1 - alpha) M x until the change in `norm` drops
/// below alpha * tol, which bounds the distance to the fixed point by tol.
template <typename Matrix, typename Norm>
Eigen::VectorXd fixed_point(const Matrix& m, const Eigen::VectorXd& base, double alpha, double tol,
                            Norm norm) {
  Eigen::VectorXd x = base;
  Eigen::VectorXd next(x.size());
  for (;;) {
    next.noalias() = (1.0 - alpha) * (m * x);
    next += base;
    const double change = norm(next - x);
    x.swap(next);
    if (change < alpha * tol) return x;
  }
}

}  // namespace

TruncationError::TruncationError(double achievable)
    : std::runtime_error("l_cap too small: achievable max-norm bound is " +
                         std::to_string(achievable)),
      achievable_(achievable) {}

PprVector power_iteration_ppr(const Graph& g, NodeId s, double alpha, double tol) {
  check_args(g, s, alpha, tol);
  // W^T is column-stochastic, a contraction in the L1 norm.
  const Eigen::SparseMatrix<double> wt = transition_matrix(g).transpose();
  Eigen::VectorXd base = Eigen::VectorXd::Zero(g.node_count());
  base[s] = alpha;
  PprVector out{s, PprDirection::kForward, {}, tol};
  out.values = fixed_point(wt, base, alpha, tol,
                           [](const Eigen::VectorXd& d) { return d.lpNorm<1>(); });
  return out;
}

PprVector power_iteration_inverse_ppr(const Graph& g, NodeId t, double alpha, double tol) {
  check_args(g, t, alpha, tol);
  // W is row-stochastic, a contraction in the max norm.
  const auto w = transition_matrix(g);
  Eigen::VectorXd base = Eigen::VectorXd::Zero(g.node_count());
  base[t] = alpha;
  PprVector out{t, PprDirection::kInverse, {}, tol};
  out.values = fixed_point(w, base, alpha, tol,
                           [](const Eigen::VectorXd& d) { return d.lpNorm<Eigen::Infinity>(); });
  return out;
}

PprVector exact_inverse_ppr(const Graph& g, NodeId t, double alpha, double tol) {
  check_args(g, t, alpha, tol);
  const ReversePushResult r = reverse_push(g, t, alpha, tol);
  PprVector out{t, PprDirection::kInverse, {}, tol};
  out.values = Eigen::Map<const Eigen::VectorXd>(r.estimates.data(),
                                                 static_cast<Eigen::Index>(r.estimates.size()));
  return out;
}

PprVector global_pagerank(const Graph& g, double alpha, double tol) {
  check_args(g, kNoNode, alpha, tol);
  const Eigen::SparseMatrix<double> wt = transition_matrix(g).transpose();
  const Eigen::VectorXd base =
      Eigen::VectorXd::Constant(g.node_count(), alpha / static_cast<double>(g.node_count()));
  PprVector out{kNoNode, PprDirection::kGlobal, {}, tol};
  out.values = fixed_point(wt, base, alpha, tol,
                           [](const Eigen::VectorXd& d) { return d.lpNorm<1>(); });
  return out;
}

PprVector brute_force_walk_enum(const Graph& g, NodeId s, double alpha, std::uint32_t l_cap,
                                std::optional<double> tol) {
  check_args(g, s, alpha, tol.value_or(1.0));
  const double tail = std::pow(1.0 - alpha, static_cast<double>(l_cap) + 1.0);
  if (tol && !(tail < *tol)) throw TruncationError(tail);

  const NodeId n = g.node_count();
  std::vector<double> step(n, 0.0), next(n, 0.0);
  step[s] = 1.0;
  PprVector out{s, PprDirection::kForward, Eigen::VectorXd::Zero(n), tail};
  double weight = alpha;
  for (std::uint32_t i = 0;; ++i) {
    for (NodeId u = 0; u < n; ++u) out.values[u] += weight * step[u];
    if (i == l_cap) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId u = 0; u < n; ++u) {
      if (step[u] == 0.0) continue;
      const double share = step[u] / g.out_degree(u);
      for (NodeId v : g.out_neighbors(u)) next[v] += share;
    }
    step.swap(next);
    weight *= 1.0 - alpha;
  }
  return out;
}

}  // namespace fastppr
