#include "fastppr/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fastppr/parallel.hpp"
#include "fastppr/rng.hpp"
#include "fastppr/walks.hpp"

namespace fastppr {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kWalkBatch = 4096;

void check_nodes(const Graph& g, NodeId s, NodeId t) {
  if (!g.contains(s) || !g.contains(t)) throw std::invalid_argument("node id out of range");
}

void check_probability(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
}

/// Runs `walks` walks split into fixed batches; batch b draws from stream b.
/// `batch_fn(rng, count)` returns the batch's summed contribution.
template <typename BatchFn>
double batched_sum(std::uint64_t walks, std::uint64_t seed, unsigned threads,
                   BatchFn&& batch_fn) {
  const std::uint64_t batches = (walks + kWalkBatch - 1) / kWalkBatch;
  std::vector<double> partial(batches, 0.0);
  parallel_for(batches, threads, [&](std::size_t b) {
    RngStream rng(seed, b);
    const std::uint64_t count = std::min(kWalkBatch, walks - b * kWalkBatch);
    partial[b] = batch_fn(rng, count);
  });
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kFastPpr: return "fast_ppr";
    case Algorithm::kBalancedFastPpr: return "balanced_fast_ppr";
    case Algorithm::kTheoreticalFastPpr: return "theoretical_fast_ppr";
    case Algorithm::kMonteCarlo: return "monte_carlo";
    case Algorithm::kLocalUpdate: return "local_update";
    case Algorithm::kStoredFastPpr: return "stored_fast_ppr";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fast_ppr" || name == "fastppr") return Algorithm::kFastPpr;
  if (name == "balanced_fast_ppr" || name == "balanced") return Algorithm::kBalancedFastPpr;
  if (name == "theoretical_fast_ppr" || name == "theoretical") {
    return Algorithm::kTheoreticalFastPpr;
  }
  if (name == "monte_carlo" || name == "montecarlo" || name == "mc") return Algorithm::kMonteCarlo;
  if (name == "local_update" || name == "localupdate") return Algorithm::kLocalUpdate;
  if (name == "stored_fast_ppr" || name == "stored") return Algorithm::kStoredFastPpr;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void QueryParams::validate() const {
  check_probability(alpha, "alpha");
  check_probability(delta, "delta");
  if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must lie in (0,1/2)");
  if (!(c >= 1.0)) throw std::invalid_argument("c must be at least 1");
  if (!(c_mc >= 1.0)) throw std::invalid_argument("c_mc must be at least 1");
  if (eps_r && !(*eps_r > 0.0 && *eps_r <= 1.0)) {
    throw std::invalid_argument("eps_r must lie in (0,1]");
  }
}

double QueryParams::resolved_eps_r(const Graph& g) const {
  if (eps_r) return *eps_r;
  return std::min(1.0, std::sqrt(g.average_degree() * delta));
}

DerivedTheoreticalParams derive(const TheoreticalParams& tp, double delta, double eps_r,
                                double alpha) {
  check_probability(tp.c_rel, "relative error c");
  check_probability(tp.p_fail, "p_fail");
  check_probability(delta, "delta");
  check_probability(alpha, "alpha");
  if (!(eps_r > 0.0 && eps_r <= 1.0)) throw std::invalid_argument("eps_r must lie in (0,1]");
  DerivedTheoreticalParams d;
  d.eps_f = delta / eps_r;
  d.beta = tp.c_rel / (3.0 + tp.c_rel);
  d.p_min = tp.c_rel / (3.0 * (1.0 + d.beta));
  const double l = std::log(tp.c_rel * delta / 3.0) / std::log(1.0 - alpha);
  d.l_max = static_cast<std::uint32_t>(std::max(1.0, std::ceil(l)));
  d.n_f = static_cast<std::uint64_t>(std::ceil(45.0 * d.l_max / (tp.c_rel * tp.c_rel * d.eps_f) *
                                               std::log(2.0 / tp.p_fail)));
  return d;
}

std::uint64_t walk_count(double c, double eps_r, double delta) {
  return static_cast<std::uint64_t>(std::ceil(c * eps_r / delta));
}

Estimate forward_from_record(const Graph& g, NodeId s, const FrontierRecord& rec,
                             const QueryParams& p) {
  Estimate e;
  e.eps_r = rec.eps_r;
  auto in_t = std::lower_bound(rec.target_set.begin(), rec.target_set.end(), s,
                               [](const SparseEntry& x, NodeId n) { return x.node < n; });
  if (in_t != rec.target_set.end() && in_t->node == s) {
    e.value = in_t->value;
    e.shortcut = true;
    return e;
  }

  const auto started = Clock::now();
  const std::uint64_t k = walk_count(p.c, rec.eps_r, p.delta);
  if (k > 0 && !rec.frontier_set.empty()) {
    std::vector<double> frontier_value(g.node_count(), -1.0);
    for (const auto& [u, v] : rec.frontier_set) frontier_value[u] = v;
    const auto in_frontier = [&](NodeId u) { return frontier_value[u] >= 0.0; };
    const double total = batched_sum(k, p.seed, p.threads, [&](RngStream& rng, std::uint64_t n) {
      double sum = 0.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto out = walk_first_hit(g, s, sample_geometric(p.alpha, rng), in_frontier, rng);
        if (out.hit_stop_set()) sum += frontier_value[out.hit];
      }
      return sum;
    });
    e.value = total / static_cast<double>(k);
  }
  // With an empty frontier no walk can reach t, so the walks are skipped.
  e.walks_used = rec.frontier_set.empty() ? 0 : k;
  e.forward_time = Clock::now() - started;
  return e;
}

Estimate fast_ppr(const Graph& g, NodeId s, NodeId t, const QueryParams& p) {
  p.validate();
  check_nodes(g, s, t);
  const FrontierResult fr = frontier_push(g, t, p.resolved_eps_r(g), p.beta, p.alpha);
  Estimate e = forward_from_record(g, s, make_record(fr), p);
  e.algorithm = Algorithm::kFastPpr;
  e.frontier_pushes = fr.push_count;
  e.reverse_time = fr.reverse_time;
  return e;
}

Estimate balanced_fast_ppr(const Graph& g, NodeId s, NodeId t, const QueryParams& p,
                           std::optional<double> walk_seconds) {
  p.validate();
  check_nodes(g, s, t);
  const double t_walk = walk_seconds ? *walk_seconds : calibrated_walk_seconds(g, p.alpha);
  const FrontierResult fr = balanced_frontier(g, t, p.delta, p.c, p.beta, p.alpha, t_walk);
  Estimate e = forward_from_record(g, s, make_record(fr), p);
  e.algorithm = Algorithm::kBalancedFastPpr;
  e.frontier_pushes = fr.push_count;
  e.reverse_time = fr.reverse_time;
  return e;
}

Estimate theoretical_fast_ppr(const Graph& g, NodeId s, NodeId t, double delta,
                              const TheoreticalParams& tp, double alpha, double eps_r,
                              std::uint64_t seed) {
  check_nodes(g, s, t);
  const DerivedTheoreticalParams d = derive(tp, delta, eps_r, alpha);
  const FrontierResult fr = frontier_push(g, t, eps_r, d.beta, alpha);

  Estimate e;
  e.algorithm = Algorithm::kTheoreticalFastPpr;
  e.frontier_pushes = fr.push_count;
  e.reverse_time = fr.reverse_time;
  e.eps_r = eps_r;
  if (fr.in_target_set(s)) {
    e.value = fr.estimate(s);
    e.shortcut = true;
    return e;
  }

  const auto started = Clock::now();
  const NodeMask targets(g.node_count(), fr.target_set);
  std::vector<double> values(g.node_count(), 0.0);
  for (NodeId u : fr.target_set) values[u] = fr.estimate(u);
  TargetAvoidingScorer scorer(g, targets, values);
  // The scorer memoizes lazily, so walks stay on one thread.
  const double total = batched_sum(d.n_f, seed, 1, [&](RngStream& rng, std::uint64_t n) {
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      sum += scorer.walk(s, sample_geometric(alpha, rng), d.l_max, d.p_min, rng).score;
    }
    return sum;
  });
  e.value = total / static_cast<double>(d.n_f);
  e.walks_used = d.n_f;
  e.forward_time = Clock::now() - started;
  return e;
}

Estimate monte_carlo(const Graph& g, NodeId s, NodeId t, double delta, double c_mc,
                     double alpha, std::uint64_t seed, unsigned threads) {
  check_nodes(g, s, t);
  check_probability(delta, "delta");
  check_probability(alpha, "alpha");
  if (!(c_mc > 0.0)) throw std::invalid_argument("c_mc must be positive");
  const auto started = Clock::now();
  const auto k = static_cast<std::uint64_t>(std::ceil(c_mc / delta));
  const double hits = batched_sum(k, seed, threads, [&](RngStream& rng, std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (walk_endpoint(g, s, sample_geometric(alpha, rng), rng) == t) ++count;
    }
    return static_cast<double>(count);
  });
  Estimate e;
  e.algorithm = Algorithm::kMonteCarlo;
  e.value = hits / static_cast<double>(k);
  e.walks_used = k;
  e.forward_time = Clock::now() - started;
  return e;
}

Estimate local_update(const Graph& g, NodeId s, NodeId t, double delta, double alpha) {
  check_nodes(g, s, t);
  check_probability(delta, "delta");
  const auto started = Clock::now();
  const ReversePushResult r = reverse_push(g, t, alpha, delta / 2.0);
  Estimate e;
  e.algorithm = Algorithm::kLocalUpdate;
  e.value = r.estimates[s];
  e.frontier_pushes = r.push_count;
  e.reverse_time = Clock::now() - started;
  return e;
}

Decision detect_high(const Estimate& e, double delta) noexcept {
  return e.value > 0.75 * delta ? Decision::kAccept : Decision::kReject;
}

}  // namespace fastppr
