#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fastppr/frontier.hpp"
#include "fastppr/graph.hpp"

namespace fastppr {

enum class Algorithm {
  kFastPpr,
  kBalancedFastPpr,
  kTheoreticalFastPpr,
  kMonteCarlo,
  kLocalUpdate,
  kStoredFastPpr,
};

std::string_view to_string(Algorithm a) noexcept;
/// Accepts the canonical names plus the CLI aliases (fastppr, balanced, ...).
Algorithm parse_algorithm(std::string_view name);

/// Tunables shared by the practical estimators.
struct QueryParams {
  double alpha = 0.2;
  double delta = 0.0;
  std::optional<double> eps_r;  ///< unset: sqrt(d * delta)
  double c = 350.0;             ///< walk-count multiplier
  double beta = 1.0 / 6.0;
  double c_mc = 35.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;  ///< workers for walk batches

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
  /// Explicit eps_r, or sqrt(average_degree * delta) capped at 1.
  double resolved_eps_r(const Graph& g) const;
};

struct TheoreticalParams {
  double c_rel = 0.5;  ///< relative error target, in (0,1)
  double p_fail = 0.1;
};

/// Internal parameters derived from TheoreticalParams for one query.
struct DerivedTheoreticalParams {
  double eps_f = 0.0;
  double beta = 0.0;
  double p_min = 0.0;
  std::uint32_t l_max = 0;
  std::uint64_t n_f = 0;
};

DerivedTheoreticalParams derive(const TheoreticalParams& tp, double delta, double eps_r,
                                double alpha);

struct Estimate {
  double value = 0.0;
  Algorithm algorithm = Algorithm::kFastPpr;
  std::uint64_t walks_used = 0;
  std::uint64_t frontier_pushes = 0;
  std::chrono::nanoseconds forward_time{0};
  std::chrono::nanoseconds reverse_time{0};
  bool shortcut = false;  ///< answered from the target set without walks
  double eps_r = 0.0;     ///< reverse threshold actually used (0 when n/a)
};

/// Number of forward walks: ceil(c * eps_r / delta).
std::uint64_t walk_count(double c, double eps_r, double delta);

/// Bidirectional estimate with a fixed reverse threshold.
Estimate fast_ppr(const Graph& g, NodeId s, NodeId t, const QueryParams& p);

/// As fast_ppr, but eps_r is chosen on the fly so reverse time matches the
/// predicted forward time. `walk_seconds` overrides the calibrated per-walk
/// cost.
Estimate balanced_fast_ppr(const Graph& g, NodeId s, NodeId t, const QueryParams& p,
                           std::optional<double> walk_seconds = std::nullopt);

/// Forward phase shared by every frontier-based estimator: shortcut when s is
/// in the target set, otherwise average frontier values over first-hit walks.
Estimate forward_from_record(const Graph& g, NodeId s, const FrontierRecord& rec,
                             const QueryParams& p);

/// Provably accurate variant using target-avoiding walks.
Estimate theoretical_fast_ppr(const Graph& g, NodeId s, NodeId t, double delta,
                              const TheoreticalParams& tp, double alpha, double eps_r,
                              std::uint64_t seed);

/// ceil(c_mc / delta) geometric walks; fraction ending at t.
Estimate monte_carlo(const Graph& g, NodeId s, NodeId t, double delta, double c_mc,
                     double alpha, std::uint64_t seed, unsigned threads = 1);

/// Reverse push from t to additive error delta / 2.
Estimate local_update(const Graph& g, NodeId s, NodeId t, double delta, double alpha);

enum class Decision { kAccept, kReject };

/// ACCEPT iff the estimate is strictly above 3/4 of delta.
Decision detect_high(const Estimate& e, double delta) noexcept;

}  // namespace fastppr
