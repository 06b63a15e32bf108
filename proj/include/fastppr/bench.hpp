#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fastppr/estimators.hpp"
#include "fastppr/graph.hpp"

namespace fastppr {

/// One (pair, algorithm) measurement. A failed query has a NaN estimate.
struct BenchRecord {
  std::string graph;
  Algorithm algorithm = Algorithm::kFastPpr;
  NodeId source = 0;
  NodeId target = 0;
  double delta = 0.0;
  double estimate = 0.0;
  std::optional<double> truth;
  std::optional<double> rel_err;  ///< present iff truth is
  double forward_ms = 0.0;
  double reverse_ms = 0.0;
  double total_ms = 0.0;
  std::uint64_t walks = 0;
  std::uint64_t pushes = 0;
  std::uint64_t seed = 0;  ///< run-level seed

  /// Sets truth and the matching relative error.
  void set_truth(double value);
  bool operator==(const BenchRecord& o) const;
};

inline constexpr const char* kBenchCsvHeader =
    "graph,algorithm,source,target,delta,estimate,truth,rel_err,forward_ms,reverse_ms,"
    "total_ms,walks,pushes,seed";

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws std::runtime_error on a header or field mismatch.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

using NodePair = std::pair<NodeId, NodeId>;

enum class TargetDistribution { kUniform, kPageRank };

/// Sources uniform; targets uniform or proportional to global PageRank.
std::vector<NodePair> sample_pairs(const Graph& g, std::size_t k, TargetDistribution dist,
                                   std::uint64_t seed, double alpha = 0.2);

/// Runs `p.seed`-derived queries for every (pair, algorithm); records are in
/// pair-major order regardless of `workers`.
std::vector<BenchRecord> run_timing(const Graph& g, const std::string& graph_name,
                                    const std::vector<NodePair>& pairs,
                                    const std::vector<Algorithm>& algorithms,
                                    const QueryParams& p, unsigned workers = 1);

/// Runs one algorithm on one pair and fills a record (truth left empty).
BenchRecord run_query(const Graph& g, const std::string& graph_name, NodePair pair,
                      Algorithm algorithm, const QueryParams& p, std::uint64_t query_seed);

struct AccuracySummary {
  std::size_t count = 0;
  double mean_additive = 0.0;
  double max_additive = 0.0;
  double mean_relative = 0.0;
  double max_relative = 0.0;
};

struct AccuracyResult {
  std::vector<BenchRecord> records;
  AccuracySummary summary;
  std::size_t resampled_targets = 0;
};

AccuracySummary summarize(const std::vector<BenchRecord>& records);

/// For each of `targets` uniform targets, draws up to `per_bin` sources from
/// each of the bins [delta/4, delta) and [delta, 4 delta] of the ground-truth
/// inverse PPR (tolerance delta/100) and runs `algorithm` on every pair.
AccuracyResult accuracy_experiment(const Graph& g, const std::string& graph_name,
                                   std::size_t targets, std::size_t per_bin,
                                   const QueryParams& p,
                                   Algorithm algorithm = Algorithm::kFastPpr,
                                   unsigned workers = 1);

struct CcdfRow {
  double threshold;
  double fraction;
};

/// Fraction of `values` at or above each threshold.
std::vector<CcdfRow> ccdf_table(std::vector<double> values, const std::vector<double>& thresholds);

/// Log-spaced thresholds (per_decade per decade) from `floor` to 1, preceded by 0.
std::vector<double> log_thresholds(double floor, int per_decade = 10);

/// Estimates k uniform pairs with fast_ppr at accuracy `delta_floor` and
/// tabulates the CCDF of the estimates.
std::vector<CcdfRow> ppr_ccdf(const Graph& g, std::size_t k, double delta_floor,
                              const QueryParams& p, std::vector<double>* estimates = nullptr);

void write_ccdf_csv(std::ostream& out, const std::vector<CcdfRow>& rows);

struct BalanceRow {
  std::size_t percentile = 0;
  NodeId target = 0;
  double fast_forward_ms = 0.0;
  double fast_reverse_ms = 0.0;
  double balanced_forward_ms = 0.0;
  double balanced_reverse_ms = 0.0;
};

/// Sorts targets by global PageRank, takes the first target of each of
/// `percentiles` quantile buckets, and times both frontier variants over
/// `sources_per_target` uniform sources (per-target medians). With `smooth`,
/// each column is then 5-point median smoothed across percentiles.
std::vector<BalanceRow> balance_diagnostics(const Graph& g, std::size_t percentiles,
                                            const QueryParams& p,
                                            std::size_t sources_per_target = 5,
                                            bool smooth = true);

void write_balance_csv(std::ostream& out, const std::vector<BalanceRow>& rows);

}  // namespace fastppr
