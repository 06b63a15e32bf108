#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "fastppr/estimators.hpp"
#include "fastppr/frontier.hpp"
#include "fastppr/graph.hpp"

namespace fastppr {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precomputed frontier records for every target of one graph.
///
/// File layout (all little-endian): 8-byte magic "FPPRSTR1", u64 graph
/// fingerprint, f64 alpha, f64 beta, f64 eps_r, u64 record count; then per
/// record a u64 byte length followed by u64 target, f64 eps_r, u64 |T|,
/// |T| x (u64 node, f64 estimate), u64 |F|, |F| x (u64 node, f64 estimate).
struct FrontierStore {
  std::uint64_t graph_fingerprint = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double eps_r = 0.0;
  std::vector<FrontierRecord> records;  // records[t].target == t

  /// Sum of frontier sizes; bounded by m / eps_r.
  std::uint64_t frontier_entries() const noexcept;
  /// Sum of |target set| + |frontier| over all records.
  std::uint64_t total_entries() const noexcept;

  const FrontierRecord& record(NodeId t) const;

  friend bool operator==(const FrontierStore&, const FrontierStore&) = default;
};

/// Runs frontier_push for every node. Throws std::logic_error if the
/// storage bound is violated.
FrontierStore precompute_frontiers(const Graph& g, double eps_r, double beta, double alpha,
                                   unsigned threads = 1);
FrontierStore precompute_frontiers(const Graph& g, double eps_r, double beta, double alpha,
                                   const std::filesystem::path& out, unsigned threads = 1);

void save_store(const std::filesystem::path& path, const FrontierStore& store);

/// Loads a store and checks it was built for `g`.
FrontierStore load_store(const std::filesystem::path& path, const Graph& g);

/// Forward-only query against stored frontiers. Uses the same walks as
/// fast_ppr for the same seed, so the two agree exactly.
Estimate query_with_store(const FrontierStore& store, const Graph& g, NodeId s, NodeId t,
                          const QueryParams& p);

}  // namespace fastppr
