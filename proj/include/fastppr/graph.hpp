#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fastppr {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the edge-list reader; carries the 1-based offending line.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable directed graph stored as forward and reverse CSR.
///
/// Construction deduplicates edges and closes dangling nodes with a
/// self-loop, so every node has out-degree at least one. The object is
/// safe to share across threads once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over ids 0..node_count-1.
  static Graph from_edges(NodeId node_count,
                          std::vector<std::pair<NodeId, NodeId>> edges);

  /// Adopts already-built CSR arrays (used by the binary cache). Validates
  /// every structural invariant and throws GraphError on mismatch.
  static Graph from_csr(std::vector<EdgeIndex> out_offsets,
                        std::vector<NodeId> out_targets,
                        std::vector<EdgeIndex> in_offsets,
                        std::vector<NodeId> in_sources);

  NodeId node_count() const noexcept { return node_count_; }
  EdgeIndex edge_count() const noexcept { return out_targets_.size(); }
  double average_degree() const noexcept {
    return node_count_ == 0 ? 0.0
                            : static_cast<double>(edge_count()) / node_count_;
  }

  std::span<const NodeId> out_neighbors(NodeId u) const noexcept {
    return {out_targets_.data() + out_offsets_[u],
            out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const noexcept {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }
  std::uint32_t out_degree(NodeId u) const noexcept {
    return static_cast<std::uint32_t>(out_offsets_[u + 1] - out_offsets_[u]);
  }
  std::uint32_t in_degree(NodeId v) const noexcept {
    return static_cast<std::uint32_t>(in_offsets_[v + 1] - in_offsets_[v]);
  }
  bool contains(NodeId u) const noexcept { return u < node_count_; }

  const std::vector<EdgeIndex>& out_offsets() const noexcept { return out_offsets_; }
  const std::vector<NodeId>& out_targets() const noexcept { return out_targets_; }
  const std::vector<EdgeIndex>& in_offsets() const noexcept { return in_offsets_; }
  const std::vector<NodeId>& in_sources() const noexcept { return in_sources_; }

  /// Content hash of the CSR arrays; stable across processes and platforms.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Process-unique identity, used to key per-graph caches.
  std::uint64_t instance_id() const noexcept { return instance_id_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.out_offsets_ == b.out_offsets_ &&
           a.out_targets_ == b.out_targets_ && a.in_offsets_ == b.in_offsets_ &&
           a.in_sources_ == b.in_sources_;
  }

 private:
  void finalize();

  NodeId node_count_ = 0;
  std::vector<EdgeIndex> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<EdgeIndex> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::uint64_t fingerprint_ = 0;
  std::uint64_t instance_id_ = 0;
};

struct DegreeSummary {
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> in;
  double average = 0.0;
};

DegreeSummary degrees(const Graph& g);

/// A graph plus the original id of every remapped node.
struct LoadedGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;

  /// Maps an original id back to its dense id; throws GraphError if absent.
  NodeId dense_id(std::uint64_t original) const;
};

/// Reads "u v" lines ('#' starts a comment line). Ids are remapped to
/// 0..n-1 in first-seen order.
LoadedGraph load_edge_list(std::istream& in, bool undirected = false);
LoadedGraph load_edge_list_file(const std::filesystem::path& path,
                                bool undirected = false);

/// Writes one "u v" line per edge in dense ids, sorted by source.
void write_edge_list(std::ostream& out, const Graph& g);

/// Binary CSR cache. The header stores the hash of the text it was built
/// from so a stale cache is never used.
void save_binary(const std::filesystem::path& path, const LoadedGraph& lg,
                 std::uint64_t source_hash);
LoadedGraph load_binary(const std::filesystem::path& path,
                        std::uint64_t expected_source_hash);

/// Loads `path`, reusing `path + ".csr"` when its hash matches the text.
LoadedGraph load_cached(const std::filesystem::path& path, bool undirected = false);

std::uint64_t hash_bytes(std::span<const unsigned char> bytes,
                         std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;

}  // namespace fastppr
