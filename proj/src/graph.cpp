#include "fastppr/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>

namespace fastppr {

namespace {

std::atomic<std::uint64_t> next_instance_id{1};

template <typename T>
std::uint64_t hash_vector(const std::vector<T>& v, std::uint64_t seed) {
  // Hash the little-endian encoding so fingerprints agree across hosts.
  std::uint64_t h = seed;
  unsigned char buf[sizeof(T)];
  for (const T& x : v) {
    auto value = static_cast<std::uint64_t>(x);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<unsigned char>(value >> (8 * i));
    }
    h = hash_bytes(buf, h);
  }
  return h;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

std::uint64_t hash_bytes(std::span<const unsigned char> bytes,
                         std::uint64_t seed) noexcept {
  // FNV-1a
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Graph Graph::from_edges(NodeId node_count,
                        std::vector<std::pair<NodeId, NodeId>> edges) {
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw GraphError("edge endpoint out of range");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<bool> has_out(node_count, false);
  for (const auto& e : edges) has_out[e.first] = true;
  std::size_t before = edges.size();
  for (NodeId u = 0; u < node_count; ++u) {
    if (!has_out[u]) edges.emplace_back(u, u);
  }
  if (edges.size() != before) std::sort(edges.begin(), edges.end());

  Graph g;
  g.node_count_ = node_count;
  g.out_offsets_.assign(std::size_t{node_count} + 1, 0);
  g.in_offsets_.assign(std::size_t{node_count} + 1, 0);
  g.out_targets_.resize(edges.size());
  g.in_sources_.resize(edges.size());

  for (const auto& [u, v] : edges) {
    ++g.out_offsets_[u + 1];
    ++g.in_offsets_[v + 1];
  }
  for (NodeId u = 0; u < node_count; ++u) {
    g.out_offsets_[u + 1] += g.out_offsets_[u];
    g.in_offsets_[u + 1] += g.in_offsets_[u];
  }
  std::vector<EdgeIndex> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    g.out_targets_[i] = v;  // edges sorted by (u, v): rows are contiguous
    g.in_sources_[cursor[v]++] = u;
  }
  g.finalize();
  return g;
}

Graph Graph::from_csr(std::vector<EdgeIndex> out_offsets,
                      std::vector<NodeId> out_targets,
                      std::vector<EdgeIndex> in_offsets,
                      std::vector<NodeId> in_sources) {
  if (out_offsets.empty() || out_offsets.size() != in_offsets.size()) {
    throw GraphError("offset arrays disagree on node count");
  }
  const std::size_t n = out_offsets.size() - 1;
  const auto check_offsets = [](const std::vector<EdgeIndex>& off, std::size_t m) {
    if (off.front() != 0 || off.back() != m) return false;
    return std::is_sorted(off.begin(), off.end());
  };
  if (!check_offsets(out_offsets, out_targets.size()) ||
      !check_offsets(in_offsets, in_sources.size()) ||
      out_targets.size() != in_sources.size()) {
    throw GraphError("malformed CSR offsets");
  }
  for (NodeId x : out_targets) if (x >= n) throw GraphError("target out of range");
  for (NodeId x : in_sources) if (x >= n) throw GraphError("source out of range");

  Graph g;
  g.node_count_ = static_cast<NodeId>(n);
  g.out_offsets_ = std::move(out_offsets);
  g.out_targets_ = std::move(out_targets);
  g.in_offsets_ = std::move(in_offsets);
  g.in_sources_ = std::move(in_sources);
  for (NodeId u = 0; u < g.node_count_; ++u) {
    if (g.out_degree(u) == 0) throw GraphError("dangling node in CSR input");
  }
  // Transpose must match exactly: rebuild and compare.
  std::vector<std::pair<NodeId, NodeId>> fwd, rev;
  fwd.reserve(g.out_targets_.size());
  rev.reserve(g.in_sources_.size());
  for (NodeId u = 0; u < g.node_count_; ++u) {
    for (NodeId v : g.out_neighbors(u)) fwd.emplace_back(u, v);
    for (NodeId w : g.in_neighbors(u)) rev.emplace_back(w, u);
  }
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());
  if (fwd != rev) throw GraphError("reverse adjacency is not the transpose");
  g.finalize();
  return g;
}

void Graph::finalize() {
  std::uint64_t h = hash_bytes({}, 0xcbf29ce484222325ULL);
  const std::uint64_t n = node_count_;
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(n >> (8 * i));
  h = hash_bytes(buf, h);
  h = hash_vector(out_offsets_, h);
  h = hash_vector(out_targets_, h);
  h = hash_vector(in_offsets_, h);
  h = hash_vector(in_sources_, h);
  fingerprint_ = h;
  instance_id_ = next_instance_id.fetch_add(1, std::memory_order_relaxed);
}

DegreeSummary degrees(const Graph& g) {
  DegreeSummary d;
  d.out.resize(g.node_count());
  d.in.resize(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    d.out[u] = g.out_degree(u);
    d.in[u] = g.in_degree(u);
  }
  d.average = g.average_degree();
  return d;
}

NodeId LoadedGraph::dense_id(std::uint64_t original) const {
  auto it = std::find(original_ids.begin(), original_ids.end(), original);
  if (it == original_ids.end()) {
    throw GraphError("unknown node id " + std::to_string(original));
  }
  return static_cast<NodeId>(it - original_ids.begin());
}

}  // namespace fastppr
