#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "fastppr/graph.hpp"

namespace fastppr {

namespace {

constexpr char kCacheMagic[8] = {'F', 'P', 'P', 'R', 'C', 'S', 'R', '1'};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "invalid node id '" + std::string(tok) + "'");
  }
  return value;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) {
    throw GraphError("truncated binary graph cache");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

template <typename T>
void put_array(std::ostream& out, const std::vector<T>& v) {
  put_u64(out, v.size());
  for (const T& x : v) put_u64(out, static_cast<std::uint64_t>(x));
}

template <typename T>
std::vector<T> get_array(std::istream& in, std::uint64_t limit) {
  const std::uint64_t len = get_u64(in);
  if (len > limit) throw GraphError("implausible array length in cache");
  std::vector<T> v(len);
  for (auto& x : v) x = static_cast<T>(get_u64(in));
  return v;
}

std::uint64_t hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return hash_bytes({reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()});
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, bool undirected) {
  std::unordered_map<std::uint64_t, NodeId> remap;
  std::vector<std::uint64_t> original;
  std::vector<std::pair<NodeId, NodeId>> edges;

  const auto intern = [&](std::uint64_t id) {
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(original.size()));
    if (inserted) {
      if (original.size() >= kNoNode) throw GraphError("too many nodes");
      original.push_back(id);
    }
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    auto first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    auto second = next_token(rest);
    if (second.empty()) throw ParseError(line_no, "expected two node ids");
    if (!next_token(rest).empty()) throw ParseError(line_no, "trailing tokens");
    const NodeId u = intern(parse_id(first, line_no));
    const NodeId v = intern(parse_id(second, line_no));
    edges.emplace_back(u, v);
    if (undirected && u != v) edges.emplace_back(v, u);
  }
  if (original.empty()) throw GraphError("edge list is empty");

  LoadedGraph lg;
  lg.graph = Graph::from_edges(static_cast<NodeId>(original.size()), std::move(edges));
  lg.original_ids = std::move(original);
  return lg;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path, bool undirected) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path.string());
  return load_edge_list(in, undirected);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) out << u << ' ' << v << '\n';
  }
}

void save_binary(const std::filesystem::path& path, const LoadedGraph& lg,
                 std::uint64_t source_hash) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GraphError("cannot write " + path.string());
  out.write(kCacheMagic, sizeof kCacheMagic);
  put_u64(out, source_hash);
  put_u64(out, lg.graph.fingerprint());
  put_array(out, lg.graph.out_offsets());
  put_array(out, lg.graph.out_targets());
  put_array(out, lg.graph.in_offsets());
  put_array(out, lg.graph.in_sources());
  put_array(out, lg.original_ids);
  if (!out) throw GraphError("write failed for " + path.string());
}

LoadedGraph load_binary(const std::filesystem::path& path,
                        std::uint64_t expected_source_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path.string());
  char magic[sizeof kCacheMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
    throw GraphError("not a graph cache: " + path.string());
  }
  if (get_u64(in) != expected_source_hash) {
    throw GraphError("graph cache is stale: " + path.string());
  }
  const std::uint64_t fingerprint = get_u64(in);
  const std::uint64_t limit = std::filesystem::file_size(path) / 8;
  auto out_offsets = get_array<EdgeIndex>(in, limit);
  auto out_targets = get_array<NodeId>(in, limit);
  auto in_offsets = get_array<EdgeIndex>(in, limit);
  auto in_sources = get_array<NodeId>(in, limit);
  LoadedGraph lg;
  lg.original_ids = get_array<std::uint64_t>(in, limit);
  lg.graph = Graph::from_csr(std::move(out_offsets), std::move(out_targets),
                             std::move(in_offsets), std::move(in_sources));
  if (lg.graph.fingerprint() != fingerprint ||
      lg.original_ids.size() != lg.graph.node_count()) {
    throw GraphError("graph cache failed integrity check: " + path.string());
  }
  return lg;
}

LoadedGraph load_cached(const std::filesystem::path& path, bool undirected) {
  // Undirected loads hash differently so the two views never share a cache.
  const std::uint64_t h = hash_file(path) ^ (undirected ? 0x9e3779b97f4a7c15ULL : 0);
  auto cache = path;
  cache += ".csr";
  std::error_code ec;
  if (std::filesystem::exists(cache, ec)) {
    try {
      return load_binary(cache, h);
    } catch (const GraphError&) {
      // fall through and rebuild
    }
  }
  LoadedGraph lg = load_edge_list_file(path, undirected);
  try {
    save_binary(cache, lg, h);
  } catch (const GraphError&) {
    // read-only location: the cache is optional
  }
  return lg;
}

}  // namespace fastppr
