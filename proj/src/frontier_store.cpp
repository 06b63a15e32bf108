#include "fastppr/frontier_store.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fastppr/parallel.hpp"

namespace fastppr {

namespace {

constexpr char kMagic[8] = {'F', 'P', 'P', 'R', 'S', 'T', 'R', '1'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::uint64_t u64() {
    unsigned char buf[8];
    if (!in_.read(reinterpret_cast<char*>(buf), 8)) throw StoreError("truncated frontier store");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }

 private:
  std::istream& in_;
};

void put_entries(std::string& out, const SparseVector& v) {
  put_u64(out, v.size());
  for (const auto& [node, value] : v) {
    put_u64(out, node);
    put_f64(out, value);
  }
}

SparseVector get_entries(Reader& r, std::uint64_t limit) {
  const std::uint64_t len = r.u64();
  if (len > limit) throw StoreError("implausible entry count in frontier store");
  SparseVector v(len);
  for (auto& e : v) {
    e.node = static_cast<NodeId>(r.u64());
    e.value = r.f64();
  }
  return v;
}

}  // namespace

std::uint64_t FrontierStore::frontier_entries() const noexcept {
  std::uint64_t total = 0;
  for (const auto& r : records) total += r.frontier_set.size();
  return total;
}

std::uint64_t FrontierStore::total_entries() const noexcept {
  std::uint64_t total = 0;
  for (const auto& r : records) total += r.frontier_set.size() + r.target_set.size();
  return total;
}

const FrontierRecord& FrontierStore::record(NodeId t) const {
  if (t >= records.size() || records[t].target != t) {
    throw StoreError("no stored frontier for target " + std::to_string(t));
  }
  return records[t];
}

FrontierStore precompute_frontiers(const Graph& g, double eps_r, double beta, double alpha,
                                   unsigned threads) {
  FrontierStore store;
  store.graph_fingerprint = g.fingerprint();
  store.alpha = alpha;
  store.beta = beta;
  store.eps_r = eps_r;
  store.records.resize(g.node_count());
  parallel_for(g.node_count(), threads, [&](std::size_t t) {
    store.records[t] = make_record(frontier_push(g, static_cast<NodeId>(t), eps_r, beta, alpha));
  });
  const double bound = static_cast<double>(g.edge_count()) / eps_r;
  if (static_cast<double>(store.frontier_entries()) > bound) {
    throw std::logic_error("frontier storage exceeds m / eps_r");
  }
  return store;
}

FrontierStore precompute_frontiers(const Graph& g, double eps_r, double beta, double alpha,
                                   const std::filesystem::path& out, unsigned threads) {
  FrontierStore store = precompute_frontiers(g, eps_r, beta, alpha, threads);
  save_store(out, store);
  return store;
}

void save_store(const std::filesystem::path& path, const FrontierStore& store) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write " + path.string());
  std::string header(kMagic, sizeof kMagic);
  put_u64(header, store.graph_fingerprint);
  put_f64(header, store.alpha);
  put_f64(header, store.beta);
  put_f64(header, store.eps_r);
  put_u64(header, store.records.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  std::string body;
  for (const auto& rec : store.records) {
    body.clear();
    put_u64(body, rec.target);
    put_f64(body, rec.eps_r);
    put_entries(body, rec.target_set);
    put_entries(body, rec.frontier_set);
    std::string len;
    put_u64(len, body.size());
    out.write(len.data(), 8);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
  }
  if (!out) throw StoreError("write failed for " + path.string());
}

FrontierStore load_store(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw StoreError("not a frontier store: " + path.string());
  }
  Reader r(in);
  FrontierStore store;
  store.graph_fingerprint = r.u64();
  if (store.graph_fingerprint != g.fingerprint()) {
    throw StoreError("frontier store was built for a different graph");
  }
  store.alpha = r.f64();
  store.beta = r.f64();
  store.eps_r = r.f64();
  const std::uint64_t count = r.u64();
  if (count != g.node_count()) throw StoreError("frontier store record count mismatch");
  store.records.resize(count);
  for (auto& rec : store.records) {
    const std::uint64_t len = r.u64();
    const auto start = in.tellg();
    rec.target = static_cast<NodeId>(r.u64());
    rec.eps_r = r.f64();
    rec.target_set = get_entries(r, g.node_count());
    rec.frontier_set = get_entries(r, g.node_count());
    if (static_cast<std::uint64_t>(in.tellg() - start) != len) {
      throw StoreError("frontier store record length mismatch");
    }
  }
  return store;
}

Estimate query_with_store(const FrontierStore& store, const Graph& g, NodeId s, NodeId t,
                          const QueryParams& p) {
  p.validate();
  if (store.graph_fingerprint != g.fingerprint()) {
    throw StoreError("frontier store was built for a different graph");
  }
  if (p.alpha != store.alpha || p.beta != store.beta ||
      (p.eps_r && *p.eps_r != store.eps_r)) {
    throw StoreError("query parameters do not match the frontier store");
  }
  if (!g.contains(s)) throw std::invalid_argument("node id out of range");
  Estimate e = forward_from_record(g, s, store.record(t), p);
  e.algorithm = Algorithm::kStoredFastPpr;
  return e;
}

}  // namespace fastppr
