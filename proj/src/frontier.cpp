#include "fastppr/frontier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

#include "fastppr/rng.hpp"
#include "fastppr/walks.hpp"

namespace fastppr {

namespace {

using Clock = std::chrono::steady_clock;

void check_common(const Graph& g, NodeId t, double beta, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must lie in (0,1/2)");
  if (!g.contains(t)) throw std::invalid_argument("target node out of range");
}

/// Dense estimate/residual vectors plus the list of nodes ever touched.
struct PushState {
  explicit PushState(NodeId n) : estimate(n, 0.0), residual(n, 0.0), seen(n, 0) {}

  void touch(NodeId u) {
    if (!seen[u]) {
      seen[u] = 1;
      touched.push_back(u);
    }
  }

  std::vector<double> estimate;
  std::vector<double> residual;
  std::vector<std::uint8_t> seen;
  std::vector<NodeId> touched;
};

/// Builds target/frontier sets and sparse vectors from the final state.
void finalize(const Graph& g, PushState& st, FrontierResult& out) {
  std::sort(st.touched.begin(), st.touched.end());
  out.estimates.reserve(st.touched.size());
  std::vector<std::uint8_t> in_target(g.node_count(), 0);
  for (NodeId u : st.touched) {
    out.estimates.push_back({u, st.estimate[u]});
    if (st.residual[u] > 0.0) out.residuals.push_back({u, st.residual[u]});
    if (u == out.target || st.estimate[u] > out.eps_r) {
      out.target_set.push_back(u);
      in_target[u] = 1;
    }
  }
  std::vector<std::uint8_t> in_frontier(g.node_count(), 0);
  for (NodeId v : out.target_set) {
    for (NodeId u : g.in_neighbors(v)) {
      if (!in_target[u] && !in_frontier[u]) {
        in_frontier[u] = 1;
        out.frontier_set.push_back(u);
      }
    }
  }
  std::sort(out.frontier_set.begin(), out.frontier_set.end());
}

}  // namespace

double sparse_lookup(const SparseVector& v, NodeId node) noexcept {
  auto it = std::lower_bound(v.begin(), v.end(), node,
                             [](const SparseEntry& e, NodeId n) { return e.node < n; });
  return (it != v.end() && it->node == node) ? it->value : 0.0;
}

bool FrontierResult::in_target_set(NodeId w) const noexcept {
  return std::binary_search(target_set.begin(), target_set.end(), w);
}

bool FrontierResult::in_frontier(NodeId w) const noexcept {
  return std::binary_search(frontier_set.begin(), frontier_set.end(), w);
}

double FrontierResult::max_residual() const noexcept {
  double m = 0.0;
  for (const auto& e : residuals) m = std::max(m, e.value);
  return m;
}

FrontierResult frontier_push(const Graph& g, NodeId t, double eps_r, double beta,
                             double alpha, std::uint64_t max_pushes) {
  check_common(g, t, beta, alpha);
  if (!(eps_r > 0.0 && eps_r <= 1.0)) throw std::invalid_argument("eps_r must lie in (0,1]");
  const auto started = Clock::now();

  FrontierResult out;
  out.target = t;
  out.alpha = alpha;
  out.beta = beta;
  out.eps_r = eps_r;
  out.eps_inv = beta * eps_r;
  const double threshold = alpha * out.eps_inv;

  PushState st(g.node_count());
  std::vector<std::uint8_t> queued(g.node_count(), 0);
  std::deque<NodeId> work;
  st.estimate[t] = st.residual[t] = alpha;
  st.touch(t);
  if (alpha > threshold) {
    work.push_back(t);
    queued[t] = 1;
  }

  while (!work.empty() && out.push_count < max_pushes) {
    const NodeId w = work.front();
    work.pop_front();
    queued[w] = 0;
    const double mass = st.residual[w];
    st.residual[w] = 0.0;
    const double spread = (1.0 - alpha) * mass;
    for (NodeId u : g.in_neighbors(w)) {
      const double delta = spread / g.out_degree(u);
      st.estimate[u] += delta;
      st.residual[u] += delta;
      st.touch(u);
      if (st.residual[u] > threshold && !queued[u]) {
        queued[u] = 1;
        work.push_back(u);
      }
    }
    ++out.push_count;
  }

  finalize(g, st, out);
  out.reverse_time = Clock::now() - started;
  return out;
}

FrontierRecord make_record(const FrontierResult& r) {
  FrontierRecord rec;
  rec.target = r.target;
  rec.eps_r = r.eps_r;
  rec.target_set.reserve(r.target_set.size());
  for (NodeId u : r.target_set) rec.target_set.push_back({u, r.estimate(u)});
  rec.frontier_set.reserve(r.frontier_set.size());
  for (NodeId u : r.frontier_set) rec.frontier_set.push_back({u, r.estimate(u)});
  return rec;
}

ReversePushResult reverse_push(const Graph& g, NodeId t, double alpha, double additive_error) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(additive_error > 0.0)) throw std::invalid_argument("additive error must be positive");
  if (!g.contains(t)) throw std::invalid_argument("target node out of range");
  const double threshold = alpha * additive_error;
  ReversePushResult out;
  out.estimates.assign(g.node_count(), 0.0);
  std::vector<double> residual(g.node_count(), 0.0);
  std::vector<std::uint8_t> queued(g.node_count(), 0);
  std::deque<NodeId> work;
  out.estimates[t] = residual[t] = alpha;
  if (alpha > threshold) {
    work.push_back(t);
    queued[t] = 1;
  }
  while (!work.empty()) {
    const NodeId w = work.front();
    work.pop_front();
    queued[w] = 0;
    const double spread = (1.0 - alpha) * residual[w];
    residual[w] = 0.0;
    for (NodeId u : g.in_neighbors(w)) {
      const double d = spread / g.out_degree(u);
      out.estimates[u] += d;
      residual[u] += d;
      if (residual[u] > threshold && !queued[u]) {
        queued[u] = 1;
        work.push_back(u);
      }
    }
    ++out.push_count;
  }
  return out;
}

FrontierResult balanced_frontier(const Graph& g, NodeId t, double delta, double c,
                                 double beta, double alpha, double walk_seconds) {
  check_common(g, t, beta, alpha);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (!(walk_seconds > 0.0)) throw std::invalid_argument("walk time must be positive");
  const auto started = Clock::now();

  FrontierResult out;
  out.target = t;
  out.alpha = alpha;
  out.beta = beta;

  PushState st(g.node_count());
  st.estimate[t] = st.residual[t] = alpha;
  st.touch(t);

  // Max-heap on residuals; entries whose value no longer matches are stale.
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry> heap;
  heap.push({alpha, t});
  const auto top_residual = [&]() {
    while (!heap.empty() && heap.top().first != st.residual[heap.top().second]) heap.pop();
    return heap.empty() ? 0.0 : heap.top().first;
  };

  const double forward_seconds_per_eps = walk_seconds * c / delta;
  double eps_r = 1.0 / beta;
  while (std::chrono::duration<double>(Clock::now() - started).count() <
         forward_seconds_per_eps * eps_r) {
    const double mass = top_residual();
    if (mass <= 0.0) break;
    const NodeId w = heap.top().second;
    heap.pop();
    st.residual[w] = 0.0;
    const double spread = (1.0 - alpha) * mass;
    for (NodeId u : g.in_neighbors(w)) {
      const double d = spread / g.out_degree(u);
      st.estimate[u] += d;
      st.residual[u] += d;
      st.touch(u);
      heap.push({st.residual[u], u});
    }
    ++out.push_count;
    eps_r = top_residual() / (alpha * beta);
  }

  out.eps_r = eps_r;
  out.eps_inv = beta * eps_r;
  finalize(g, st, out);
  out.reverse_time = Clock::now() - started;
  return out;
}

double measure_walk_seconds(const Graph& g, double alpha, std::uint32_t walks,
                            std::uint64_t seed) {
  RngStream rng(seed, 0);
  NodeId sink = 0;
  // One untimed pass warms caches and the allocator.
  for (int pass = 0; pass < 2; ++pass) {
    const auto started = Clock::now();
    for (std::uint32_t i = 0; i < walks; ++i) {
      const auto s = static_cast<NodeId>(rng.below(g.node_count()));
      sink ^= walk_endpoint(g, s, sample_geometric(alpha, rng), rng);
    }
    if (pass == 1) {
      const double secs = std::chrono::duration<double>(Clock::now() - started).count();
      // Keep `sink` observable so the loop is not optimized away.
      return std::max(secs + (sink == kNoNode ? 1e-12 : 0.0), 1e-12) / walks;
    }
  }
  return 0.0;
}

double calibrated_walk_seconds(const Graph& g, double alpha) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, double>, double> cache;
  const auto key = std::make_pair(g.instance_id(), alpha);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double secs = measure_walk_seconds(g, alpha, 1000, 0x5eed);
  std::lock_guard lock(mu);
  return cache.emplace(key, secs).first->second;
}

}  // namespace fastppr
