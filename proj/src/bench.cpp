#include "fastppr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

#include "fastppr/oracle.hpp"
#include "fastppr/parallel.hpp"
#include "fastppr/rng.hpp"

namespace fastppr {

namespace {

using Clock = std::chrono::steady_clock;

double to_ms(std::chrono::nanoseconds ns) { return std::chrono::duration<double, std::milli>(ns).count(); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::vector<double> median_smooth(const std::vector<double>& v, std::size_t width) {
  std::vector<double> out(v.size());
  const std::size_t half = width / 2;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(v.size(), i + half + 1);
    out[i] = median({v.begin() + static_cast<std::ptrdiff_t>(lo),
                     v.begin() + static_cast<std::ptrdiff_t>(hi)});
  }
  return out;
}

}  // namespace

void BenchRecord::set_truth(double value) {
  truth = value;
  rel_err = std::abs(estimate - value) / value;
}

bool BenchRecord::operator==(const BenchRecord& o) const {
  const auto same = [](double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
  };
  const auto same_opt = [&](const std::optional<double>& a, const std::optional<double>& b) {
    return a.has_value() == b.has_value() && (!a || same(*a, *b));
  };
  return graph == o.graph && algorithm == o.algorithm && source == o.source &&
         target == o.target && same(delta, o.delta) && same(estimate, o.estimate) &&
         same_opt(truth, o.truth) && same_opt(rel_err, o.rel_err) &&
         same(forward_ms, o.forward_ms) && same(reverse_ms, o.reverse_ms) &&
         same(total_ms, o.total_ms) && walks == o.walks && pushes == o.pushes && seed == o.seed;
}

std::vector<NodePair> sample_pairs(const Graph& g, std::size_t k, TargetDistribution dist,
                                   std::uint64_t seed, double alpha) {
  RngStream rng(seed, 0);
  std::vector<NodePair> pairs(k);
  if (dist == TargetDistribution::kUniform) {
    for (auto& [s, t] : pairs) {
      s = static_cast<NodeId>(rng.below(g.node_count()));
      t = static_cast<NodeId>(rng.below(g.node_count()));
    }
    return pairs;
  }
  const PprVector pr = global_pagerank(g, alpha, 1e-10 / g.node_count());
  std::discrete_distribution<NodeId> pick(pr.values.data(), pr.values.data() + pr.values.size());
  for (auto& [s, t] : pairs) {
    s = static_cast<NodeId>(rng.below(g.node_count()));
    t = pick(rng);
  }
  return pairs;
}

BenchRecord run_query(const Graph& g, const std::string& graph_name, NodePair pair,
                      Algorithm algorithm, const QueryParams& p, std::uint64_t query_seed) {
  BenchRecord rec;
  rec.graph = graph_name;
  rec.algorithm = algorithm;
  rec.source = pair.first;
  rec.target = pair.second;
  rec.delta = p.delta;
  rec.seed = p.seed;
  QueryParams q = p;
  q.seed = query_seed;
  const auto started = Clock::now();
  try {
    Estimate e;
    switch (algorithm) {
      case Algorithm::kFastPpr: e = fast_ppr(g, pair.first, pair.second, q); break;
      case Algorithm::kBalancedFastPpr: e = balanced_fast_ppr(g, pair.first, pair.second, q); break;
      case Algorithm::kTheoreticalFastPpr:
        e = theoretical_fast_ppr(g, pair.first, pair.second, q.delta, TheoreticalParams{},
                                 q.alpha, q.resolved_eps_r(g), query_seed);
        break;
      case Algorithm::kMonteCarlo:
        e = monte_carlo(g, pair.first, pair.second, q.delta, q.c_mc, q.alpha, query_seed, q.threads);
        break;
      case Algorithm::kLocalUpdate: e = local_update(g, pair.first, pair.second, q.delta, q.alpha); break;
      case Algorithm::kStoredFastPpr:
        throw std::invalid_argument("stored queries need a frontier store");
    }
    rec.total_ms = to_ms(Clock::now() - started);
    rec.estimate = e.value;
    rec.forward_ms = to_ms(e.forward_time);
    rec.reverse_ms = to_ms(e.reverse_time);
    rec.walks = e.walks_used;
    rec.pushes = e.frontier_pushes;
  } catch (const std::exception& ex) {
    rec.total_ms = to_ms(Clock::now() - started);
    rec.estimate = std::numeric_limits<double>::quiet_NaN();
    std::cerr << "query " << to_string(algorithm) << " (" << pair.first << "," << pair.second
              << ") failed: " << ex.what() << '\n';
  }
  return rec;
}

std::vector<BenchRecord> run_timing(const Graph& g, const std::string& graph_name,
                                    const std::vector<NodePair>& pairs,
                                    const std::vector<Algorithm>& algorithms,
                                    const QueryParams& p, unsigned workers) {
  std::vector<BenchRecord> records(pairs.size() * algorithms.size());
  if (records.empty()) return records;
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    const std::uint64_t query_seed = mix_seed(p.seed, i);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      records[i * algorithms.size() + a] = run_query(g, graph_name, pairs[i], algorithms[a], p, query_seed);
    }
  });
  return records;
}

AccuracySummary summarize(const std::vector<BenchRecord>& records) {
  AccuracySummary s;
  for (const auto& r : records) {
    if (!r.truth || std::isnan(r.estimate)) continue;
    const double add = std::abs(r.estimate - *r.truth);
    ++s.count;
    s.mean_additive += add;
    s.max_additive = std::max(s.max_additive, add);
    s.mean_relative += *r.rel_err;
    s.max_relative = std::max(s.max_relative, *r.rel_err);
  }
  if (s.count > 0) {
    s.mean_additive /= static_cast<double>(s.count);
    s.mean_relative /= static_cast<double>(s.count);
  }
  return s;
}

AccuracyResult accuracy_experiment(const Graph& g, const std::string& graph_name,
                                   std::size_t targets, std::size_t per_bin,
                                   const QueryParams& p, Algorithm algorithm, unsigned workers) {
  p.validate();
  const double delta = p.delta;
  RngStream rng(p.seed, 0xacc);
  AccuracyResult result;

  struct Job {
    NodePair pair;
    double truth;
  };
  std::vector<Job> jobs;
  std::size_t accepted = 0;
  const std::size_t max_attempts = 100 * std::max<std::size_t>(targets, 1);
  for (std::size_t attempt = 0; accepted < targets; ++attempt) {
    if (attempt >= max_attempts) {
      throw std::runtime_error("could not find targets with both accuracy bins populated");
    }
    const auto t = static_cast<NodeId>(rng.below(g.node_count()));
    const PprVector truth = power_iteration_inverse_ppr(g, t, p.alpha, delta / 100.0);
    std::vector<NodeId> low, high;
    for (NodeId s = 0; s < g.node_count(); ++s) {
      const double v = truth.values[s];
      if (v >= delta / 4.0 && v < delta) low.push_back(s);
      if (v >= delta && v <= 4.0 * delta) high.push_back(s);
    }
    if (low.empty() || high.empty()) {
      ++result.resampled_targets;
      std::cerr << "accuracy: target " << t << " has an empty bin, resampling\n";
      continue;
    }
    for (auto* bin : {&low, &high}) {
      std::shuffle(bin->begin(), bin->end(), rng);
      bin->resize(std::min(bin->size(), per_bin));
      for (NodeId s : *bin) jobs.push_back({{s, t}, truth.values[s]});
    }
    ++accepted;
  }

  result.records.resize(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    BenchRecord rec = run_query(g, graph_name, jobs[i].pair, algorithm, p, mix_seed(p.seed, i));
    rec.set_truth(jobs[i].truth);
    result.records[i] = std::move(rec);
  });
  result.summary = summarize(result.records);
  return result;
}

std::vector<CcdfRow> ccdf_table(std::vector<double> values, const std::vector<double>& thresholds) {
  std::sort(values.begin(), values.end());
  std::vector<CcdfRow> rows;
  rows.reserve(thresholds.size());
  const auto n = static_cast<double>(values.size());
  for (double x : thresholds) {
    const auto below = std::lower_bound(values.begin(), values.end(), x) - values.begin();
    rows.push_back({x, values.empty() ? 0.0 : (n - static_cast<double>(below)) / n});
  }
  return rows;
}

std::vector<double> log_thresholds(double floor, int per_decade) {
  std::vector<double> out{0.0};
  const double lo = std::log10(floor);
  const int steps = static_cast<int>(std::ceil(-lo * per_decade));
  for (int i = 0; i <= steps; ++i) {
    out.push_back(std::min(1.0, std::pow(10.0, lo + static_cast<double>(i) / per_decade)));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CcdfRow> ppr_ccdf(const Graph& g, std::size_t k, double delta_floor,
                              const QueryParams& p, std::vector<double>* estimates) {
  if (!(delta_floor > 0.0 && delta_floor < 1.0)) {
    throw std::invalid_argument("delta floor must lie in (0,1)");
  }
  QueryParams q = p;
  q.delta = delta_floor;
  const auto pairs = sample_pairs(g, k, TargetDistribution::kUniform, p.seed);
  std::vector<double> values(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    q.seed = mix_seed(p.seed, i);
    values[i] = fast_ppr(g, pairs[i].first, pairs[i].second, q).value;
  }
  auto rows = ccdf_table(values, log_thresholds(delta_floor));
  if (estimates) *estimates = std::move(values);
  return rows;
}

std::vector<BalanceRow> balance_diagnostics(const Graph& g, std::size_t percentiles,
                                            const QueryParams& p, std::size_t sources_per_target,
                                            bool smooth) {
  p.validate();
  const PprVector pr = global_pagerank(g, p.alpha, 1e-10 / g.node_count());
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return pr.values[a] < pr.values[b]; });

  RngStream rng(p.seed, 0xba1);
  std::vector<BalanceRow> rows(percentiles);
  for (std::size_t i = 0; i < percentiles; ++i) {
    BalanceRow& row = rows[i];
    row.percentile = i;
    row.target = order[i * g.node_count() / percentiles];
    std::vector<double> ff, fr, bf, br;
    for (std::size_t j = 0; j < sources_per_target; ++j) {
      const auto s = static_cast<NodeId>(rng.below(g.node_count()));
      QueryParams q = p;
      q.seed = mix_seed(p.seed, i * sources_per_target + j);
      const Estimate fe = fast_ppr(g, s, row.target, q);
      const Estimate be = balanced_fast_ppr(g, s, row.target, q);
      ff.push_back(to_ms(fe.forward_time));
      fr.push_back(to_ms(fe.reverse_time));
      bf.push_back(to_ms(be.forward_time));
      br.push_back(to_ms(be.reverse_time));
    }
    row.fast_forward_ms = median(ff);
    row.fast_reverse_ms = median(fr);
    row.balanced_forward_ms = median(bf);
    row.balanced_reverse_ms = median(br);
  }
  if (smooth) {
    for (double BalanceRow::*col : {&BalanceRow::fast_forward_ms, &BalanceRow::fast_reverse_ms,
                                    &BalanceRow::balanced_forward_ms,
                                    &BalanceRow::balanced_reverse_ms}) {
      std::vector<double> v;
      for (const auto& r : rows) v.push_back(r.*col);
      v = median_smooth(v, 5);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].*col = v[i];
    }
  }
  return rows;
}

}  // namespace fastppr
