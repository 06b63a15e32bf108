#include "fastppr/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "fastppr/bench.hpp"
#include "fastppr/estimators.hpp"
#include "fastppr/frontier_store.hpp"
#include "fastppr/generators.hpp"
#include "fastppr/graph.hpp"
#include "fastppr/oracle.hpp"
#include "fastppr/parallel.hpp"

namespace fastppr::cli {

namespace {

struct Config {
  std::string graph;
  bool undirected = false;
  double alpha = 0.2;
  std::string delta = "4/n";
  std::string eps_r = "auto";
  double beta = 1.0 / 6.0;
  double c = 350.0;
  double c_mc = 35.0;
  std::string algo = "fastppr";
  std::uint64_t seed = 0;
  std::string out;
  std::string store;
  unsigned threads = default_threads();

  std::uint64_t source = 0;
  std::uint64_t target = 0;
  std::size_t pairs = 50;
  std::vector<std::string> algos{"fastppr", "balanced", "montecarlo"};
  std::string target_dist = "uniform";
  std::size_t targets = 20;
  std::size_t per_bin = 10;
  std::string floor;
  std::size_t percentiles = 100;
  std::size_t sources_per_target = 5;
  bool no_smooth = false;
  std::uint64_t node = 0;
  std::string direction = "inverse";
  std::optional<double> tol;
  std::string kind = "powerlaw";
  std::uint32_t nodes = 1000;
  double avg_degree = 10.0;
  double exponent = 2.5;
  std::uint64_t edges = 10000;
};

// Accepts a probability literal or the symbolic "k/n".
double parse_scaled(const std::string& text, const Graph& g, const char* what) {
  const auto slash = text.find("/n");
  try {
    if (slash != std::string::npos && slash + 2 == text.size()) {
      return std::stod(text.substr(0, slash)) / g.node_count();
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(what, "expected a number or k/n, got '" + text + "'");
}

std::string graph_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

QueryParams query_params(const Config& cfg, const Graph& g) {
  QueryParams p;
  p.alpha = cfg.alpha;
  p.delta = parse_scaled(cfg.delta, g, "--delta");
  if (cfg.eps_r != "auto") p.eps_r = parse_scaled(cfg.eps_r, g, "--eps-r");
  p.beta = cfg.beta;
  p.c = cfg.c;
  p.c_mc = cfg.c_mc;
  p.seed = cfg.seed;
  p.threads = cfg.threads;
  p.validate();
  return p;
}

// Opens --out, or falls back to `fallback` when it is empty.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback, std::ios::openmode mode = std::ios::out) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, mode | std::ios::trunc);
    if (!*file_) throw std::runtime_error("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void run_estimate(const Config& cfg, std::ostream& out) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const Graph& g = lg.graph;
  const QueryParams p = query_params(cfg, g);
  const NodeId s = lg.dense_id(cfg.source);
  const NodeId t = lg.dense_id(cfg.target);
  Estimate e;
  if (!cfg.store.empty()) {
    const FrontierStore store = load_store(cfg.store, g);
    QueryParams q = p;
    q.alpha = store.alpha;
    q.beta = store.beta;
    e = query_with_store(store, g, s, t, q);
  } else {
    const BenchRecord r = run_query(g, graph_name(cfg.graph), {s, t}, parse_algorithm(cfg.algo), p, p.seed);
    if (std::isnan(r.estimate)) throw std::runtime_error("query failed");
    e.value = r.estimate;
  }
  out << "estimate=" << format_value(e.value) << '\n';
}

void run_benchmark(const Config& cfg, std::ostream& out) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const QueryParams p = query_params(cfg, lg.graph);
  std::vector<Algorithm> algos;
  for (const auto& a : cfg.algos) algos.push_back(parse_algorithm(a));
  const auto dist = cfg.target_dist == "pagerank" ? TargetDistribution::kPageRank
                                                  : TargetDistribution::kUniform;
  const auto pairs = sample_pairs(lg.graph, cfg.pairs, dist, cfg.seed, cfg.alpha);
  const auto records = run_timing(lg.graph, graph_name(cfg.graph), pairs, algos, p, cfg.threads);
  Output o(cfg.out, out);
  write_bench_csv(*o, records);
}

void run_accuracy(const Config& cfg, std::ostream& out, std::ostream& err) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const QueryParams p = query_params(cfg, lg.graph);
  const auto result = accuracy_experiment(lg.graph, graph_name(cfg.graph), cfg.targets,
                                          cfg.per_bin, p, parse_algorithm(cfg.algo), cfg.threads);
  Output o(cfg.out, out);
  write_bench_csv(*o, result.records);
  err << "pairs=" << result.summary.count << " mean_rel_err=" << result.summary.mean_relative
      << " max_rel_err=" << result.summary.max_relative << '\n';
}

void run_ccdf(const Config& cfg, std::ostream& out) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const QueryParams p = query_params(cfg, lg.graph);
  const double floor = cfg.floor.empty() ? 1.0 / (10.0 * lg.graph.node_count())
                                         : parse_scaled(cfg.floor, lg.graph, "--floor");
  const auto rows = ppr_ccdf(lg.graph, cfg.pairs, floor, p);
  Output o(cfg.out, out);
  write_ccdf_csv(*o, rows);
}

void run_balance(const Config& cfg, std::ostream& out) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const QueryParams p = query_params(cfg, lg.graph);
  const auto rows = balance_diagnostics(lg.graph, cfg.percentiles, p, cfg.sources_per_target,
                                        !cfg.no_smooth);
  Output o(cfg.out, out);
  write_balance_csv(*o, rows);
}

void run_groundtruth(const Config& cfg, std::ostream& out) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const Graph& g = lg.graph;
  const double tol = cfg.tol ? *cfg.tol : parse_scaled(cfg.delta, g, "--delta") / 100.0;
  PprVector v;
  if (cfg.direction == "global") {
    v = global_pagerank(g, cfg.alpha, tol);
  } else if (cfg.direction == "forward") {
    v = power_iteration_ppr(g, lg.dense_id(cfg.node), cfg.alpha, tol);
  } else {
    v = power_iteration_inverse_ppr(g, lg.dense_id(cfg.node), cfg.alpha, tol);
  }
  Output o(cfg.out, out);
  *o << "node,value\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    *o << lg.original_ids[u] << ',' << format_value(v.values[u]) << '\n';
  }
}

void run_precompute(const Config& cfg, std::ostream& err) {
  const LoadedGraph lg = load_cached(cfg.graph, cfg.undirected);
  const QueryParams p = query_params(cfg, lg.graph);
  const std::string path = cfg.out.empty() ? cfg.store : cfg.out;
  if (path.empty()) throw CLI::ValidationError("--out", "precompute needs an output path");
  const FrontierStore store =
      precompute_frontiers(lg.graph, p.resolved_eps_r(lg.graph), p.beta, p.alpha, path, cfg.threads);
  err << "targets=" << store.records.size() << " frontier_entries=" << store.frontier_entries()
      << '\n';
}

void run_gen(const Config& cfg, std::ostream& out) {
  Graph g = cfg.kind == "random" ? random_digraph(cfg.nodes, cfg.edges, cfg.seed)
                                 : power_law_digraph(cfg.nodes, cfg.avg_degree, cfg.exponent, cfg.seed);
  Output o(cfg.out, out);
  write_edge_list(*o, g);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-pair personalized PageRank estimation"};
  app.require_subcommand(1, 1);
  Config cfg;

  const auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph, "edge list file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--undirected", cfg.undirected, "treat every edge as two arcs");
    sub->add_option("--alpha", cfg.alpha, "teleport probability")->capture_default_str();
    sub->add_option("--delta", cfg.delta, "accuracy threshold, a number or k/n")->capture_default_str();
    sub->add_option("--eps-r", cfg.eps_r, "reverse threshold, a number or auto")->capture_default_str();
    sub->add_option("--beta", cfg.beta)->capture_default_str();
    sub->add_option("--c", cfg.c, "walk-count multiplier")->capture_default_str();
    sub->add_option("--c-mc", cfg.c_mc, "Monte-Carlo walk multiplier")->capture_default_str();
    sub->add_option("--seed", cfg.seed)->capture_default_str();
    sub->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  const auto algo_values = CLI::IsMember({"fastppr", "fast_ppr", "balanced", "balanced_fast_ppr",
                                          "theoretical", "theoretical_fast_ppr", "montecarlo",
                                          "monte_carlo", "mc", "localupdate", "local_update"});

  auto* estimate = app.add_subcommand("estimate", "estimate pi_s(t) for one pair");
  graph_opts(estimate);
  estimate->add_option("--source", cfg.source)->required();
  estimate->add_option("--target", cfg.target)->required();
  estimate->add_option("--algo", cfg.algo)->check(algo_values)->capture_default_str();
  estimate->add_option("--store", cfg.store, "frontier store from precompute")->check(CLI::ExistingFile);

  auto* benchmark = app.add_subcommand("benchmark", "time algorithms on sampled pairs");
  graph_opts(benchmark);
  benchmark->add_option("--pairs", cfg.pairs)->capture_default_str();
  benchmark->add_option("--algos", cfg.algos)->check(algo_values)->capture_default_str();
  benchmark->add_option("--targets", cfg.target_dist)
      ->check(CLI::IsMember({"uniform", "pagerank"}))
      ->capture_default_str();

  auto* accuracy = app.add_subcommand("accuracy", "relative error against ground truth");
  graph_opts(accuracy);
  accuracy->add_option("--targets", cfg.targets)->capture_default_str();
  accuracy->add_option("--per-bin", cfg.per_bin)->capture_default_str();
  accuracy->add_option("--algo", cfg.algo)->check(algo_values)->capture_default_str();

  auto* ccdf = app.add_subcommand("ccdf", "distribution of estimates over uniform pairs");
  graph_opts(ccdf);
  ccdf->add_option("--pairs", cfg.pairs)->capture_default_str();
  ccdf->add_option("--floor", cfg.floor, "accuracy floor, a number or k/n (default 0.1/n)");

  auto* balance = app.add_subcommand("balance", "forward/reverse time across PageRank percentiles");
  graph_opts(balance);
  balance->add_option("--percentiles", cfg.percentiles)->capture_default_str();
  balance->add_option("--sources", cfg.sources_per_target)->capture_default_str();
  balance->add_flag("--no-smooth", cfg.no_smooth);

  auto* groundtruth = app.add_subcommand("groundtruth", "power-iteration PPR vector");
  graph_opts(groundtruth);
  groundtruth->add_option("--node", cfg.node, "source or target id");
  groundtruth->add_option("--direction", cfg.direction)
      ->check(CLI::IsMember({"forward", "inverse", "global"}))
      ->capture_default_str();
  groundtruth->add_option("--tol", cfg.tol, "tolerance (default delta/100)");

  auto* precompute = app.add_subcommand("precompute", "store frontiers for every target");
  graph_opts(precompute);
  precompute->add_option("--store", cfg.store, "alias for --out");

  auto* gen = app.add_subcommand("gen", "write a synthetic edge list");
  gen->add_option("--kind", cfg.kind)->check(CLI::IsMember({"powerlaw", "random"}))->capture_default_str();
  gen->add_option("--nodes", cfg.nodes)->capture_default_str();
  gen->add_option("--avg-degree", cfg.avg_degree)->capture_default_str();
  gen->add_option("--exponent", cfg.exponent)->capture_default_str();
  gen->add_option("--edges", cfg.edges)->capture_default_str();
  gen->add_option("--seed", cfg.seed)->capture_default_str();
  gen->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
    if (estimate->parsed()) run_estimate(cfg, out);
    else if (benchmark->parsed()) run_benchmark(cfg, out);
    else if (accuracy->parsed()) run_accuracy(cfg, out, err);
    else if (ccdf->parsed()) run_ccdf(cfg, out);
    else if (balance->parsed()) run_balance(cfg, out);
    else if (groundtruth->parsed()) run_groundtruth(cfg, out);
    else if (precompute->parsed()) run_precompute(cfg, err);
    else if (gen->parsed()) run_gen(cfg, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int dispatch(int argc, const char* const* argv) { return dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace fastppr::cli
