#include <gtest/gtest.h>

#include <cmath>

#include "fastppr/estimators.hpp"
#include "fastppr/generators.hpp"
#include "fastppr/oracle.hpp"
#include "fixtures.hpp"

using namespace fastppr;

namespace {

QueryParams params(double delta, std::optional<double> eps_r = std::nullopt, std::uint64_t seed = 1) {
  QueryParams p;
  p.delta = delta;
  p.eps_r = eps_r;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(QueryParams, Validation) {
  EXPECT_NO_THROW(params(0.1).validate());
  EXPECT_THROW(params(0.0).validate(), std::invalid_argument);
  EXPECT_THROW(params(1.0).validate(), std::invalid_argument);
  EXPECT_THROW(params(0.1, 0.0).validate(), std::invalid_argument);
  auto p = params(0.1);
  p.beta = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params(0.1);
  p.c = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params(0.1);
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(QueryParams, DefaultReverseThreshold) {
  const Graph g = power_law_digraph(1000, 10.0, 2.5, 1);
  const auto p = params(0.004);
  EXPECT_DOUBLE_EQ(p.resolved_eps_r(g), std::sqrt(g.average_degree() * 0.004));
  EXPECT_DOUBLE_EQ(params(0.5).resolved_eps_r(g), 1.0);
  EXPECT_EQ(walk_count(350, 0.3, 0.1), 1050u);
  EXPECT_EQ(walk_count(350, 0.31, 0.1), 1085u);
}

TEST(TheoreticalParams, Derivation) {
  const auto d = derive(TheoreticalParams{0.5, 0.1}, 0.01, 0.1, 0.2);
  EXPECT_DOUBLE_EQ(d.eps_f, 0.1);
  EXPECT_DOUBLE_EQ(d.beta, 0.5 / 3.5);
  EXPECT_DOUBLE_EQ(d.p_min, 0.5 / (3.0 * (1.0 + 0.5 / 3.5)));
  EXPECT_EQ(d.l_max, static_cast<std::uint32_t>(std::ceil(std::log(0.5 * 0.01 / 3) / std::log(0.8))));
  const double nf = 45.0 * d.l_max / (0.25 * 0.1) * std::log(2.0 / 0.1);
  EXPECT_EQ(d.n_f, static_cast<std::uint64_t>(std::ceil(nf)));
  EXPECT_THROW(derive(TheoreticalParams{1.0, 0.1}, 0.01, 0.1, 0.2), std::invalid_argument);
  EXPECT_THROW(derive(TheoreticalParams{0.5, 0.0}, 0.01, 0.1, 0.2), std::invalid_argument);
}

TEST(Algorithm, NamesRoundTrip) {
  for (auto a : {Algorithm::kFastPpr, Algorithm::kBalancedFastPpr, Algorithm::kTheoreticalFastPpr,
                 Algorithm::kMonteCarlo, Algorithm::kLocalUpdate, Algorithm::kStoredFastPpr}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_EQ(parse_algorithm("mc"), Algorithm::kMonteCarlo);
  EXPECT_THROW(parse_algorithm("bogus"), std::invalid_argument);
}

TEST(FastPpr, ShortcutWhenSourceInTargetSet) {
  const Graph g = fixtures::two_cycle();
  const auto e = fast_ppr(g, 1, 0, params(0.1, 0.3));
  EXPECT_TRUE(e.shortcut);
  EXPECT_EQ(e.walks_used, 0u);
  EXPECT_NEAR(e.value, fixtures::two_cycle_ppr(1, 0), 0.05);
}

TEST(FastPpr, SourceOnFrontierHasZeroVariance) {
  const Graph g = fixtures::two_cycle();
  const auto fr = frontier_push(g, 0, 0.5, 1.0 / 6.0, 0.2);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto e = fast_ppr(g, 1, 0, params(0.1, 0.5, seed));
    EXPECT_FALSE(e.shortcut);
    EXPECT_EQ(e.walks_used, walk_count(350, 0.5, 0.1));
    EXPECT_NEAR(e.value, fr.estimate(1), 1e-12);
  }
}

TEST(FastPpr, UnreachableTargetGivesZero) {
  const Graph g = Graph::from_edges(2, {{0, 0}, {1, 1}});
  EXPECT_EQ(fast_ppr(g, 0, 1, params(0.1)).value, 0.0);
  EXPECT_EQ(fast_ppr(g, 0, 1, params(0.01, 0.05)).value, 0.0);
}

TEST(FastPpr, RejectsBadNodes) {
  const Graph g = fixtures::two_cycle();
  EXPECT_THROW(fast_ppr(g, 0, 5, params(0.1)), std::invalid_argument);
  EXPECT_THROW(monte_carlo(g, 9, 0, 0.1, 35, 0.2, 1), std::invalid_argument);
}

TEST(FastPpr, SeedDeterminismAndThreadIndependence) {
  const Graph g = power_law_digraph(3000, 8.0, 2.5, 2);
  auto p = params(4.0 / 3000, std::nullopt, 99);
  const auto a = fast_ppr(g, 5, 17, p);
  const auto b = fast_ppr(g, 5, 17, p);
  p.threads = 4;
  const auto c = fast_ppr(g, 5, 17, p);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.value, c.value);
  EXPECT_EQ(a.walks_used, c.walks_used);
  EXPECT_EQ(a.frontier_pushes, c.frontier_pushes);
}

TEST(FastPpr, ValueBoundedByLargestFrontierEstimate) {
  const Graph g = power_law_digraph(2000, 8.0, 2.5, 3);
  const auto p = params(4.0 / 2000);
  const double eps_r = p.resolved_eps_r(g);
  for (NodeId s = 0; s < 20; ++s) {
    const auto e = fast_ppr(g, s, 100, p);
    if (!e.shortcut) EXPECT_LE(e.value, eps_r * (1.0 + p.beta));
  }
}

TEST(FastPpr, AccuracyEnvelopeOnSmallGraph) {
  const Graph g = power_law_digraph(500, 6.0, 2.5, 4);
  const double delta = 4.0 / 500;
  int good = 0, total = 0;
  for (NodeId t = 0; t < 10; ++t) {
    const PprVector truth = power_iteration_inverse_ppr(g, t, 0.2, 1e-10);
    for (NodeId s = 10; s < 40; ++s) {
      const double pi = truth.values[s];
      if (pi <= delta) continue;
      const auto e = fast_ppr(g, s, t, params(delta, std::nullopt, s * 31 + t));
      good += std::abs(e.value - pi) <= std::max(delta, pi) / 4;
      ++total;
    }
  }
  ASSERT_GT(total, 0);
  EXPECT_GE(good, total * 95 / 100);
}

TEST(BalancedFastPpr, AgreesWithFastPprOnTwoCycle) {
  // Both land within their own frontier error plus the walk envelope.
  const Graph g = fixtures::two_cycle();
  const double truth = fixtures::two_cycle_ppr(1, 0);
  const double envelope = std::max(0.1, truth) / 4;
  const auto fixed = fast_ppr(g, 1, 0, params(0.1));
  EXPECT_NEAR(fixed.value, truth, 1.0 / 6.0 * fixed.eps_r + envelope);
  for (double t_walk : {1e-30, 1e-7, 1e6}) {
    const auto e = balanced_fast_ppr(g, 1, 0, params(0.1), t_walk);
    EXPECT_NEAR(e.value, truth, 1.0 / 6.0 * e.eps_r + envelope) << t_walk;
  }
  const auto calibrated = balanced_fast_ppr(g, 1, 0, params(0.1));
  EXPECT_NEAR(calibrated.value, truth, 1.0 / 6.0 * calibrated.eps_r + envelope);
}

TEST(BalancedFastPpr, ForwardAndReverseTimesComparable) {
  const Graph g = power_law_digraph(10'000, 10.0, 2.5, 12);
  const auto p = params(4.0 / 10'000);
  double forward = 0.0, reverse = 0.0;
  for (NodeId t = 0; t < 50; ++t) {
    const auto e = balanced_fast_ppr(g, (t * 7919) % 10'000, t, p);
    forward += std::chrono::duration<double>(e.forward_time).count();
    reverse += std::chrono::duration<double>(e.reverse_time).count();
  }
  EXPECT_GE(forward / reverse, 0.25);
  EXPECT_LE(forward / reverse, 4.0);
}

TEST(TheoreticalFastPpr, ShortcutWhenSourceInTargetSet) {
  const Graph g = fixtures::two_cycle();
  const auto e = theoretical_fast_ppr(g, 1, 0, 0.1, TheoreticalParams{}, 0.2, 0.3, 1);
  EXPECT_TRUE(e.shortcut);
  EXPECT_EQ(e.walks_used, 0u);
  EXPECT_NEAR(e.value, fixtures::two_cycle_ppr(1, 0), 0.05);
}

TEST(TheoreticalFastPpr, DirectEdgeConcentratesOnTargetScore) {
  // s=0 -> t=1, t self-looped; eps_r = 1 keeps s out of the target set.
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const TheoreticalParams tp{0.5, 0.1};
  const auto fr = frontier_push(g, 1, 1.0, derive(tp, 0.1, 1.0, 0.2).beta, 0.2);
  ASSERT_FALSE(fr.in_target_set(0));
  const auto e = theoretical_fast_ppr(g, 0, 1, 0.1, tp, 0.2, 1.0, 3);
  EXPECT_FALSE(e.shortcut);
  // Each walk scores est(t) iff L >= 1.
  const double expected = 0.8 * fr.estimate(1);
  const double se = fr.estimate(1) * std::sqrt(0.16 / static_cast<double>(e.walks_used));
  EXPECT_NEAR(e.value, expected, 4 * se);
  EXPECT_NEAR(e.value, 0.8, 0.5 * 0.8);
}

TEST(TheoreticalFastPpr, RelativeErrorFrequency) {
  const Graph g = random_digraph(50, 200, 7);
  const double delta = 0.02;
  const PprVector truth = power_iteration_inverse_ppr(g, 0, 0.2, 1e-12);
  NodeId s = kNoNode;
  for (NodeId u = 1; u < 50; ++u) {
    if (truth.values[u] > delta && (s == kNoNode || truth.values[u] < truth.values[s])) s = u;
  }
  ASSERT_NE(s, kNoNode);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = theoretical_fast_ppr(g, s, 0, delta, TheoreticalParams{}, 0.2, 0.05, seed);
    good += std::abs(e.value - truth.values[s]) <= 0.5 * truth.values[s];
  }
  EXPECT_GE(good, 17);
}

TEST(MonteCarlo, SelfLoopIsExact) {
  const Graph g = fixtures::self_loop();
  EXPECT_EQ(monte_carlo(g, 0, 0, 0.1, 35, 0.2, 1).value, 1.0);
}

TEST(MonteCarlo, TwoCycleMean) {
  const Graph g = fixtures::two_cycle();
  const auto e = monte_carlo(g, 0, 0, 0.1, 10'000, 0.2, 5);
  EXPECT_EQ(e.walks_used, 100'000u);
  const double p = 1.0 / 1.8;
  EXPECT_NEAR(e.value, p, 3 * std::sqrt(p * (1 - p) / 1e5));
}

TEST(MonteCarlo, TwoWalksAreDiscrete) {
  const Graph g = fixtures::two_cycle();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = monte_carlo(g, 0, 0, 0.5, 1, 0.2, seed);
    EXPECT_EQ(e.walks_used, 2u);
    EXPECT_TRUE(e.value == 0.0 || e.value == 0.5 || e.value == 1.0);
  }
}

TEST(MonteCarlo, UnbiasedOnSmallGraphPairs) {
  const Graph g = random_digraph(30, 120, 8);
  for (NodeId pair = 0; pair < 10; ++pair) {
    const NodeId s = pair, t = (pair * 7 + 3) % 30;
    const double pi = power_iteration_ppr(g, s, 0.2, 1e-12).values[t];
    const auto e = monte_carlo(g, s, t, 0.01, 500, 0.2, pair, 2);
    const double k = static_cast<double>(e.walks_used);
    EXPECT_NEAR(e.value, pi, 3 * std::sqrt(pi * (1 - pi) / k) + 1e-12) << s << "," << t;
  }
}

TEST(LocalUpdate, TwoCycle) {
  const Graph g = fixtures::two_cycle();
  EXPECT_NEAR(local_update(g, 0, 0, 0.1, 0.2).value, fixtures::two_cycle_ppr(0, 0), 0.05);
  EXPECT_NEAR(local_update(g, 1, 0, 0.1, 0.2).value, fixtures::two_cycle_ppr(1, 0), 0.05);
}

TEST(LocalUpdate, Unreachable) {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {2, 2}});
  EXPECT_EQ(local_update(g, 2, 0, 0.01, 0.2).value, 0.0);
}

TEST(LocalUpdate, Triangle) {
  const Graph g = fixtures::triangle();
  const double cycle = 1.0 - std::pow(0.8, 3);
  // From 1 the walk needs two steps to reach 0, from 2 only one.
  EXPECT_NEAR(local_update(g, 1, 0, 0.01, 0.2).value, 0.2 * 0.64 / cycle, 0.005);
  EXPECT_NEAR(local_update(g, 2, 0, 0.01, 0.2).value, 0.2 * 0.8 / cycle, 0.005);
}

TEST(DetectHigh, ThresholdRule) {
  Estimate e;
  e.value = 0.9 * 0.01;
  EXPECT_EQ(detect_high(e, 0.01), Decision::kAccept);
  e.value = 0.5 * 0.01;
  EXPECT_EQ(detect_high(e, 0.01), Decision::kReject);
  e.value = 0.75 * 0.01;
  EXPECT_EQ(detect_high(e, 0.01), Decision::kReject);
}
