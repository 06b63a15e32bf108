#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fastppr/generators.hpp"
#include "fastppr/oracle.hpp"
#include "fastppr/walks.hpp"
#include "fixtures.hpp"

using namespace fastppr;

TEST(Rng, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a());
    xb.push_back(b());
    xc.push_back(c());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
  EXPECT_NE(mix_seed(1, 2), mix_seed(1, 3));
}

TEST(SampleGeometric, LawAtAlphaPointTwo) {
  RngStream rng(1, 0);
  constexpr int kDraws = 1'000'000;
  int zeros = 0;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto l = sample_geometric(0.2, rng);
    zeros += l == 0;
    sum += l;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / kDraws, 0.2, 0.002);
  EXPECT_NEAR(sum / kDraws, 4.0, 0.02);
}

TEST(SampleGeometric, AlphaNearOneIsAlmostAlwaysZero) {
  RngStream rng(2, 0);
  int nonzero = 0;
  for (int i = 0; i < 100'000; ++i) nonzero += sample_geometric(0.999999, rng) != 0;
  EXPECT_LE(nonzero, 2);
}

TEST(WalkFirstHit, SourceInStopSetHitsAtPositionZero) {
  const Graph g = fixtures::two_cycle();
  RngStream rng(3, 0);
  const NodeMask stop(2, std::vector<NodeId>{1});
  for (std::uint32_t len : {0u, 1u, 50u}) {
    const auto w = walk_first_hit(g, 1, len, stop, rng);
    EXPECT_EQ(w.hit, 1u);
    EXPECT_EQ(w.steps_taken, 0u);
  }
}

TEST(WalkFirstHit, EmptyStopSetNeverHits) {
  const Graph g = fixtures::triangle();
  RngStream rng(4, 0);
  const NodeMask none(3);
  const auto w = walk_first_hit(g, 0, 17, none, rng);
  EXPECT_FALSE(w.hit_stop_set());
  EXPECT_EQ(w.steps_taken, 17u);
  EXPECT_EQ(w.length, 17u);
}

TEST(WalkFirstHit, TwoCycleHitProbability) {
  const Graph g = fixtures::two_cycle();
  const NodeMask stop(2, std::vector<NodeId>{0});
  RngStream rng(5, 0);
  int hits = 0;
  constexpr int kWalks = 100'000;
  for (int i = 0; i < kWalks; ++i) {
    const auto w = walk_first_hit(g, 1, sample_geometric(0.2, rng), stop, rng);
    if (w.hit_stop_set()) {
      EXPECT_EQ(w.hit, 0u);
      EXPECT_LE(w.steps_taken, w.length);
      ++hits;
    }
  }
  EXPECT_NEAR(static_cast<double>(hits) / kWalks, 0.8, 0.01);
}

TEST(TargetAvoiding, ZeroLengthScoresZero) {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const NodeMask targets(3, std::vector<NodeId>{2});
  const std::vector<double> values{0.0, 0.0, 1.0};
  TargetAvoidingScorer scorer(g, targets, values);
  RngStream rng(6, 0);
  EXPECT_EQ(scorer.walk(0, 0, 100, 0.0, rng).score, 0.0);
}

TEST(TargetAvoiding, ChainCollectsTheTargetValueOnce) {
  // s=0 -> u=1 -> t=2, t closed with a self-loop.
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const NodeMask targets(3, std::vector<NodeId>{2});
  const std::vector<double> values{0.0, 0.0, 0.9};
  TargetAvoidingScorer scorer(g, targets, values);
  EXPECT_DOUBLE_EQ(scorer.pass_probability(1), 0.0);
  EXPECT_DOUBLE_EQ(scorer.score(1), 0.9);
  EXPECT_DOUBLE_EQ(scorer.pass_probability(0), 1.0);
  EXPECT_DOUBLE_EQ(scorer.score(0), 0.0);
  RngStream rng(7, 0);
  // The term for u is collected at position 1, which needs L >= 2.
  EXPECT_DOUBLE_EQ(scorer.walk(0, 1, 100, 0.0, rng).score, 0.0);
  for (std::uint32_t len : {2u, 3u, 40u}) {
    EXPECT_DOUBLE_EQ(scorer.walk(0, len, 100, 0.0, rng).score, 0.9);
  }
}

TEST(TargetAvoiding, DirectEdgeMatchesHandEvaluation) {
  // s=0 -> t=1 with t self-looped; pi_s(t) = 1 - alpha.
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const NodeMask targets(2, std::vector<NodeId>{1});
  const std::vector<double> values{0.0, 1.0};
  TargetAvoidingScorer scorer(g, targets, values);
  RngStream rng(8, 0);
  double sum = 0.0;
  constexpr int kWalks = 200'000;
  for (int i = 0; i < kWalks; ++i) sum += scorer.walk(0, sample_geometric(0.2, rng), 1000, 0.0, rng).score;
  EXPECT_NEAR(sum / kWalks, 0.8, 0.005);
}

TEST(TargetAvoiding, RejectsStepsIntoTheTargetSet) {
  // 0 -> {1, 2}, 2 -> 0, target {1}. Avoiding walks alternate 0, 2, 0, ...
  // and the score is deterministic; landing on 1 would change it.
  const Graph g = Graph::from_edges(3, {{0, 1}, {0, 2}, {2, 0}});
  const NodeMask targets(3, std::vector<NodeId>{1});
  const std::vector<double> values{0.0, 0.4, 0.0};
  TargetAvoidingScorer scorer(g, targets, values);
  RngStream rng(10, 0);
  std::uint64_t rejections = 0;
  const double expected = 0.4 * (1.0 - std::pow(0.5, 30));
  for (int i = 0; i < 200; ++i) {
    const auto w = scorer.walk(0, 60, 60, 0.0, rng);
    EXPECT_NEAR(w.score, expected, 1e-12);
    rejections += w.rejections;
  }
  EXPECT_GT(rejections, 0u);
}

TEST(TargetAvoiding, MeanMatchesOracleOnSmallGraph) {
  const Graph g = random_digraph(20, 70, 12);
  const NodeId t = 0;
  const double alpha = 0.2;
  const PprVector inv = power_iteration_inverse_ppr(g, t, alpha, 1e-12);
  const NodeMask targets(20, std::vector<NodeId>{t});
  std::vector<double> values(20, 0.0);
  values[t] = inv.values[t];
  TargetAvoidingScorer scorer(g, targets, values);
  for (NodeId s : {1u, 5u, 9u}) {
    RngStream rng(13, s);
    constexpr int kWalks = 100'000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < kWalks; ++i) {
      const double x = scorer.walk(s, sample_geometric(alpha, rng), 10'000, 0.0, rng).score;
      sum += x;
      sq += x * x;
    }
    const double mean = sum / kWalks;
    const double se = std::sqrt((sq / kWalks - mean * mean) / kWalks);
    EXPECT_LE(std::abs(mean - inv.values[s]), 3.0 * se + 1e-12) << "s=" << s;
  }
}

TEST(TargetAvoiding, StopsAfterLowPassNode) {
  // 0 -> {1, 2}; 1 is the target, so pass(0) = 1/2 < min_pass = 0.9.
  const Graph g = Graph::from_edges(3, {{0, 1}, {0, 2}, {2, 0}});
  const NodeMask targets(3, std::vector<NodeId>{1});
  const std::vector<double> values{0.0, 0.4, 0.0};
  TargetAvoidingScorer scorer(g, targets, values);
  RngStream rng(14, 0);
  const auto w = scorer.walk(0, 100, 100, 0.9, rng);
  EXPECT_DOUBLE_EQ(w.score, 0.2);
  EXPECT_EQ(w.steps_taken, 0u);
}
