#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fastppr/frontier_store.hpp"
#include "fastppr/generators.hpp"
#include "fixtures.hpp"

using namespace fastppr;

namespace {

constexpr double kBeta = 1.0 / 6.0;

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fastppr_store_" + name);
}

}  // namespace

TEST(FrontierStore, TwoCycleEntryCounts) {
  const Graph g = fixtures::two_cycle();
  const auto small = precompute_frontiers(g, 0.3, kBeta, 0.2);
  EXPECT_EQ(small.frontier_entries(), 0u);
  EXPECT_EQ(small.total_entries(), 4u);
  const auto large = precompute_frontiers(g, 0.5, kBeta, 0.2);
  EXPECT_EQ(large.frontier_entries(), 2u);
  EXPECT_LE(large.frontier_entries(), g.edge_count() / 0.5);
}

TEST(FrontierStore, EntryBoundOnSkewedGraph) {
  const Graph g = power_law_digraph(3000, 8.0, 2.5, 1);
  for (double eps_r : {0.05, 0.01}) {
    const auto store = precompute_frontiers(g, eps_r, kBeta, 0.2, 2);
    EXPECT_LE(static_cast<double>(store.frontier_entries()), g.edge_count() / eps_r);
    ASSERT_EQ(store.records.size(), g.node_count());
    EXPECT_EQ(store.record(77), make_record(frontier_push(g, 77, eps_r, kBeta, 0.2)));
  }
}

TEST(FrontierStore, RoundTripIsBitExact) {
  const Graph g = random_digraph(400, 2000, 2);
  const auto path = temp_path("rt.bin");
  const auto store = precompute_frontiers(g, 0.02, kBeta, 0.2, path);
  const auto back = load_store(path, g);
  EXPECT_EQ(back, store);
  save_store(temp_path("rt2.bin"), back);
  std::ifstream a(path, std::ios::binary), b(temp_path("rt2.bin"), std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(sa, sb);
  std::filesystem::remove(path);
  std::filesystem::remove(temp_path("rt2.bin"));
}

TEST(FrontierStore, RejectsForeignOrDamagedFiles) {
  const Graph g = random_digraph(100, 400, 3);
  const auto path = temp_path("bad.bin");
  precompute_frontiers(g, 0.05, kBeta, 0.2, path);
  EXPECT_THROW(load_store(path, random_digraph(100, 400, 4)), StoreError);

  const auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size - 5);
  EXPECT_THROW(load_store(path, g), StoreError);

  { std::ofstream(path) << "not a store"; }
  EXPECT_THROW(load_store(path, g), StoreError);
  EXPECT_THROW(load_store(temp_path("missing.bin"), g), StoreError);
  std::filesystem::remove(path);
}

TEST(FrontierStore, QueryMatchesFastPprPerSeed) {
  const Graph g = power_law_digraph(2000, 8.0, 2.5, 5);
  const double eps_r = 0.05;
  const auto store = precompute_frontiers(g, eps_r, kBeta, 0.2);
  QueryParams p;
  p.delta = 4.0 / 2000;
  p.eps_r = eps_r;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    const NodeId s = static_cast<NodeId>(seed * 101 % 2000), t = static_cast<NodeId>(seed * 37 % 2000);
    const auto stored = query_with_store(store, g, s, t, p);
    const auto live = fast_ppr(g, s, t, p);
    EXPECT_EQ(stored.value, live.value);
    EXPECT_EQ(stored.walks_used, live.walks_used);
    EXPECT_EQ(stored.algorithm, Algorithm::kStoredFastPpr);
    EXPECT_LT(std::chrono::duration<double>(stored.reverse_time).count(), 1e-3);
  }
}

TEST(FrontierStore, MissingRecordOrMismatchedParameters) {
  const Graph g = fixtures::triangle();
  auto store = precompute_frontiers(g, 0.3, kBeta, 0.2);
  QueryParams p;
  p.delta = 0.1;
  store.records.pop_back();
  EXPECT_THROW(query_with_store(store, g, 0, 2, p), StoreError);
  EXPECT_NO_THROW(query_with_store(store, g, 0, 1, p));
  p.eps_r = 0.4;
  EXPECT_THROW(query_with_store(store, g, 0, 1, p), StoreError);
  p.eps_r.reset();
  p.beta = 0.2;
  EXPECT_THROW(query_with_store(store, g, 0, 1, p), StoreError);
  p.beta = kBeta;
  EXPECT_THROW(query_with_store(store, fixtures::two_cycle(), 0, 1, p), StoreError);
}
