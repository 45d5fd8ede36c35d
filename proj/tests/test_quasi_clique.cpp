#include <gtest/gtest.h>

#include "support.hpp"

using namespace scpm;
using scpm::testing::brute_force_maximal;
using scpm::testing::ids;

namespace {

GraphView toy_view_of(const AttributedGraph& g, const char* token) {
  auto index = build_index(g);
  return induced_view(g, index.posting(*g.dictionary().find(token)));
}

std::vector<std::vector<std::uint64_t>> as_external(const AttributedGraph& g,
                                                    const std::vector<QuasiClique>& qs) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& q : qs) out.push_back(scpm::testing::external(g, q.vertices));
  return out;
}

AttributedGraph star(int leaves) {
  GraphBuilder b;
  for (int v = 1; v <= leaves; ++v) b.add_edge(0, v);
  return b.build();
}

AttributedGraph complete(int n) {
  GraphBuilder b;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
  return b.build();
}

}  // namespace

TEST(Density, ExactCeilings) {
  EXPECT_EQ(Density::from_double(0.6), Density(3, 5));
  EXPECT_EQ(Density(3, 5).ceil_times(5), 3u);   // 0.6 * 5 is exactly 3
  EXPECT_EQ(Density(3, 5).ceil_times(11), 7u);  // 6.6
  EXPECT_EQ(Density(1, 2).ceil_times(3), 2u);
  EXPECT_EQ(QuasiCliqueParams(0.6, 4).member_degree_floor(), 2u);
  EXPECT_EQ(QuasiCliqueParams(1.0, 4).member_degree_floor(), 3u);
  EXPECT_THROW(QuasiCliqueParams(0.0, 4), std::invalid_argument);
  EXPECT_THROW(QuasiCliqueParams(1.2, 4), std::invalid_argument);
  EXPECT_THROW(QuasiCliqueParams(0.5, 1), std::invalid_argument);
}

TEST(IsGammaDense, ToyClique) {
  auto g = scpm::testing::load_toy();
  auto view = toy_view_of(g, "A");
  QuasiCliqueParams params(0.6, 4);
  const auto q = ids(g, {3, 4, 5, 6});
  EXPECT_TRUE(is_gamma_dense(view, q, params));
  EXPECT_DOUBLE_EQ(describe(view, q).density(), 1.0);
  EXPECT_FALSE(is_gamma_dense(view, ids(g, {3, 4, 5}), params));
}

TEST(IsGammaDense, MatchesDegreeRecount) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = scpm::testing::random_graph({15, 0.4, 0, 0}, rng);
    auto view = full_view(g);
    VertexSet q;
    std::bernoulli_distribution take(0.4);
    for (VertexId v = 0; v < 15; ++v)
      if (take(rng)) q.push_back(v);
    const double gamma = trial % 3 == 0 ? 0.5 : trial % 3 == 1 ? 0.6 : 1.0;
    QuasiCliqueParams params(gamma, 3);
    bool oracle = q.size() >= 3;
    for (auto v : q) {
      std::size_t d = 0;
      for (auto u : q) d += g.has_edge(u, v);
      if (static_cast<double>(d) < std::ceil(gamma * static_cast<double>(q.size() - 1) - 1e-9)) oracle = false;
    }
    EXPECT_EQ(is_gamma_dense(view, q, params), oracle);
  }
}

TEST(VertexPrune, CompleteGraphUnchanged) {
  auto g = complete(6);
  EXPECT_EQ(vertex_prune(full_view(g), QuasiCliqueParams(0.5, 4)).size(), 6u);
}

TEST(VertexPrune, StarCollapses) {
  auto g = star(5);
  EXPECT_TRUE(vertex_prune(full_view(g), QuasiCliqueParams(0.5, 4)).empty());
}

TEST(VertexPrune, KeepsEveryCoveredVertex) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = scpm::testing::random_graph({14, 0.3, 0, 0}, rng);
    QuasiCliqueParams params(trial % 2 ? 0.5 : 0.6, 3 + trial % 2);
    auto view = full_view(g);
    auto pruned = vertex_prune(view, params);
    auto covered = scpm::testing::union_of(brute_force_maximal(view, params.gamma.value(), params.min_size));
    auto kept = pruned.members();
    EXPECT_TRUE(std::includes(kept.begin(), kept.end(), covered.begin(), covered.end()));
  }
}

TEST(EnumerateMaximal, ToyAttributeA) {
  auto g = scpm::testing::load_toy();
  auto view = toy_view_of(g, "A");
  QuasiCliqueParams params(0.6, 4);
  for (auto strategy : {SearchStrategy::depth_first, SearchStrategy::breadth_first}) {
    auto found = enumerate_maximal(view, params, strategy);
    EXPECT_EQ(as_external(g, found), (std::vector<std::vector<std::uint64_t>>{
                                         {6, 7, 8, 9, 10, 11},
                                         {3, 4, 5, 6},
                                         {3, 4, 6, 7},
                                         {3, 5, 6, 7},
                                         {3, 6, 7, 8},
                                     }));
    ASSERT_EQ(found.size(), 5u);
    EXPECT_NEAR(found[0].density(), 0.6, 1e-12);
    EXPECT_DOUBLE_EQ(found[1].density(), 1.0);
    for (std::size_t i = 2; i < 5; ++i) EXPECT_NEAR(found[i].density(), 2.0 / 3.0, 1e-12);
  }
}

TEST(EnumerateMaximal, TooSmallView) {
  auto g = complete(3);
  EXPECT_TRUE(enumerate_maximal(full_view(g), QuasiCliqueParams(0.5, 4), SearchStrategy::depth_first).empty());
}

TEST(EnumerateMaximal, ExhaustiveSixVertexGraphs) {
  // Every labelled graph on 6 vertices; the 7-vertex sweep runs in the acceptance binary.
  const std::size_t n = 6, pairs = n * (n - 1) / 2;
  std::size_t mismatches = 0;
  for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
    auto g = scpm::testing::graph_from_mask(n, mask);
    auto view = full_view(g);
    for (double gamma : {0.5, 0.6, 1.0})
      for (std::size_t min_size : {3, 4}) {
        auto expected = brute_force_maximal(view, gamma, min_size);
        auto actual = enumerate_maximal(view, QuasiCliqueParams(gamma, min_size),
                                        mask % 2 ? SearchStrategy::depth_first : SearchStrategy::breadth_first);
        if (actual != expected) ++mismatches;
      }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(EnumerateMaximal, RandomLargerViews) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 10 + trial % 8;
    auto g = scpm::testing::random_graph({n, trial % 2 ? 0.3 : 0.5, 0, 0}, rng);
    const double gamma = trial % 3 == 0 ? 0.5 : trial % 3 == 1 ? 0.7 : 1.0;
    const std::size_t min_size = 3 + trial % 3;
    auto view = full_view(g);
    auto expected = brute_force_maximal(view, gamma, min_size);
    for (auto strategy : {SearchStrategy::depth_first, SearchStrategy::breadth_first})
      EXPECT_EQ(enumerate_maximal(view, QuasiCliqueParams(gamma, min_size), strategy), expected)
          << "trial " << trial;
  }
}

TEST(EnumerateMaximal, OverflowAtCeiling) {
  std::mt19937_64 rng(47);
  auto g = scpm::testing::random_graph({25, 0.5, 0, 0}, rng);
  SearchOptions options;
  options.max_candidates = 3;
  EXPECT_THROW(enumerate_maximal(full_view(g), QuasiCliqueParams(0.5, 3), SearchStrategy::depth_first, options),
               EngineOverflow);
}

TEST(CoveredVertices, ToyAttributeA) {
  auto g = scpm::testing::load_toy();
  auto view = toy_view_of(g, "A");
  for (auto strategy : {SearchStrategy::depth_first, SearchStrategy::breadth_first})
    EXPECT_EQ(scpm::testing::external(g, covered_vertices(view, QuasiCliqueParams(0.6, 4), strategy)),
              (std::vector<std::uint64_t>{3, 4, 5, 6, 7, 8, 9, 10, 11}));
}

TEST(CoveredVertices, CompleteGraph) {
  auto g = complete(7);
  EXPECT_EQ(covered_vertices(full_view(g), QuasiCliqueParams(0.9, 5), SearchStrategy::breadth_first).size(), 7u);
}

TEST(CoveredVertices, MatchesUnionOfMaximal) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8 + trial % 12;
    auto g = scpm::testing::random_graph({n, 0.2 + 0.05 * (trial % 6), 0, 0}, rng);
    const double gamma = trial % 3 == 0 ? 0.5 : trial % 3 == 1 ? 0.6 : 1.0;
    QuasiCliqueParams params(gamma, 3 + trial % 2);
    auto view = full_view(g);
    auto expected = scpm::testing::union_of(enumerate_maximal(view, params, SearchStrategy::depth_first));
    for (auto strategy : {SearchStrategy::depth_first, SearchStrategy::breadth_first})
      EXPECT_EQ(covered_vertices(view, params, strategy), expected) << "trial " << trial;
  }
}

TEST(CoveredVertices, CoveragePruningVisitsFewerCandidates) {
  std::mt19937_64 rng(45);
  std::uint64_t cover = 0, full = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = scpm::testing::random_graph({20, 0.35, 0, 0}, rng);
    SearchOptions a, b;
    a.candidate_counter = &cover;
    b.candidate_counter = &full;
    covered_vertices(full_view(g), QuasiCliqueParams(0.5, 4), SearchStrategy::depth_first, a);
    enumerate_maximal(full_view(g), QuasiCliqueParams(0.5, 4), SearchStrategy::depth_first, b);
  }
  EXPECT_LT(cover, full);
}

TEST(TopK, ToyBestPattern) {
  auto g = scpm::testing::load_toy();
  auto top = top_k_patterns(toy_view_of(g, "A"), QuasiCliqueParams(0.6, 4), 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(scpm::testing::external(g, top[0].vertices), (std::vector<std::uint64_t>{6, 7, 8, 9, 10, 11}));
  EXPECT_EQ(format_density(top[0].density()), "0.60");
}

TEST(TopK, LargeKIsFullEnumeration) {
  auto g = scpm::testing::load_toy();
  auto view = toy_view_of(g, "A");
  QuasiCliqueParams params(0.6, 4);
  EXPECT_EQ(top_k_patterns(view, params, 50), enumerate_maximal(view, params, SearchStrategy::depth_first));
  EXPECT_THROW(top_k_patterns(view, params, 0), std::invalid_argument);
}

TEST(TopK, PrefixOfSortedEnumeration) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 10 + trial % 10;
    auto g = scpm::testing::random_graph({n, 0.25 + 0.05 * (trial % 5), 0, 0}, rng);
    QuasiCliqueParams params(trial % 2 ? 0.5 : 0.75, 3 + trial % 2);
    auto view = full_view(g);
    auto all = enumerate_maximal(view, params, SearchStrategy::breadth_first);
    for (std::size_t k : {1, 2, 5}) {
      std::vector<QuasiClique> expected(all.begin(), all.begin() + std::min(k, all.size()));
      EXPECT_EQ(top_k_patterns(view, params, k), expected) << "trial " << trial << " k " << k;
    }
  }
}
