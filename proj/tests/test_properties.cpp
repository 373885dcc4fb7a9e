#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"
#include "entcap/network_json.hpp"
#include "entcap/tensor_network.hpp"
#include "entcap/transforms.hpp"

#include <gtest/gtest.h>

using namespace entcap;

// 200 random networks, at most 6 vertices, dimensions at most 4.
class RandomNetworks : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  Network net = random_network(GetParam());
};

TEST_P(RandomNetworks, RankBelowMinCut) {
  const Cut cut = min_cut(net);
  const auto est = estimate_r1(net, PrimeField(), {3, GetParam(), 1});
  EXPECT_LE(BigInt(est.r1_lower), cut.value);
  EXPECT_EQ(est.mc_upper, cut.value);
}

TEST_P(RandomNetworks, MinCutOfSquareIsSquare) {
  const BigInt mc = min_cut(net).value;
  EXPECT_EQ(min_cut(tensor_power(net, 2)).value, mc * mc);
  EXPECT_EQ(min_cut(tensor_power(net, 3)).value, mc * mc * mc);
}

TEST_P(RandomNetworks, WitnessCutRecomputes) {
  const Cut cut = min_cut(net);
  std::vector<EdgeId> crossing;
  EXPECT_EQ(cut_value(net, cut.s_side, &crossing), cut.value);
  EXPECT_EQ(crossing, cut.crossing);
  EXPECT_TRUE(std::is_sorted(cut.s_side.begin(), cut.s_side.end()));
  for (const auto& s : net.sources) EXPECT_TRUE(std::count(cut.s_side.begin(), cut.s_side.end(), s));
  for (const auto& t : net.sinks) EXPECT_FALSE(std::count(cut.s_side.begin(), cut.s_side.end(), t));
}

TEST_P(RandomNetworks, CodingWitnessesAreValid) {
  const Network dag = random_acyclic_orientation(net, GetParam());
  ASSERT_TRUE(is_acyclic(dag));
  const BigInt directed = min_cut(dag).value;
  EXPECT_LE(directed, min_cut(net).value);
  // Climb l until the first non-witness; an undecided l just stops the climb.
  for (std::size_t l = 1; BigInt(l) <= directed; ++l) {
    SearchConfig cfg;
    cfg.l = l;
    cfg.node_budget = 1'000'000;
    const SearchResult r = exhaustive_achievable(dag, cfg);
    if (r.status != SearchStatus::Witness) break;
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->l, l);
    EXPECT_TRUE(is_valid(dag, *r.witness)) << "l=" << l;
  }
}

TEST_P(RandomNetworks, JsonRoundTrip) {
  const std::string text = dump_network(net);
  EXPECT_EQ(parse_network(text), net);
  const Network dag = random_acyclic_orientation(net, GetParam());
  EXPECT_EQ(dump_network(parse_network(dump_network(dag))), dump_network(dag));
}

TEST_P(RandomNetworks, ShadowIgnoresOrientation) {
  const Network dag = random_acyclic_orientation(net, GetParam() * 7 + 1);
  EXPECT_EQ(min_cut(undirected_shadow(dag)).value, min_cut(net).value);
  EXPECT_LE(min_cut(dag).value, min_cut(net).value);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNetworks, ::testing::Range<std::uint64_t>(0, 200));

TEST(SplitProperty, UnsplitInvertsSplitOnRandomDiamonds) {
  std::uint64_t state = 99;
  for (int i = 0; i < 100; ++i) {
    DiamondDims d;
    for (auto& x : d) {
      state = splitmix64(state);
      x = 1 + state % 4;
    }
    state = splitmix64(state);
    const Dim a = 1 + state % 3, b = 1 + (state >> 8) % 3;
    d[4] = a * b;
    const Network net = relay_diamond(d);
    const Network s = split_cycle_edge(net, {"e5", a, b});
    EXPECT_TRUE(is_acyclic(s));
    EXPECT_EQ(unsplit(s, {"e5", a, b}), undirected_shadow(net));
    EXPECT_EQ(min_cut(undirected_shadow(s)).value, min_cut(net).value);
  }
}
