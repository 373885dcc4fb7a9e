#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace entcap;

namespace {

// Decides whether an l-symbol protocol exists by trying every node function.
// Works straight off the Network; nothing is shared with coding_graph or the
// search. Returns nullopt when the space exceeds `cap`.
std::optional<bool> brute_achievable(const Network& net, std::size_t l, bool fix_source, std::uint64_t cap) {
  std::vector<const Edge*> edges;
  for (const auto& e : net.edges) {
    if (e.is_self_loop() || net.is_source(e.head()) || net.is_sink(e.tail())) continue;
    edges.push_back(&e);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  auto index_of = [&](const Edge* e) { return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), e) - edges.begin()); };

  struct Node {
    VertexId v;
    std::vector<std::size_t> in, out;
    std::uint64_t rows = 1, syms = 1;
  };
  std::map<VertexId, VertexId> early_of;
  for (const auto& sp : net.stages) early_of[sp.late] = sp.early;
  std::vector<std::size_t> src_out, sink_in;
  std::map<VertexId, Node> by_vertex;
  for (const auto& v : net.internal_vertices()) by_vertex[v].v = v;
  for (const Edge* e : edges) {
    const std::size_t i = index_of(e);
    if (net.is_source(e->tail())) src_out.push_back(i);
    else by_vertex[e->tail()].out.push_back(i);
    if (net.is_sink(e->head())) sink_in.push_back(i);
    else by_vertex[e->head()].in.push_back(i);
  }
  for (auto& [v, n] : by_vertex) {
    if (early_of.count(v)) {
      const auto& extra = by_vertex[early_of[v]].in;
      n.in.insert(n.in.end(), extra.begin(), extra.end());
    }
  }
  // Evaluation order: a node is ready once all its input edges are set.
  std::vector<Node> order;
  std::set<std::size_t> known(src_out.begin(), src_out.end());
  while (order.size() < by_vertex.size()) {
    bool progress = false;
    for (auto& [v, n] : by_vertex) {
      if (std::any_of(order.begin(), order.end(), [&](const Node& o) { return o.v == v; })) continue;
      if (!std::all_of(n.in.begin(), n.in.end(), [&](std::size_t i) { return known.count(i); })) continue;
      for (auto i : n.in) n.rows *= edges[i]->dim;
      for (auto i : n.out) n.syms *= edges[i]->dim;
      order.push_back(n);
      known.insert(n.out.begin(), n.out.end());
      progress = true;
    }
    if (!progress) throw std::logic_error("oracle: cyclic network");
  }

  std::uint64_t src_syms = 1;
  for (auto i : src_out) src_syms *= edges[i]->dim;
  const bool fixed = fix_source && src_syms == l;
  // Digits: source encoder (unless fixed) then every table row.
  std::vector<std::uint64_t> radix;
  if (!fixed) radix.assign(l, src_syms);
  for (const auto& n : order) radix.insert(radix.end(), n.rows, n.syms);
  double space = 1;
  for (auto r : radix) space *= static_cast<double>(r);
  if (space > static_cast<double>(cap)) return std::nullopt;
  if (src_syms < l) return false;

  std::vector<std::uint64_t> digit(radix.size(), 0), val(edges.size());
  while (true) {
    std::set<std::vector<std::uint64_t>> seen;
    bool ok = true;
    for (std::size_t m = 0; m < l && ok; ++m) {
      std::uint64_t code = fixed ? m : digit[m];
      for (std::size_t k = src_out.size(); k-- > 0;) {
        val[src_out[k]] = code % edges[src_out[k]]->dim;
        code /= edges[src_out[k]]->dim;
      }
      std::size_t base = fixed ? 0 : l;
      for (const auto& n : order) {
        std::uint64_t row = 0;
        for (auto i : n.in) row = row * edges[i]->dim + val[i];
        std::uint64_t out = digit[base + row];
        for (std::size_t k = n.out.size(); k-- > 0;) {
          val[n.out[k]] = out % edges[n.out[k]]->dim;
          out /= edges[n.out[k]]->dim;
        }
        base += n.rows;
      }
      std::vector<std::uint64_t> tuple;
      for (auto i : sink_in) tuple.push_back(val[i]);
      ok = seen.insert(tuple).second;
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == radix[k]) digit[k++] = 0;
    if (k == digit.size()) return false;
  }
}

SearchResult search(const Network& net, std::size_t l, std::uint64_t budget = 1'000'000'000, unsigned threads = 1) {
  SearchConfig cfg;
  cfg.l = l;
  cfg.node_budget = budget;
  cfg.threads = threads;
  return exhaustive_achievable(net, cfg);
}

}  // namespace

TEST(Protocols, SplitRelayCarriesSixSymbols) {
  const Network net = fixture("n4_split_2_2").network;
  const ProtocolTable pt = split_n4_protocol();
  EXPECT_TRUE(is_valid(net, pt));
  std::set<std::vector<std::uint64_t>> outs;
  for (std::size_t m = 0; m < 6; ++m) outs.insert(simulate(net, pt, m));
  EXPECT_EQ(outs.size(), 6u);
}

TEST(Protocols, OrientedRelayCarriesFiveSymbols) {
  const Network net = fixture("n2_up").network;
  const ProtocolTable pt = oriented_n2_protocol();
  EXPECT_TRUE(is_valid(net, pt));
  // (0,2) is flagged over the middle edge and surfaces on e3 as symbol 2.
  EXPECT_EQ(simulate(net, pt, n2_message(0, 2)), (std::vector<std::uint64_t>{2, 0}));
  EXPECT_EQ(simulate(net, pt, n2_message(1, 1)), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_THROW(n2_message(1, 2), InvalidInput);
}

TEST(Protocols, BrokenTableIsInvalid) {
  const Network net = fixture("n2_up").network;
  ProtocolTable pt = oriented_n2_protocol();
  std::fill(pt.nodes.at("n1").begin(), pt.nodes.at("n1").end(), 0);
  EXPECT_FALSE(is_valid(net, pt));
}

TEST(Protocols, JsonRoundTrip) {
  const ProtocolTable pt = split_n4_protocol();
  EXPECT_EQ(protocol_from_json(protocol_to_json(pt)), pt);
  EXPECT_THROW(protocol_from_json(Json::parse(R"({"l": 2})")), InvalidInput);
}

TEST(Protocols, ShapeIsChecked) {
  const Network net = fixture("n2_up").network;
  ProtocolTable pt = oriented_n2_protocol();
  pt.nodes.at("n1").pop_back();
  EXPECT_THROW(simulate(net, pt, 0), ShapeMismatch);
  pt = oriented_n2_protocol();
  pt.source[0][0] = 9;
  EXPECT_THROW(is_valid(net, pt), ShapeMismatch);
  pt = oriented_n2_protocol();
  EXPECT_THROW(simulate(net, pt, 5), InvalidInput);
}

TEST(CodingGraph, RejectsUndirectedAndCyclic) {
  EXPECT_THROW(coding_graph(relay_diamond({2, 3, 3, 2, 2})), InvalidInput);
  Network cyc = relay_diamond_oriented({2, 3, 3, 2, 2}, Middle::Up);
  cyc.edges.push_back({"e6", "n1", "n2", 2, Orientation::UV});
  EXPECT_THROW(coding_graph(cyc), CyclicNetwork);
  SearchConfig cfg;
  cfg.l = 2;
  EXPECT_THROW(exhaustive_achievable(cyc, cfg), CyclicNetwork);
}

TEST(CodingGraph, LateStageReadsEarlyInputs) {
  const CodingGraph g = coding_graph(fixture("n4_split_2_2").network);
  const CodingNode* late = g.find_node("n1.late");
  ASSERT_NE(late, nullptr);
  std::vector<EdgeId> ins;
  for (auto i : late->inputs) ins.push_back(g.edges[i].id);
  EXPECT_EQ(ins, (std::vector<EdgeId>{"e1", "e5.a"}));
}

TEST(CodingGraph, DropsEdgesIntoSourcesAndOutOfSinks) {
  Network net = relay_diamond_oriented({2, 3, 3, 2, 2}, Middle::Up);
  net.edges.push_back({"back", "n1", "s", 7, Orientation::UV});
  net.edges.push_back({"loop", "n1", "n1", 7, Orientation::UV});
  const CodingGraph g = coding_graph(net);
  EXPECT_EQ(g.edges.size(), 5u);
}

TEST(Search, SplitRelayFindsSix) {
  const Network net = fixture("n4_split_2_2").network;
  const SearchResult r = search(net, 6);
  ASSERT_EQ(r.status, SearchStatus::Witness);
  EXPECT_TRUE(r.source_fixed);
  EXPECT_TRUE(is_valid(net, *r.witness));
}

TEST(Search, UpOrientedRelayFiveNotSix) {
  const Network net = fixture("n2_up").network;
  const SearchResult five = search(net, 5);
  ASSERT_EQ(five.status, SearchStatus::Witness);
  EXPECT_TRUE(is_valid(net, *five.witness));
  EXPECT_EQ(search(net, 6).status, SearchStatus::Impossible);
  EXPECT_EQ(brute_achievable(net, 6, true, 10'000'000), false);
  EXPECT_EQ(brute_achievable(net, 5, true, 10'000'000), std::nullopt);  // 6^5 source maps on top
}

TEST(Search, SingleDirectionN4CannotCarrySix) {
  for (const char* name : {"n4_up", "n4_down"}) {
    const Network net = fixture(name).network;
    const SearchResult r = search(net, 6);
    EXPECT_EQ(r.status, SearchStatus::Impossible) << name;
    EXPECT_EQ(brute_achievable(net, 6, true, 4'000'000), false) << name;
  }
  EXPECT_EQ(search_space(coding_graph(fixture("n4_up").network), 6, true), 3359232);
  EXPECT_EQ(search_space(coding_graph(fixture("n4_down").network), 6, true), 589824);
}

TEST(Search, FreeSourceAgreesWithBijection) {
  SearchConfig cfg;
  cfg.l = 6;
  cfg.fix_source_bijection = false;
  for (const char* name : {"n2_up", "n4_down", "n4_split_2_2"}) {
    const Network net = fixture(name).network;
    const SearchResult free = exhaustive_achievable(net, cfg);
    EXPECT_FALSE(free.source_fixed);
    EXPECT_EQ(free.status, search(net, 6).status) << name;
  }
}

TEST(Search, AgreesWithBruteForceOnSmallDags) {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Network dag = random_acyclic_orientation(random_network(seed, 4, 3, 5), seed);
    const BigInt mc = min_cut(dag).value;
    for (std::size_t l = 1; l <= 6 && BigInt(l) <= mc + 1; ++l) {
      const auto want = brute_achievable(dag, l, true, 200'000);
      if (!want) continue;
      const SearchResult got = search(dag, l);
      EXPECT_EQ(got.status == SearchStatus::Witness, *want) << "seed " << seed << " l=" << l;
      if (got.witness) EXPECT_TRUE(is_valid(dag, *got.witness));
      ++compared;
    }
  }
  EXPECT_GT(compared, 300);
}

TEST(Search, StagedNetworkAgreesWithBruteForce) {
  const Network net = fixture("n2_split_2_1").network;
  EXPECT_EQ(search(net, 6).status, SearchStatus::Impossible);
  EXPECT_EQ(brute_achievable(net, 6, true, 50'000'000), false);
}

TEST(Search, BudgetIsReported) {
  const SearchResult r = search(fixture("n4_up").network, 6, 10);
  EXPECT_EQ(r.status, SearchStatus::BudgetExceeded);
  EXPECT_FALSE(r.witness);
  SearchConfig cfg;
  cfg.node_budget = 10;
  EXPECT_THROW(c1_exact(fixture("n4_up").network, 6, cfg), BudgetExceeded);
}

TEST(Search, ThreadsAndShardsAgree) {
  for (const char* name : {"n4_split_2_2", "n2_up", "n4_up"}) {
    const Network net = fixture(name).network;
    for (std::size_t l : {5, 6}) {
      const SearchResult one = search(net, l, 1'000'000'000, 1);
      const SearchResult many = search(net, l, 1'000'000'000, 3);
      EXPECT_EQ(one.status, many.status) << name << " l=" << l;
      EXPECT_EQ(one.witness, many.witness) << name << " l=" << l;
      bool any = false;
      for (std::size_t s = 0; s < 4; ++s) {
        SearchConfig cfg;
        cfg.l = l;
        cfg.shard_index = s;
        cfg.shard_count = 4;
        const SearchResult part = exhaustive_achievable(net, cfg);
        EXPECT_NE(part.status, SearchStatus::BudgetExceeded);
        if (part.witness) EXPECT_TRUE(is_valid(net, *part.witness));
        any |= part.status == SearchStatus::Witness;
      }
      EXPECT_EQ(any, one.status == SearchStatus::Witness) << name << " l=" << l;
    }
  }
}

TEST(Search, BadConfigurations) {
  SearchConfig cfg;
  cfg.l = 0;
  EXPECT_THROW(exhaustive_achievable(fixture("n2_up").network, cfg), InvalidInput);
  cfg.l = 2;
  cfg.shard_count = 2;
  cfg.shard_index = 2;
  EXPECT_THROW(exhaustive_achievable(fixture("n2_up").network, cfg), InvalidInput);
}

TEST(C1, Values) {
  SearchConfig cfg;
  const C1Result n2 = c1_exact(fixture("n2_up").network, 20, cfg);
  EXPECT_EQ(n2.value, 5u);
  EXPECT_EQ(n2.directed_mc, 6);
  ASSERT_TRUE(n2.witness);
  EXPECT_TRUE(is_valid(fixture("n2_up").network, *n2.witness));
  EXPECT_EQ(c1_exact(fixture("n4_split_2_2").network, 20, cfg).value, 6u);
  EXPECT_EQ(c1_exact(fixture("n4_up").network, 20, cfg).value, 5u);
  const Network path = orient(path_network(2, 3), {{"e1", Orientation::UV}, {"e2", Orientation::UV}});
  EXPECT_EQ(c1_exact(path, 20, cfg).value, 2u);
  EXPECT_EQ(c1_exact(path, 1, cfg).value, 1u);
}
