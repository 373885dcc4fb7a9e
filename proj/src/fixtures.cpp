#include "entcap/fixtures.hpp"

#include "entcap/error.hpp"
#include "entcap/tensor_network.hpp"
#include "entcap/transforms.hpp"

#include <algorithm>
#include <numeric>

namespace entcap {

Network relay_diamond(const DiamondDims& d) {
  Network net;
  net.vertices = {"s", "n1", "n2", "t"};
  net.sources = {"s"};
  net.sinks = {"t"};
  net.edges = {
      {"e1", "s", "n1", d[0], Orientation::Undirected}, {"e2", "s", "n2", d[1], Orientation::Undirected},
      {"e3", "n1", "t", d[2], Orientation::Undirected}, {"e4", "n2", "t", d[3], Orientation::Undirected},
      {"e5", "n1", "n2", d[4], Orientation::Undirected},
  };
  return net;
}

Network relay_diamond_oriented(const DiamondDims& d, Middle middle) {
  return orient(relay_diamond(d), {{"e1", Orientation::UV},
                                   {"e2", Orientation::UV},
                                   {"e3", Orientation::UV},
                                   {"e4", Orientation::UV},
                                   {"e5", middle == Middle::Up ? Orientation::VU : Orientation::UV}});
}

Network path_network(Dim a, Dim b) {
  Network net;
  net.vertices = {"s", "n", "t"};
  net.sources = {"s"};
  net.sinks = {"t"};
  net.edges = {{"e1", "s", "n", a, Orientation::Undirected}, {"e2", "n", "t", b, Orientation::Undirected}};
  return net;
}

namespace {

std::vector<Fixture> build_catalog() {
  std::vector<Fixture> c;
  c.push_back({"fig2_counterexample", "diamond (5,3,3,5,2): min-cut 15, rank capacity 14",
               relay_diamond({5, 3, 3, 5, 2}), 14, std::nullopt});
  for (Dim d5 = 2; d5 <= 10; ++d5) {
    std::optional<std::size_t> q1;
    if (d5 == 2 || d5 == 3) q1 = 5;
    c.push_back({"n_d5_" + std::to_string(d5), "diamond (2,3,3,2," + std::to_string(d5) + ")",
                 relay_diamond({2, 3, 3, 2, d5}), 6, q1});
  }
  for (Dim d5 : {2, 3, 4}) {
    for (Middle m : {Middle::Up, Middle::Down}) {
      const std::string dir = m == Middle::Up ? "up" : "down";
      c.push_back({"n" + std::to_string(d5) + "_" + dir,
                   "diamond (2,3,3,2," + std::to_string(d5) + ") with middle edge " + dir,
                   relay_diamond_oriented({2, 3, 3, 2, d5}, m), std::nullopt, std::nullopt});
    }
  }
  c.push_back({"n2_split_2_1", "N_2 middle edge split 2 up, 1 down",
               split_cycle_edge(relay_diamond({2, 3, 3, 2, 2}), {"e5", 2, 1}), std::nullopt, std::nullopt});
  c.push_back({"n4_split_2_2", "N_4 middle edge split 2 up, 2 down",
               split_cycle_edge(relay_diamond({2, 3, 3, 2, 4}), {"e5", 2, 2}), std::nullopt, std::nullopt});
  c.push_back({"n2_scaled_k2", "N_2 with every dimension doubled", scale(relay_diamond({2, 3, 3, 2, 2}), 2),
               std::nullopt, std::nullopt});
  c.push_back({"n2_scaled_k3", "N_2 with every dimension tripled", scale(relay_diamond({2, 3, 3, 2, 2}), 3),
               std::nullopt, std::nullopt});
  c.push_back({"diamond_pow2", "diamond (2,4,4,2,2), all powers of two", relay_diamond({2, 4, 4, 2, 2}),
               std::nullopt, std::nullopt});
  c.push_back({"path_2_3", "path with dims (2,3)", path_network(2, 3), std::nullopt, std::nullopt});
  c.push_back({"path_3_3", "path with dims (3,3)", path_network(3, 3), std::nullopt, std::nullopt});
  return c;
}

}  // namespace

const std::vector<Fixture>& fixture_catalog() {
  static const std::vector<Fixture> catalog = build_catalog();
  return catalog;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixture_catalog()) {
    if (f.name == name) return f;
  }
  throw InvalidInput("unknown fixture \"" + std::string(name) + "\"");
}

ProtocolTable split_n4_protocol() {
  const CodingGraph g = coding_graph(fixture("n4_split_2_2").network);
  ProtocolTable pt;
  pt.l = 6;
  for (std::uint64_t x1 = 0; x1 < 2; ++x1) {
    for (std::uint64_t x2 = 0; x2 < 3; ++x2) pt.source.push_back({x1, x2});
  }
  using In = std::map<EdgeId, std::uint64_t>;
  // n2 tells n1 whether its symbol is 2; n1 tells n2 its bit.
  pt.nodes["n2.early"] = tabulate(g, "n2.early", [](const In& in) -> In { return {{"e5.a", in.at("e2") == 2 ? 1u : 0u}}; });
  pt.nodes["n1.early"] = tabulate(g, "n1.early", [](const In& in) -> In { return {{"e5.b", in.at("e1")}}; });
  pt.nodes["n1.late"] = tabulate(g, "n1.late", [](const In& in) -> In {
    return {{"e3", in.at("e5.a") == 0 ? in.at("e1") : 2u}};
  });
  pt.nodes["n2.late"] = tabulate(g, "n2.late", [](const In& in) -> In {
    return {{"e4", in.at("e2") < 2 ? in.at("e2") : in.at("e5.b")}};
  });
  return pt;
}

std::size_t n2_message(std::uint64_t x1, std::uint64_t x2) {
  static constexpr std::array<std::pair<std::uint64_t, std::uint64_t>, 5> pairs{
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}}};
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    if (pairs[m] == std::pair{x1, x2}) return m;
  }
  throw InvalidInput("pair is not in the transmitted set");
}

ProtocolTable oriented_n2_protocol() {
  const CodingGraph g = coding_graph(fixture("n2_up").network);
  ProtocolTable pt;
  pt.l = 5;
  pt.source = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}};
  using In = std::map<EdgeId, std::uint64_t>;
  pt.nodes["n2"] = tabulate(g, "n2", [](const In& in) -> In {
    const bool two = in.at("e2") == 2;
    return {{"e5", two ? 1u : 0u}, {"e4", two ? 0u : in.at("e2")}};
  });
  pt.nodes["n1"] = tabulate(g, "n1", [](const In& in) -> In { return {{"e3", in.at("e5") == 0 ? in.at("e1") : 2u}}; });
  return pt;
}

Network random_network(std::uint64_t seed, std::size_t max_vertices, Dim max_dim, std::size_t max_edges) {
  std::uint64_t state = splitmix64(seed ^ 0x5EEDull);
  auto next = [&](std::uint64_t bound) {
    state = splitmix64(state);
    return state % bound;
  };
  Network net;
  const std::size_t nv = 2 + next(max_vertices - 1);
  net.vertices = {"s", "t"};
  for (std::size_t i = 2; i < nv; ++i) net.vertices.push_back("n" + std::to_string(i - 1));
  net.sources = {"s"};
  net.sinks = {"t"};
  const std::size_t ne = 1 + next(max_edges);
  for (std::size_t i = 0; i < ne; ++i) {
    Edge e;
    e.id = "e" + std::to_string(i + 1);
    e.u = net.vertices[next(nv)];
    e.v = net.vertices[next(nv)];
    e.dim = 1 + next(max_dim);
    net.edges.push_back(std::move(e));
  }
  return net;
}

Network random_acyclic_orientation(const Network& net, std::uint64_t seed) {
  std::vector<VertexId> order;
  for (const auto& v : net.sources) order.push_back(v);
  std::vector<VertexId> mid = net.internal_vertices();
  std::uint64_t state = splitmix64(seed ^ 0x0A1Eull);
  for (std::size_t i = mid.size(); i > 1; --i) {
    state = splitmix64(state);
    std::swap(mid[i - 1], mid[state % i]);
  }
  order.insert(order.end(), mid.begin(), mid.end());
  for (const auto& v : net.sinks) order.push_back(v);
  auto rank = [&](const VertexId& v) { return std::find(order.begin(), order.end(), v) - order.begin(); };
  std::map<EdgeId, Orientation> dirs;
  for (const auto& e : net.edges) dirs[e.id] = rank(e.u) <= rank(e.v) ? Orientation::UV : Orientation::VU;
  return orient(net, dirs);
}

}  // namespace entcap
