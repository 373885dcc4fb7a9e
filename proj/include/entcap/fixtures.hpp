#pragma once

#include "entcap/coding.hpp"
#include "entcap/network.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entcap {

/// Dimensions of the two-relay diamond in edge order:
/// e1 s-n1, e2 s-n2, e3 n1-t, e4 n2-t, e5 n1-n2.
using DiamondDims = std::array<Dim, 5>;

enum class Middle { Up, Down };  // Up: n2 -> n1

Network relay_diamond(const DiamondDims& d);

/// Relay edges point s -> n -> t; the middle edge points as given.
Network relay_diamond_oriented(const DiamondDims& d, Middle middle);

/// s - n - t with dimensions (a, b).
Network path_network(Dim a, Dim b);

struct Fixture {
  std::string name;
  std::string description;
  Network network;
  /// Rank capacity established independently of sampling, if any.
  std::optional<std::size_t> known_r1;
  /// Reported one-shot repeater capacity that this toolkit cannot check.
  std::optional<std::size_t> external_q1;
};

const std::vector<Fixture>& fixture_catalog();

/// Throws InvalidInput for unknown names.
const Fixture& fixture(std::string_view name);

/// Split of N_4's middle edge into 2 up and 2 down; the tables transmit all
/// six (d1, d2) input pairs.
ProtocolTable split_n4_protocol();

/// On the diamond (2,3,3,2,2) with the middle edge up: five input pairs,
/// (0,2) signalled to n1 over the middle edge.
ProtocolTable oriented_n2_protocol();

/// The message index of source pair (x1, x2) in oriented_n2_protocol().
std::size_t n2_message(std::uint64_t x1, std::uint64_t x2);

/// Small random network: 2..max_vertices vertices including one source and
/// one sink, dims in [1, max_dim]. Deterministic in `seed`.
Network random_network(std::uint64_t seed, std::size_t max_vertices = 6, Dim max_dim = 4, std::size_t max_edges = 7);

/// Orients every edge along a random vertex order with sources first and
/// sinks last, so the result is acyclic.
Network random_acyclic_orientation(const Network& net, std::uint64_t seed);

}  // namespace entcap
