#pragma once

#include "entcap/bigint.hpp"
#include "entcap/network.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace entcap {

/// Factorization dim = a * b of the edge joining two non-terminal vertices.
struct SplitSpec {
  EdgeId edge;
  Dim a = 1;
  Dim b = 1;
};

/// Replaces the edge u-v by two opposite channels between staged copies of
/// its endpoints: dimension `a` from v.early to u.late and dimension `b` from
/// u.early to v.late. In-edges of u and v move to the early stage, out-edges
/// to the late stage. Undirected edges at a terminal are oriented away from
/// sources and into sinks; any other undirected edge touching u or v is an
/// error, as is a result with a directed cycle.
Network split_cycle_edge(const Network& net, const SplitSpec& spec);

/// Stage vertex names produced by split_cycle_edge.
VertexId early_stage(const VertexId& v);
VertexId late_stage(const VertexId& v);

/// Undoes split_cycle_edge: merges stage pairs, re-multiplies the two split
/// edges into one undirected edge `spec.edge`, and drops all orientations.
Network unsplit(const Network& split, const SplitSpec& spec);

/// Roles of the five edges in the two-relay network s, n1, n2, t.
struct RelayDiamond {
  VertexId source, sink, upper, lower;
  EdgeId source_upper, source_lower, upper_sink, lower_sink, middle;
};

/// Recognizes the two-relay diamond; `upper` is the relay whose source edge
/// comes first in edge order. Throws InvalidInput on any other shape.
RelayDiamond match_relay_diamond(const Network& net);

struct TeleportReduction {
  BigInt through_rank;  // k^2
  Network residual;
};

/// Teleports one k-dimensional system along each relay path of a network
/// whose dimensions are all multiples of k. The residual keeps the relay
/// dimensions divided by k and the middle edge untouched.
TeleportReduction teleport_reduce_scaled(const Network& net, Dim k);

struct RoundedPair {
  Network lower;  // every dim rounded down to a power of 2 after ^n
  Network upper;  // every dim rounded up to a power of 2 after ^n
  std::size_t c1 = 0;  // nontrivial edges in the min cut of `lower`
  std::size_t c2 = 0;  // nontrivial edges in the min cut of net^n
};

RoundedPair round_networks(const Network& net, unsigned n);

/// Returns a rank lower bound for a network (normally estimate_r1).
using RankEstimator = std::function<std::size_t(const Network&)>;

struct SandwichReport {
  unsigned n = 1;
  BigInt mc_power;     // MC(N^n)
  BigInt mc_lower;     // MC(N_l)
  std::size_t r1 = 0;  // rank estimate of N^n
  BigInt mc_upper;     // MC(N_u)
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  BigRational floor_bound;  // 2^-c1 * MC(N^n)
  BigInt ceiling_bound;     // 2^c2 * MC(N^n)
  bool chain_holds = false;   // MC(N_l) <= r1 <= MC(N_u)
  bool bounds_hold = false;   // floor_bound <= MC(N_l) and MC(N_u) <= ceiling_bound
  bool ok() const { return chain_holds && bounds_hold; }
};

SandwichReport sandwich_check(const Network& net, unsigned n, const RankEstimator& rank_estimator);

}  // namespace entcap
