#pragma once

#include "entcap/bigint.hpp"
#include "entcap/network.hpp"

#include <cstddef>
#include <vector>

namespace entcap {

struct Cut {
  /// Source side S~, sorted by vertex id.
  std::vector<VertexId> s_side;
  BigInt value;
  /// Ids of the edges whose dimension enters the product, in edge order.
  std::vector<EdgeId> crossing;

  /// Crossing edges of dimension > 1.
  std::size_t nontrivial_edge_count(const Network& net) const;
};

struct MinCutOptions {
  /// Largest number of free (non-terminal, stage-merged) vertices enumerated.
  std::size_t max_free_vertices = 20;
  unsigned threads = 1;
};

/// Product of dimensions over the edges that cross from `s_side` to the rest.
/// An undirected edge crosses when exactly one endpoint is in `s_side`; a
/// directed edge only when its tail is inside and its head outside.
BigInt cut_value(const Network& net, const std::vector<VertexId>& s_side, std::vector<EdgeId>* crossing = nullptr);

/// Exact multiplicative min-cut by enumerating every partition of the free
/// vertices. Sources (and sinks) act as one super-vertex; stage pairs stay
/// together. Among minimizers the lexicographically smallest sorted S~ wins.
/// Throws TooLarge past `max_free_vertices`.
Cut min_cut(const Network& net, const MinCutOptions& opts = {});

}  // namespace entcap
