#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entcap {

using VertexId = std::string;
using EdgeId = std::string;
using Dim = std::uint64_t;

enum class Orientation { Undirected, UV, VU };

std::string_view to_string(Orientation o);
Orientation orientation_from_string(std::string_view s);

/// One shared maximally entangled pair (or, once oriented, one channel) of
/// dimension `dim` between `u` and `v`.
struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;
  Dim dim = 1;
  Orientation orientation = Orientation::Undirected;

  bool is_self_loop() const { return u == v; }
  bool directed() const { return orientation != Orientation::Undirected; }
  /// Tail of a directed edge; `u` for undirected edges.
  const VertexId& tail() const { return orientation == Orientation::VU ? v : u; }
  const VertexId& head() const { return orientation == Orientation::VU ? u : v; }

  bool operator==(const Edge&) const = default;
};

/// Early/late halves of a split node. Both halves always sit on the same side
/// of every cut, and the late half sees everything the early half receives.
struct StagePair {
  VertexId early;
  VertexId late;

  bool operator==(const StagePair&) const = default;
};

struct Network {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
  std::vector<StagePair> stages;

  bool operator==(const Network&) const = default;

  bool is_source(std::string_view v) const;
  bool is_sink(std::string_view v) const;
  bool is_terminal(std::string_view v) const { return is_source(v) || is_sink(v); }
  const Edge* find_edge(std::string_view id) const;
  bool has_vertex(std::string_view v) const;
  bool fully_directed() const;

  /// Vertices that are neither sources nor sinks, in declaration order.
  std::vector<VertexId> internal_vertices() const;
};

/// All invariant violations; empty means the network is well formed.
std::vector<std::string> validate(const Network& net);

/// Throws InvalidInput listing every violation.
void require_valid(const Network& net);

/// Every dimension raised to the n-th power. Throws Overflow past 64 bits.
Network tensor_power(const Network& net, unsigned n);

/// Every dimension multiplied by k.
Network scale(const Network& net, Dim k);

/// Applies directions from `assignment` (edge id -> UV or VU). Edges not in the
/// assignment keep their orientation; the result must be fully directed.
Network orient(const Network& net, const std::map<EdgeId, Orientation>& assignment);

/// Each undirected edge becomes two opposite directed edges "<id>+" and "<id>-".
Network bidirectional(const Network& net);

/// Orientation dropped from every edge.
Network undirected_shadow(const Network& net);

/// Stage pairs merged back into a single vertex named after the early half.
Network collapse_stages(const Network& net);

/// True iff the directed edges (plus the early->late stage links) form no
/// directed cycle. Undirected edges and self-loops are ignored.
bool is_acyclic(const Network& net);

/// Vertex ids in a topological order of the directed part (stage links
/// included), ties broken by declaration order. Throws CyclicNetwork.
std::vector<VertexId> topological_order(const Network& net);

}  // namespace entcap
