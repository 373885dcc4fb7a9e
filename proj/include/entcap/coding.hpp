#pragma once

#include "entcap/bigint.hpp"
#include "entcap/network.hpp"
#include "entcap/network_json.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entcap {

/// One non-terminal vertex seen as a function from its input edges to its
/// output edges. A late stage also reads every input of its early stage.
struct CodingNode {
  VertexId vertex;
  std::vector<std::size_t> inputs;   // indices into CodingGraph::edges
  std::vector<std::size_t> outputs;  // indices into CodingGraph::edges
  std::size_t rows = 1;              // product of input alphabets
  std::uint64_t symbols = 1;         // product of output alphabets
};

/// The directed network restricted to edges that can carry information, with
/// nodes in a fixed topological order. Built once per network.
///
/// Dropped edges: self-loops, edges whose head is a source, edges whose tail
/// is a sink. Every remaining edge must be directed.
struct CodingGraph {
  std::vector<Edge> edges;                  // sorted by edge id
  std::vector<std::size_t> source_outputs;  // edge-id order
  std::vector<std::size_t> sink_inputs;     // edge-id order
  std::vector<CodingNode> nodes;            // topological order
  std::uint64_t source_symbols = 1;         // product of source output alphabets

  const CodingNode* find_node(std::string_view v) const;
};

/// Throws InvalidInput for undirected edges, CyclicNetwork for cycles.
CodingGraph coding_graph(const Network& net);

/// Source encoder plus one function table per non-terminal vertex. Table rows
/// are flattened input tuples (row-major, edge-id order); values are
/// flattened output tuples.
struct ProtocolTable {
  std::size_t l = 0;
  std::vector<std::vector<std::uint64_t>> source;  // [message] -> symbol per source output edge
  std::map<VertexId, std::vector<std::uint64_t>> nodes;

  bool operator==(const ProtocolTable&) const = default;
};

Json protocol_to_json(const ProtocolTable& pt);
ProtocolTable protocol_from_json(const Json& j);

/// Throws ShapeMismatch when the protocol does not fit the graph.
void check_shape(const CodingGraph& g, const ProtocolTable& pt);

/// Symbols delivered on the sink input edges for one message.
std::vector<std::uint64_t> simulate(const Network& net, const ProtocolTable& pt, std::size_t message);
std::vector<std::uint64_t> simulate(const CodingGraph& g, const ProtocolTable& pt, std::size_t message);

/// A decoder exists iff message -> sink tuple is injective.
bool is_valid(const Network& net, const ProtocolTable& pt);
bool is_valid(const CodingGraph& g, const ProtocolTable& pt);

/// Builds a node table from a function over named edge symbols.
using NodeFunction = std::function<std::map<EdgeId, std::uint64_t>(const std::map<EdgeId, std::uint64_t>&)>;
std::vector<std::uint64_t> tabulate(const CodingGraph& g, const VertexId& vertex, const NodeFunction& fn);

struct SearchConfig {
  std::size_t l = 1;
  std::uint64_t node_budget = 1'000'000'000;  // table-entry assignments, per shard
  bool fix_source_bijection = true;
  std::size_t shard_index = 0;
  std::size_t shard_count = 1;
  /// When > 1 and shard_count == 1, shards are run in parallel and merged.
  unsigned threads = 1;
};

enum class SearchStatus { Witness, Impossible, BudgetExceeded };

std::string_view to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Impossible;
  std::optional<ProtocolTable> witness;
  std::uint64_t assignments = 0;
  /// Size of the unpruned table space searched.
  BigInt space;
  bool source_fixed = false;
};

/// Number of table combinations an unpruned search would visit.
BigInt search_space(const CodingGraph& g, std::size_t l, bool source_fixed);

/// Backtracking over node tables with injectivity pruning. Only rows reached
/// by some message are branched on; unreached rows stay 0 in the witness. The
/// first witness in lexicographic order of (table, row, value) is returned.
SearchResult exhaustive_achievable(const Network& net, const SearchConfig& cfg);

struct C1Result {
  std::size_t value = 0;
  BigInt directed_mc;
  std::optional<ProtocolTable> witness;
  /// Per alphabet size tried, in order.
  std::vector<std::pair<std::size_t, SearchStatus>> trace;
};

/// Largest l <= l_max with a valid protocol, searched upward from 1 and
/// capped by the directed min-cut. Throws BudgetExceeded when some l could
/// not be decided.
C1Result c1_exact(const Network& net, std::size_t l_max, const SearchConfig& cfg);

}  // namespace entcap
