#pragma once

#include "entcap/bigint.hpp"
#include "entcap/network.hpp"
#include "entcap/network_json.hpp"
#include "entcap/prime_field.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace entcap {

/// Tensor at one internal vertex. Indices follow the incident edges
/// (self-loops excluded) sorted by edge id; entries are row-major with the
/// last index varying fastest.
struct VertexTensor {
  std::vector<EdgeId> edges;
  std::vector<Dim> dims;
  std::vector<std::uint64_t> entries;

  bool operator==(const VertexTensor&) const = default;
};

using TensorAssignment = std::map<VertexId, VertexTensor>;

/// {"<vertex>": {"edges": [...], "dims": [...], "entries": [...]}, ...}
Json assignment_to_json(const TensorAssignment& ta);
TensorAssignment assignment_from_json(const Json& j);

/// Row and column layout of the boundary map V(S) -> V(T).
struct BoundaryLayout {
  std::vector<EdgeId> source_edges;  // row-major, edge-id order
  std::vector<EdgeId> sink_edges;    // column-major, edge-id order
  std::size_t rows = 1;
  std::size_t cols = 1;
};

/// Network as tensor contraction sees it: stage pairs merged, directions
/// dropped.
Network tensor_view(const Network& net);

BoundaryLayout boundary_layout(const Network& net);

/// Index edges and dims of every internal vertex tensor, entries zeroed.
TensorAssignment empty_assignment(const Network& net);

/// SplitMix64 step.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

/// Seed for trial t derived from a base seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Every entry uniform in [0, p), drawn from SplitMix64 keyed by
/// (seed, vertex id, entry index).
TensorAssignment random_assignment(const Network& net, const PrimeField& field, std::uint64_t seed);

/// beta_T: contracts every internal edge. Throws ShapeMismatch when the
/// assignment does not fit the network, TooLarge when an intermediate tensor
/// would exceed `max_entries`.
Matrix contract(const Network& net, const TensorAssignment& ta, const PrimeField& field,
                std::size_t max_entries = std::size_t{1} << 26);

struct R1Estimate {
  std::size_t r1_lower = 0;
  BigInt mc_upper;
  /// Probability bound that every trial missed the generic rank.
  BigRational failure_bound;
  std::size_t trials = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// First trial (lowest index) attaining r1_lower.
  std::uint64_t witness_seed = 0;
  TensorAssignment witness;
};

struct R1Options {
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

R1Estimate estimate_r1(const Network& net, const PrimeField& field, const R1Options& opts);

}  // namespace entcap
