#pragma once

#include "entcap/bigint.hpp"
#include "entcap/coding.hpp"
#include "entcap/network.hpp"
#include "entcap/network_json.hpp"
#include "entcap/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entcap {

struct ReportOptions {
  /// Explicit orientations (edge id -> direction) evaluated in addition to
  /// the default set; each must make the network fully directed.
  std::vector<std::map<EdgeId, Orientation>> orientations;
  std::vector<SplitSpec> splits;
  /// Enumerate every direction of every undirected edge instead of only the
  /// internal ones.
  bool all_orientations = false;
  /// Cap on the number of edges whose direction is enumerated.
  std::size_t max_enumerated_edges = 10;
  std::size_t rank_trials = 5;
  std::uint64_t seed = 0;
  std::uint64_t prime = 2147483647;
  std::uint64_t coding_budget = 1'000'000'000;
  unsigned threads = 1;
  /// Rank capacity known exactly from elsewhere; becomes the Q1 upper bound.
  std::optional<std::size_t> known_r1;
  std::optional<std::size_t> external_q1;
};

struct CodingOutcome {
  std::string label;
  std::string status;  // "ok", "cyclic", "budget_exceeded", "error: ..."
  BigInt directed_mc;
  std::optional<std::size_t> c1;
};

struct InvariantCheck {
  std::string name;
  bool ok = false;
};

struct CapacityReport {
  BigInt mc;
  std::vector<VertexId> mc_witness;
  std::size_t r1_lower = 0;
  BigRational r1_failure_bound;
  std::optional<std::size_t> known_r1;
  std::vector<CodingOutcome> c1_results;
  std::size_t q1_lower = 1;
  BigInt q1_upper;
  std::string q1_lower_source;
  BigInt regularized_r;
  BigInt regularized_q;
  BigInt regularized_c_directed;
  std::optional<std::size_t> external_q1;
  std::vector<InvariantCheck> checks;

  bool ok() const;
  /// Q1 when the interval has collapsed to a point.
  std::optional<BigInt> q1_exact() const;
};

CapacityReport bounds_report(const Network& net, const ReportOptions& opts = {});

Json report_to_json(const CapacityReport& r);

}  // namespace entcap
