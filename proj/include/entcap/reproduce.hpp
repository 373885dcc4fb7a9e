#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace entcap {

struct ClaimResult {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  double seconds = 0;
};

struct ReproduceOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t coding_budget = 1'000'000'000;
  std::size_t random_networks = 200;
};

struct Claim {
  std::string name;
  std::string summary;
  std::function<ClaimResult(const ReproduceOptions&)> run;
};

const std::vector<Claim>& claims();

/// Throws InvalidInput for unknown names.
ClaimResult run_claim(std::string_view name, const ReproduceOptions& opts);

/// One line per claim: name, PASS/FAIL, expected vs computed, seconds.
std::string format_claim(const ClaimResult& r);

}  // namespace entcap
