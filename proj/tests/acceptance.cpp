// Acceptance run: one PASS/FAIL line per criterion. Every numeric check is
// exact integer equality; the time limit is part of each criterion.

#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"
#include "entcap/tensor_network.hpp"
#include "entcap/transforms.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace entcap;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  double worst_single = 0;  // slowest individual case, for per-case limits
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
auto timed(double& worst, F&& f) {
  const auto t0 = Clock::now();
  auto r = f();
  worst = std::max(worst, seconds_since(t0));
  return r;
}

std::size_t r1(const Network& net) { return estimate_r1(net, PrimeField(2147483647), {5, 0, 1}).r1_lower; }

SearchResult search(const Network& net, std::size_t l) {
  SearchConfig cfg;
  cfg.l = l;
  cfg.node_budget = 1'000'000'000;
  cfg.fix_source_bijection = true;
  return exhaustive_achievable(net, cfg);
}

Outcome mincut_exactness() {
  Outcome o;
  const BigInt fig2 = timed(o.worst_single, [] { return min_cut(fixture("fig2_counterexample").network).value; });
  o.pass = fig2 == 15;
  std::ostringstream d;
  d << "MC(5,3,3,5,2)=" << fig2 << " MC(2,3,3,2,d5)=";
  for (Dim d5 = 2; d5 <= 10; ++d5) {
    const BigInt mc = timed(o.worst_single, [&] { return min_cut(relay_diamond({2, 3, 3, 2, d5})).value; });
    o.pass = o.pass && mc == 6;
    d << mc << (d5 < 10 ? "," : "");
  }
  d << " (expected 15; 6 for d5=2..10)";
  o.detail = d.str();
  return o;
}

Outcome r1_gap() {
  Outcome o;
  const auto r = timed(o.worst_single, [] { return r1(fixture("fig2_counterexample").network); });
  o.pass = r == 14;
  o.detail = "R1=" + std::to_string(r) + " MC=15 (expected R1=14, p=2^31-1, 5 trials)";
  return o;
}

Outcome r1_saturation() {
  Outcome o;
  std::string got;
  for (Dim d5 : {2, 3, 4}) {
    const auto r = timed(o.worst_single, [&] { return r1(relay_diamond({2, 3, 3, 2, d5})); });
    o.pass = o.pass && r == 6;
    got += (got.empty() ? "" : ",") + std::to_string(r);
  }
  o.detail = "R1(2,3,3,2,d5)=" + got + " for d5=2,3,4 (expected 6)";
  return o;
}

Outcome coding_achievability() {
  Outcome o;
  const Network split = fixture("n4_split_2_2").network;
  const Network up = fixture("n2_up").network;
  const SearchResult six = search(split, 6);
  const SearchResult five = search(up, 5);
  const bool six_ok = six.status == SearchStatus::Witness && is_valid(split, *six.witness);
  const bool five_ok = five.status == SearchStatus::Witness && is_valid(up, *five.witness);
  const bool hand_split = is_valid(split, split_n4_protocol());
  const bool hand_up = is_valid(up, oriented_n2_protocol());
  o.pass = six_ok && five_ok && hand_split && hand_up;
  std::ostringstream d;
  d << "split N4 l=6 " << to_string(six.status) << ", up N2 l=5 " << to_string(five.status)
    << ", hand protocols " << (hand_split && hand_up ? "valid" : "INVALID") << " (expected witness, witness, valid)";
  o.detail = d.str();
  return o;
}

Outcome coding_impossibility() {
  Outcome o;
  std::ostringstream d;
  const SearchResult n2 = search(fixture("n2_up").network, 6);
  o.pass = n2.status == SearchStatus::Impossible;
  d << "up N2 l=6 " << to_string(n2.status);

  // Every direction of every edge of N4; cyclic ones are not DAGs and drop out.
  const Network n4 = relay_diamond({2, 3, 3, 2, 4});
  std::size_t acyclic = 0, impossible = 0, exhausted = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::map<EdgeId, Orientation> dirs;
    for (unsigned i = 0; i < 5; ++i) dirs[n4.edges[i].id] = (mask >> i) & 1u ? Orientation::VU : Orientation::UV;
    const Network oriented = orient(n4, dirs);
    if (!is_acyclic(oriented)) continue;
    ++acyclic;
    const SearchResult r = search(oriented, 6);
    impossible += r.status == SearchStatus::Impossible;
    exhausted += r.status == SearchStatus::BudgetExceeded;
  }
  o.pass = o.pass && impossible == acyclic && exhausted == 0 && acyclic > 0;
  d << "; N4 l=6 impossible on " << impossible << "/" << acyclic << " acyclic orientations, " << exhausted
    << " over budget (expected all impossible, none over budget)";
  o.detail = d.str();
  return o;
}

Outcome scaled_family() {
  Outcome o;
  std::ostringstream d;
  for (Dim k : {2, 3}) {
    const Network net = scale(relay_diamond({2, 3, 3, 2, 2}), k);
    const auto r = r1(net);
    const BigInt mc = min_cut(net).value;
    const BigInt want = k == 2 ? 24 : 54;
    o.pass = o.pass && BigInt(r) == mc && mc == want;
    d << "k=" << k << " R1=" << r << " MC=" << mc << (k == 2 ? "; " : "");
  }
  d << " (expected 24 and 54)";
  o.detail = d.str();
  return o;
}

Outcome sandwich() {
  Outcome o;
  std::ostringstream d;
  for (unsigned n : {1u, 2u}) {
    const SandwichReport s = sandwich_check(relay_diamond({2, 3, 3, 2, 2}), n, r1);
    o.pass = o.pass && s.ok();
    d << "n=" << n << ": " << boost::multiprecision::numerator(s.floor_bound) << "/"
      << boost::multiprecision::denominator(s.floor_bound) << " <= " << s.mc_lower << " <= " << s.r1
      << " <= " << s.mc_upper << " <= " << s.ceiling_bound << (n == 1 ? "; " : "");
  }
  o.detail = d.str();
  return o;
}

Outcome properties() {
  Outcome o;
  std::size_t rank = 0, square = 0, witness = 0, cut = 0, witnesses = 0, skipped = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Network net = random_network(seed, 6, 4);
    const Cut c = min_cut(net);
    if (cut_value(net, c.s_side) != c.value) ++cut;
    if (min_cut(tensor_power(net, 2)).value != c.value * c.value) ++square;
    if (BigInt(estimate_r1(net, PrimeField(), {3, seed, 1}).r1_lower) > c.value) ++rank;
    // Every l up to the first non-witness; all witnesses get checked, an
    // undecided l only ends the climb.
    const Network dag = random_acyclic_orientation(net, seed);
    const BigInt cap = min_cut(dag).value;
    for (std::size_t l = 1; BigInt(l) <= cap; ++l) {
      SearchConfig cfg;
      cfg.l = l;
      cfg.node_budget = 1'000'000;
      const SearchResult r = exhaustive_achievable(dag, cfg);
      if (r.status == SearchStatus::BudgetExceeded) ++skipped;
      if (r.status != SearchStatus::Witness) break;
      ++witnesses;
      if (!is_valid(dag, *r.witness)) ++witness;
    }
  }
  o.pass = rank + square + witness + cut == 0;
  std::ostringstream d;
  d << "violations: rank>MC " << rank << ", MC(N^2)!=MC^2 " << square << ", invalid witness " << witness << "/"
    << witnesses << ", cut witness " << cut << " (expected 0; " << skipped << " coding searches over budget)";
  o.detail = d.str();
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double total_limit;   // seconds, whole criterion
  double single_limit;  // seconds, slowest case; 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "min-cut exactness", 1.0, 0.1, mincut_exactness},
      {2, "rank gap", 1.0, 1.0, r1_gap},
      {3, "rank saturation", 3.0, 1.0, r1_saturation},
      {4, "coding achievability", 10.0, 0, coding_achievability},
      {5, "coding impossibility", 300.0, 0, coding_impossibility},
      {6, "scaled family reaches min-cut", 30.0, 0, scaled_family},
      {7, "rounded sandwich", 60.0, 0, sandwich},
      {8, "random-network properties", 300.0, 0, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    bool in_time = secs <= c.total_limit;
    if (c.single_limit > 0) in_time = in_time && o.worst_single <= c.single_limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d %-30s %s  %s  [%.3fs, limit %.1fs", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs, c.total_limit);
    if (c.single_limit > 0) std::printf(", slowest case %.3fs, limit %.1fs", o.worst_single, c.single_limit);
    std::printf("]%s\n", in_time ? "" : " too slow");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
