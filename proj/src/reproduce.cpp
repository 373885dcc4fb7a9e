#include "entcap/reproduce.hpp"

#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"
#include "entcap/report.hpp"
#include "entcap/tensor_network.hpp"
#include "entcap/transforms.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace entcap {

namespace {

std::size_t r1_of(const Network& net, const ReproduceOptions& o, std::size_t trials = 5) {
  return estimate_r1(net, PrimeField(), {trials, o.seed, o.threads}).r1_lower;
}

SearchStatus search(const Network& net, std::size_t l, const ReproduceOptions& o, bool fix_source = true) {
  SearchConfig cfg;
  cfg.l = l;
  cfg.node_budget = o.coding_budget;
  cfg.fix_source_bijection = fix_source;
  cfg.threads = o.threads;
  SearchResult r = exhaustive_achievable(net, cfg);
  if (r.witness && !is_valid(net, *r.witness)) throw Error("search returned an invalid witness");
  return r.status;
}

std::size_t c1_value(const Network& net, const ReproduceOptions& o) {
  SearchConfig cfg;
  cfg.node_budget = o.coding_budget;
  cfg.threads = o.threads;
  return c1_exact(net, 64, cfg).value;
}

ClaimResult mc_fig2(const ReproduceOptions&) {
  const BigInt mc = min_cut(fixture("fig2_counterexample").network).value;
  return {"mc-fig2", "MC=15", "MC=" + mc.str(), mc == 15};
}

ClaimResult mc_nd5(const ReproduceOptions&) {
  std::string got;
  bool pass = true;
  for (int d5 = 2; d5 <= 10; ++d5) {
    const BigInt mc = min_cut(fixture("n_d5_" + std::to_string(d5)).network).value;
    pass = pass && mc == 6;
    got += (got.empty() ? "" : ",") + mc.str();
  }
  return {"mc-nd5", "MC=6 for d5=2..10", "MC=" + got, pass};
}

ClaimResult mc_power(const ReproduceOptions&) {
  const BigInt path = min_cut(tensor_power(path_network(2, 3), 3)).value;
  const BigInt fig2 = min_cut(tensor_power(fixture("fig2_counterexample").network, 2)).value;
  return {"mc-power", "path^3 MC=8, (5,3,3,5,2)^2 MC=225", "path^3 MC=" + path.str() + ", ^2 MC=" + fig2.str(),
          path == 8 && fig2 == 225};
}

ClaimResult r1_gap(const ReproduceOptions& o) {
  const Network& net = fixture("fig2_counterexample").network;
  const auto est = estimate_r1(net, PrimeField(), {5, o.seed, o.threads});
  const std::string got = "R1=" + std::to_string(est.r1_lower) + " MC=" + est.mc_upper.str() + " (" +
                          std::to_string(est.rows) + "x" + std::to_string(est.cols) + ")";
  return {"r1-gap", "R1=14 MC=15 (15x15)", got,
          est.r1_lower == 14 && est.mc_upper == 15 && est.rows == 15 && est.cols == 15};
}

ClaimResult r1_saturation(const ReproduceOptions& o) {
  std::string got;
  bool pass = true;
  for (int d5 : {2, 3, 4}) {
    const auto r = r1_of(fixture("n_d5_" + std::to_string(d5)).network, o);
    pass = pass && r == 6;
    got += (got.empty() ? "" : ",") + std::to_string(r);
  }
  return {"r1-saturation", "R1=6 for d5=2,3,4", "R1=" + got, pass};
}

ClaimResult r1_power_of_two(const ReproduceOptions& o) {
  const Network& net = fixture("diamond_pow2").network;
  const auto r = r1_of(net, o);
  const BigInt mc = min_cut(net).value;
  return {"r1-power-of-two", "R1=MC", "R1=" + std::to_string(r) + " MC=" + mc.str(), BigInt(r) == mc};
}

ClaimResult coding_split_n4(const ReproduceOptions& o) {
  const Network& net = fixture("n4_split_2_2").network;
  const SearchStatus s = search(net, 6, o);
  const bool known = is_valid(net, split_n4_protocol());
  const std::size_t c1 = c1_value(net, o);
  return {"coding-split-n4", "l=6 witness, hand protocol valid, C1=6",
          "l=6 " + std::string(to_string(s)) + ", hand protocol " + (known ? "valid" : "invalid") +
              ", C1=" + std::to_string(c1),
          s == SearchStatus::Witness && known && c1 == 6};
}

ClaimResult coding_n2(const ReproduceOptions& o) {
  const Network& up = fixture("n2_up").network;
  const Network& split = fixture("n2_split_2_1").network;
  const SearchStatus five = search(up, 5, o);
  const SearchStatus six = search(up, 6, o);
  const SearchStatus split_five = search(split, 5, o);
  const SearchStatus split_six = search(split, 6, o);
  const bool known = is_valid(up, oriented_n2_protocol());
  // The flagged message goes over the middle edge; an unflagged one does not.
  const auto flagged = simulate(up, oriented_n2_protocol(), n2_message(0, 2));
  const auto plain = simulate(up, oriented_n2_protocol(), n2_message(1, 1));
  const bool routes = flagged == std::vector<std::uint64_t>{2, 0} && plain == std::vector<std::uint64_t>{1, 1};
  const std::size_t c1_up = c1_value(up, o);
  const std::size_t c1_split = c1_value(split, o);
  std::ostringstream got;
  got << "up l=5 " << to_string(five) << ", l=6 " << to_string(six) << "; split l=5 " << to_string(split_five)
      << ", l=6 " << to_string(split_six) << "; hand protocol " << (known ? "valid" : "invalid") << ", (0,2)->("
      << flagged[0] << "," << flagged[1] << "), (1,1)->(" << plain[0] << "," << plain[1] << "); C1 " << c1_up << ", "
      << c1_split;
  return {"coding-n2", "l=5 witness, l=6 impossible, hand protocol valid, (0,2)->(2,0), (1,1)->(1,1); C1 5, 5",
          got.str(),
          five == SearchStatus::Witness && six == SearchStatus::Impossible && split_five == SearchStatus::Witness &&
              split_six == SearchStatus::Impossible && known && routes && c1_up == 5 && c1_split == 5};
}

ClaimResult split_shape(const ReproduceOptions&) {
  const Network split = fixture("n4_split_2_2").network;
  const Edge* a = split.find_edge("e5.a");
  const Edge* b = split.find_edge("e5.b");
  const bool shape = a && b && a->tail() == "n2.early" && a->head() == "n1.late" && b->tail() == "n1.early" &&
                     b->head() == "n2.late" && is_acyclic(split);
  // The same two channels between unsplit relays close a cycle.
  Network both = fixture("n4_down").network;
  both.edges.push_back({"e5.up", "n1", "n2", 2, Orientation::VU});
  const bool cyclic = !is_acyclic(both);
  return {"split-shape", "split acyclic, unsplit cyclic",
          std::string("split ") + (shape ? "acyclic" : "BAD") + ", unsplit " + (cyclic ? "cyclic" : "acyclic"),
          shape && cyclic};
}

ClaimResult coding_n4_acyclic(const ReproduceOptions& o) {
  const SearchStatus up = search(fixture("n4_up").network, 6, o);
  const SearchStatus down = search(fixture("n4_down").network, 6, o);
  return {"coding-n4-acyclic", "l=6 impossible for middle up and down",
          "up " + std::string(to_string(up)) + ", down " + std::string(to_string(down)),
          up == SearchStatus::Impossible && down == SearchStatus::Impossible};
}

ClaimResult scaled_conjecture(const ReproduceOptions& o) {
  std::ostringstream got;
  bool pass = true;
  const DiamondDims base{2, 3, 3, 2, 2};
  for (Dim k : {2, 3}) {
    const Network scaled = scale(relay_diamond(base), k);
    const BigInt mc = min_cut(scaled).value;
    const auto r1 = r1_of(scaled, o);
    const TeleportReduction tr = teleport_reduce_scaled(scaled, k);
    const BigInt composed = tr.through_rank * r1_of(tr.residual, o);
    const BigInt expected = k == 2 ? 24 : 54;
    pass = pass && mc == expected && BigInt(r1) == mc && composed == mc && tr.through_rank == BigInt(k * k) &&
           tr.residual == relay_diamond({2, 3, 3, 2, 2 * k});
    got << (k == 2 ? "" : "; ") << "k=" << k << " R1=" << r1 << " MC=" << mc << " k^2*R1(residual)=" << composed;
  }
  return {"scaled-conjecture", "k=2 R1=MC=24; k=3 R1=MC=54", got.str(), pass};
}

ClaimResult sandwich(const ReproduceOptions& o) {
  std::ostringstream got;
  bool pass = true;
  auto est = [&](const Network& n) { return r1_of(n, o); };
  for (unsigned n : {1u, 2u}) {
    const SandwichReport s = sandwich_check(relay_diamond({2, 3, 3, 2, 2}), n, est);
    pass = pass && s.ok();
    got << (n == 1 ? "" : "; ") << "n=" << n << " " << s.mc_lower << "<=" << s.r1 << "<=" << s.mc_upper;
  }
  // Nothing to round when every dimension is a power of two.
  const SandwichReport p = sandwich_check(fixture("diamond_pow2").network, 1, est);
  pass = pass && p.ok() && p.mc_lower == BigInt(p.r1) && p.mc_upper == BigInt(p.r1);
  got << "; powers of two " << p.mc_lower << "=" << p.r1 << "=" << p.mc_upper;
  return {"sandwich", "MC(N_l) <= R1(N^n) <= MC(N_u) within 2^-c1, 2^c2", got.str(), pass};
}

ClaimResult q1_intervals(const ReproduceOptions& o) {
  ReportOptions ro;
  ro.seed = o.seed;
  ro.threads = o.threads;
  ro.coding_budget = o.coding_budget;
  std::ostringstream got;
  bool pass = true;

  ReportOptions n4 = ro;
  n4.splits = {{"e5", 2, 2}};
  n4.known_r1 = 6;
  const CapacityReport r4 = bounds_report(fixture("n_d5_4").network, n4);
  pass = pass && r4.ok() && r4.q1_lower == 6 && r4.q1_upper == 6;
  got << "N4 [" << r4.q1_lower << "," << r4.q1_upper << "]";

  for (int d5 : {2, 3}) {
    const Fixture& f = fixture("n_d5_" + std::to_string(d5));
    ReportOptions opt = ro;
    opt.known_r1 = f.known_r1;
    opt.external_q1 = f.external_q1;
    const CapacityReport r = bounds_report(f.network, opt);
    pass = pass && r.ok() && r.q1_lower == 5 && r.q1_upper == 6;
    got << "; N" << d5 << " [" << r.q1_lower << "," << r.q1_upper << "]";
  }
  return {"q1-intervals", "N4 [6,6]; N2 [5,6]; N3 [5,6]", got.str(), pass};
}

ClaimResult properties(const ReproduceOptions& o) {
  std::size_t violations = 0, witnesses = 0, skipped = 0;
  for (std::size_t i = 0; i < o.random_networks; ++i) {
    const std::uint64_t seed = o.seed + i;
    const Network net = random_network(seed);
    const Cut cut = min_cut(net);
    if (cut_value(net, cut.s_side) != cut.value) ++violations;
    if (min_cut(tensor_power(net, 2)).value != cut.value * cut.value) ++violations;
    if (BigInt(estimate_r1(net, PrimeField(), {2, seed, 1}).r1_lower) > cut.value) ++violations;
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
      if (!is_valid(dag, *r.witness)) ++violations;
    }
  }
  std::ostringstream got;
  got << violations << " violations over " << o.random_networks << " networks (" << witnesses << " witnesses checked, "
      << skipped << " searches over budget)";
  return {"properties", "0 violations", got.str(), violations == 0};
}

}  // namespace

const std::vector<Claim>& claims() {
  static const std::vector<Claim> all = {
      {"mc-fig2", "min-cut of the (5,3,3,5,2) diamond is 15", mc_fig2},
      {"mc-nd5", "min-cut of (2,3,3,2,d5) is 6 for d5 = 2..10", mc_nd5},
      {"mc-power", "min-cut is multiplicative under tensor powers", mc_power},
      {"r1-gap", "rank capacity of the (5,3,3,5,2) diamond is 14 < 15", r1_gap},
      {"r1-saturation", "rank capacity of (2,3,3,2,d5) is 6 for d5 = 2,3,4", r1_saturation},
      {"r1-power-of-two", "power-of-two dimensions reach the min-cut", r1_power_of_two},
      {"coding-split-n4", "split N4 carries 6 symbols", coding_split_n4},
      {"coding-n2", "N2 with the middle edge up carries 5 symbols but not 6", coding_n2},
      {"split-shape", "splitting the relays removes the cycle", split_shape},
      {"coding-n4-acyclic", "no single-direction N4 carries 6 symbols", coding_n4_acyclic},
      {"scaled-conjecture", "scaled diamond reaches its min-cut for k = 2,3", scaled_conjecture},
      {"sandwich", "rounded-network sandwich for n = 1,2", sandwich},
      {"q1-intervals", "one-shot repeater capacity intervals", q1_intervals},
      {"properties", "invariants on random networks", properties},
  };
  return all;
}

ClaimResult run_claim(std::string_view name, const ReproduceOptions& opts) {
  for (const auto& c : claims()) {
    if (c.name != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    ClaimResult r = c.run(opts);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw InvalidInput("unknown claim \"" + std::string(name) + "\"");
}

std::string format_claim(const ClaimResult& r) {
  std::ostringstream out;
  out << std::left << std::setw(18) << r.name << " " << r.computed << " " << (r.pass ? "PASS" : "FAIL")
      << "  (expected " << r.expected << ", " << std::fixed << std::setprecision(3) << r.seconds << "s)";
  return out.str();
}

}  // namespace entcap
