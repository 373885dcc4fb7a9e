#include "entcap/report.hpp"

#include "entcap/error.hpp"
#include "entcap/mincut.hpp"
#include "entcap/tensor_network.hpp"

#include <algorithm>
#include <thread>

namespace entcap {

bool CapacityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok; });
}

std::optional<BigInt> CapacityReport::q1_exact() const {
  if (BigInt(q1_lower) == q1_upper) return q1_upper;
  return std::nullopt;
}

namespace {

struct Candidate {
  std::string label;
  std::optional<Network> network;  // empty when the orientation is cyclic
};

// Terminal edges point away from sources and into sinks; everything else
// keeps its current orientation.
std::map<EdgeId, Orientation> terminal_directions(const Network& net) {
  std::map<EdgeId, Orientation> dirs;
  for (const auto& e : net.edges) {
    if (e.directed()) continue;
    if (net.is_source(e.u) || net.is_sink(e.v)) {
      dirs[e.id] = Orientation::UV;
    } else if (net.is_source(e.v) || net.is_sink(e.u)) {
      dirs[e.id] = Orientation::VU;
    }
  }
  return dirs;
}

std::vector<Candidate> orientation_candidates(const Network& net, const ReportOptions& opts) {
  std::map<EdgeId, Orientation> fixed = opts.all_orientations ? std::map<EdgeId, Orientation>{} : terminal_directions(net);
  std::vector<EdgeId> free;
  for (const auto& e : net.edges) {
    if (!e.directed() && !fixed.count(e.id)) free.push_back(e.id);
  }
  std::vector<Candidate> out;
  if (free.size() > opts.max_enumerated_edges) {
    out.push_back({"orientations: " + std::to_string(free.size()) + " free edges exceed the enumeration cap", std::nullopt});
    return out;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    auto dirs = fixed;
    std::string label = "orient";
    for (std::size_t i = 0; i < free.size(); ++i) {
      const bool reversed = (mask >> i) & 1u;
      dirs[free[i]] = reversed ? Orientation::VU : Orientation::UV;
      label += " " + free[i] + "=" + (reversed ? "vu" : "uv");
    }
    if (free.empty()) label += " (terminal edges only)";
    Network oriented = orient(net, dirs);
    out.push_back({label, is_acyclic(oriented) ? std::optional<Network>(std::move(oriented)) : std::nullopt});
  }
  for (const auto& extra : opts.orientations) {
    std::string label = "orient";
    for (const auto& [id, dir] : extra) label += " " + id + "=" + std::string(to_string(dir));
    Network oriented = orient(net, extra);
    out.push_back({label, is_acyclic(oriented) ? std::optional<Network>(std::move(oriented)) : std::nullopt});
  }
  for (const auto& sp : opts.splits) {
    out.push_back({"split " + sp.edge + " " + std::to_string(sp.a) + "x" + std::to_string(sp.b),
                   split_cycle_edge(net, sp)});
  }
  return out;
}

CodingOutcome evaluate(const Candidate& cand, const ReportOptions& opts) {
  CodingOutcome out;
  out.label = cand.label;
  if (!cand.network) {
    out.status = cand.label.rfind("orientations:", 0) == 0 ? "skipped" : "cyclic";
    return out;
  }
  try {
    SearchConfig cfg;
    cfg.node_budget = opts.coding_budget;
    const C1Result r = c1_exact(*cand.network, SIZE_MAX, cfg);
    out.directed_mc = r.directed_mc;
    out.c1 = r.value;
    out.status = "ok";
  } catch (const BudgetExceeded&) {
    out.directed_mc = min_cut(*cand.network).value;
    out.status = "budget_exceeded";
  } catch (const Error& e) {
    out.status = std::string("error: ") + e.what();
  }
  return out;
}

}  // namespace

CapacityReport bounds_report(const Network& net, const ReportOptions& opts) {
  require_valid(net);
  CapacityReport r;
  const Network shadow = undirected_shadow(net);
  const Cut cut = min_cut(shadow);
  r.mc = cut.value;
  r.mc_witness = cut.s_side;

  const R1Estimate est = estimate_r1(net, PrimeField(opts.prime), {opts.rank_trials, opts.seed, opts.threads});
  r.r1_lower = est.r1_lower;
  r.r1_failure_bound = est.failure_bound;
  r.known_r1 = opts.known_r1;
  r.external_q1 = opts.external_q1;

  const auto candidates = orientation_candidates(shadow, opts);
  r.c1_results.resize(candidates.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(candidates.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) r.c1_results[i] = evaluate(candidates[i], opts);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < candidates.size(); i += threads) r.c1_results[i] = evaluate(candidates[i], opts);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic max: first candidate in list order wins ties.
  r.q1_lower = 1;
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < r.c1_results.size(); ++i) {
    const auto& c = r.c1_results[i];
    if (!c.c1) continue;
    if (!chosen || *c.c1 > r.q1_lower) {
      chosen = i;
      r.q1_lower = std::max<std::size_t>(r.q1_lower, *c.c1);
    }
  }
  r.q1_lower_source = chosen ? r.c1_results[*chosen].label : "trivial";
  r.q1_upper = opts.known_r1 ? BigInt(*opts.known_r1) : r.mc;

  r.regularized_r = r.mc;
  r.regularized_q = r.mc;
  r.regularized_c_directed = chosen ? r.c1_results[*chosen].directed_mc : BigInt(0);

  auto check = [&](std::string name, bool ok) { r.checks.push_back({std::move(name), ok}); };
  check("r1_lower <= mc", BigInt(r.r1_lower) <= r.mc);
  if (opts.known_r1) {
    check("r1_lower == known r1", r.r1_lower == *opts.known_r1);
    check("known r1 <= mc", BigInt(*opts.known_r1) <= r.mc);
  }
  check("q1_lower <= q1_upper", BigInt(r.q1_lower) <= r.q1_upper);
  check("q1_upper <= mc", r.q1_upper <= r.mc);
  bool c1_bounded = true;
  for (const auto& c : r.c1_results) {
    if (c.c1 && BigInt(*c.c1) > c.directed_mc) c1_bounded = false;
    if (c.c1 && c.directed_mc > r.mc) c1_bounded = false;
  }
  check("c1 <= directed mc <= mc", c1_bounded);
  check("regularized R == mc", r.regularized_r == r.mc);
  return r;
}

namespace {

Json rational_to_json(const BigRational& q) {
  return Json(boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str());
}

}  // namespace

Json report_to_json(const CapacityReport& r) {
  Json j;
  j["mc"] = big_to_json(r.mc);
  j["mc_witness"] = r.mc_witness;
  j["r1"] = {{"lower", r.r1_lower}, {"failure_bound", rational_to_json(r.r1_failure_bound)}};
  if (r.known_r1) j["r1"]["known"] = *r.known_r1;
  j["c1_results"] = Json::array();
  for (const auto& c : r.c1_results) {
    Json jc;
    jc["label"] = c.label;
    jc["status"] = c.status;
    if (c.status == "ok" || c.status == "budget_exceeded") jc["directed_mc"] = big_to_json(c.directed_mc);
    if (c.c1) jc["c1"] = *c.c1;
    j["c1_results"].push_back(std::move(jc));
  }
  j["q1"] = {{"lower", r.q1_lower}, {"lower_from", r.q1_lower_source}, {"upper", big_to_json(r.q1_upper)}};
  if (auto exact = r.q1_exact()) j["q1"]["exact"] = big_to_json(*exact);
  if (r.external_q1) j["q1"]["external_claim"] = {{"value", *r.external_q1}, {"status", "not verified"}};
  j["regularized"] = {{"R", big_to_json(r.regularized_r)},
                      {"Q", big_to_json(r.regularized_q)},
                      {"Q_basis", "equals R in the regularized limit"},
                      {"C_directed", big_to_json(r.regularized_c_directed)}};
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}});
  j["ok"] = r.ok();
  return j;
}

}  // namespace entcap
