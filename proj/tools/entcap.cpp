// entcap: command-line front end.
//
// Exit codes: 0 ok, 1 invariant or claim failure, 2 bad input, 3 budget exceeded.

#include "entcap/coding.hpp"
#include "entcap/error.hpp"
#include "entcap/fixtures.hpp"
#include "entcap/mincut.hpp"
#include "entcap/network_json.hpp"
#include "entcap/report.hpp"
#include "entcap/reproduce.hpp"
#include "entcap/tensor_network.hpp"
#include "entcap/transforms.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace entcap;

namespace {

constexpr int kOk = 0, kFail = 1, kBadInput = 2, kBudget = 3;

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write \"" + path + "\"");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ':')) parts.push_back(cur);
  return parts;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || s[0] == '-') throw InvalidInput(what + ": \"" + s + "\" is not a non-negative integer");
  return v;
}

SplitSpec parse_split(const std::string& text) {
  // EDGE:a:b; the edge id itself may not contain ':'.
  const auto p = split_colon(text);
  if (p.size() != 3) throw InvalidInput("split must be EDGE:a:b, got \"" + text + "\"");
  return {p[0], parse_uint(p[1], "split a"), parse_uint(p[2], "split b")};
}

// ENTCAP_BUDGET replaces the default; an explicit --budget wins over both.
std::uint64_t resolve_budget(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("ENTCAP_BUDGET")) return parse_uint(env, "ENTCAP_BUDGET");
  return value;
}

Json cut_to_json(const Network& net, const Cut& c) {
  return {{"mc", big_to_json(c.value)},
          {"witness", c.s_side},
          {"crossing", c.crossing},
          {"nontrivial_crossing", c.nontrivial_edge_count(net)}};
}

Json search_to_json(const SearchResult& r, std::size_t l) {
  Json j;
  j["l"] = l;
  j["status"] = std::string(to_string(r.status));
  j["search_space"] = big_to_json(r.space);
  j["source_fixed"] = r.source_fixed;
  j["assignments"] = r.assignments;
  if (r.witness) j["witness"] = protocol_to_json(*r.witness);
  return j;
}

struct Args {
  unsigned threads = 1;
  std::string file;
  // rank
  std::uint64_t prime = 2147483647, trials = 5, seed = 0;
  std::string witness_out;
  // c1
  std::size_t l = 0, exact_up_to = 0;
  std::uint64_t budget = 1'000'000'000;
  bool no_bijection = false;
  std::size_t shard_index = 0, shard_count = 1;
  // transform
  std::string op;
  // bounds
  std::vector<std::string> splits;
  bool all_orientations = false;
  std::size_t known_r1 = 0, external_q1 = 0;
  // reproduce
  std::string claim;
  bool all = false, list = false;
  std::size_t random_networks = 200;
  // fixtures
  std::string write_dir, check_dir;
};

int cmd_mincut(const Args& a) {
  const Network net = load_network(a.file);
  print(cut_to_json(net, min_cut(net, {20, a.threads})));
  return kOk;
}

int cmd_rank(const Args& a) {
  const Network net = load_network(a.file);
  const R1Estimate est = estimate_r1(net, PrimeField(a.prime), {a.trials, a.seed, a.threads});
  Json j;
  j["r1_lower"] = est.r1_lower;
  j["mc_upper"] = big_to_json(est.mc_upper);
  j["failure_bound"] = boost::multiprecision::numerator(est.failure_bound).str() + "/" +
                       boost::multiprecision::denominator(est.failure_bound).str();
  j["prime"] = a.prime;
  j["trials"] = est.trials;
  j["seed"] = a.seed;
  j["rows"] = est.rows;
  j["cols"] = est.cols;
  j["witness_seed"] = est.witness_seed;
  if (!a.witness_out.empty()) write_file(a.witness_out, assignment_to_json(est.witness).dump(2) + "\n");
  print(j);
  return BigInt(est.r1_lower) <= est.mc_upper ? kOk : kFail;
}

int cmd_c1(const Args& a, const CLI::Option* budget_flag) {
  const Network net = load_network(a.file);
  SearchConfig cfg;
  cfg.node_budget = resolve_budget(budget_flag, a.budget);
  cfg.fix_source_bijection = !a.no_bijection;
  cfg.shard_index = a.shard_index;
  cfg.shard_count = a.shard_count;
  cfg.threads = a.threads;
  if (a.exact_up_to > 0) {
    Json j;
    C1Result r;
    try {
      r = c1_exact(net, a.exact_up_to, cfg);
    } catch (const BudgetExceeded& e) {
      print({{"status", "budget_exceeded"}, {"message", e.what()}});
      return kBudget;
    }
    j["c1"] = r.value;
    j["directed_mc"] = big_to_json(r.directed_mc);
    j["l_max"] = a.exact_up_to;
    j["trace"] = Json::array();
    for (const auto& [l, s] : r.trace) j["trace"].push_back({{"l", l}, {"status", std::string(to_string(s))}});
    if (r.witness) {
      j["witness"] = protocol_to_json(*r.witness);
      if (!a.witness_out.empty()) write_file(a.witness_out, protocol_to_json(*r.witness).dump(2) + "\n");
    }
    print(j);
    return kOk;
  }
  if (a.l == 0) throw InvalidInput("c1 needs --l or --exact-up-to");
  cfg.l = a.l;
  const CodingGraph g = coding_graph(net);
  std::cerr << "search space: " << search_space(g, a.l, cfg.fix_source_bijection && g.source_symbols == a.l).str()
            << " table combinations\n";
  const SearchResult r = exhaustive_achievable(net, cfg);
  if (r.witness && !a.witness_out.empty()) write_file(a.witness_out, protocol_to_json(*r.witness).dump(2) + "\n");
  print(search_to_json(r, a.l));
  if (r.witness && !is_valid(net, *r.witness)) return kFail;
  return r.status == SearchStatus::BudgetExceeded ? kBudget : kOk;
}

int cmd_transform(const Args& a) {
  const Network net = load_network(a.file);
  const auto p = split_colon(a.op);
  if (p.empty()) throw InvalidInput("empty --op");
  const std::string& kind = p[0];
  auto arg = [&](std::size_t want) {
    if (p.size() != want) throw InvalidInput("malformed --op \"" + a.op + "\"");
  };
  if (kind == "split") {
    arg(4);
    std::cout << dump_network(split_cycle_edge(net, {p[1], parse_uint(p[2], "a"), parse_uint(p[3], "b")}));
  } else if (kind == "power") {
    arg(2);
    std::cout << dump_network(tensor_power(net, static_cast<unsigned>(parse_uint(p[1], "n"))));
  } else if (kind == "scale") {
    arg(2);
    std::cout << dump_network(scale(net, parse_uint(p[1], "k")));
  } else if (kind == "round") {
    arg(2);
    const RoundedPair rp = round_networks(net, static_cast<unsigned>(parse_uint(p[1], "n")));
    print({{"lower", network_to_json(rp.lower)}, {"upper", network_to_json(rp.upper)}, {"c1", rp.c1}, {"c2", rp.c2}});
  } else if (kind == "teleport") {
    arg(2);
    const TeleportReduction tr = teleport_reduce_scaled(net, parse_uint(p[1], "k"));
    print({{"through_rank", big_to_json(tr.through_rank)}, {"residual", network_to_json(tr.residual)}});
  } else {
    throw InvalidInput("unknown --op \"" + kind + "\"");
  }
  return kOk;
}

int cmd_bounds(const Args& a, const CLI::Option* budget_flag, const CLI::Option* known, const CLI::Option* external) {
  const Network net = load_network(a.file);
  ReportOptions o;
  for (const auto& s : a.splits) o.splits.push_back(parse_split(s));
  o.all_orientations = a.all_orientations;
  o.rank_trials = a.trials;
  o.seed = a.seed;
  o.prime = a.prime;
  o.coding_budget = resolve_budget(budget_flag, a.budget);
  o.threads = a.threads;
  if (known->count()) o.known_r1 = a.known_r1;
  if (external->count()) o.external_q1 = a.external_q1;
  const CapacityReport r = bounds_report(net, o);
  print(report_to_json(r));
  return r.ok() ? kOk : kFail;
}

int cmd_reproduce(const Args& a, const CLI::Option* budget_flag) {
  if (a.list) {
    for (const auto& c : claims()) std::cout << c.name << "  " << c.summary << "\n";
    return kOk;
  }
  ReproduceOptions o;
  o.seed = a.seed;
  o.threads = a.threads;
  o.coding_budget = resolve_budget(budget_flag, a.budget);
  o.random_networks = a.random_networks;
  std::vector<std::string> names;
  if (!a.claim.empty()) {
    names.push_back(a.claim);
  } else if (a.all) {
    for (const auto& c : claims()) names.push_back(c.name);
  } else {
    throw InvalidInput("reproduce needs --claim NAME, --all or --list");
  }
  bool pass = true;
  for (const auto& n : names) {
    const ClaimResult r = run_claim(n, o);
    std::cout << format_claim(r) << std::endl;
    pass = pass && r.pass;
  }
  return pass ? kOk : kFail;
}

int cmd_fixtures(const Args& a) {
  namespace fs = std::filesystem;
  if (!a.write_dir.empty()) {
    fs::create_directories(a.write_dir);
    for (const auto& f : fixture_catalog()) write_file((fs::path(a.write_dir) / (f.name + ".json")).string(), dump_network(f.network));
    write_file((fs::path(a.write_dir) / "split_n4_protocol.json").string(), protocol_to_json(split_n4_protocol()).dump(2) + "\n");
    write_file((fs::path(a.write_dir) / "oriented_n2_protocol.json").string(),
               protocol_to_json(oriented_n2_protocol()).dump(2) + "\n");
    return kOk;
  }
  if (!a.check_dir.empty()) {
    bool ok = true;
    for (const auto& f : fixture_catalog()) {
      const std::string path = (fs::path(a.check_dir) / (f.name + ".json")).string();
      const std::string text = read_file(path);
      const bool same = text == dump_network(f.network) && dump_network(parse_network(text)) == text;
      std::cout << f.name << " " << (same ? "ok" : "MISMATCH") << "\n";
      ok = ok && same;
    }
    return ok ? kOk : kFail;
  }
  for (const auto& f : fixture_catalog()) std::cout << f.name << "  " << f.description << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entcap: capacities of entanglement networks"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--threads", a.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));

  auto* mincut = app.add_subcommand("mincut", "multiplicative min-cut with witness");
  mincut->add_option("FILE", a.file)->required();

  auto* rank = app.add_subcommand("rank", "randomized lower bound on the tensor-network rank capacity");
  rank->add_option("FILE", a.file)->required();
  rank->add_option("--prime", a.prime, "field modulus");
  rank->add_option("--trials", a.trials, "independent random assignments");
  rank->add_option("--seed", a.seed);
  rank->add_option("--witness-out", a.witness_out, "write the best tensor assignment here");

  auto* c1 = app.add_subcommand("c1", "one-shot coding search");
  c1->add_option("FILE", a.file)->required();
  c1->add_option("--l", a.l, "alphabet size to decide");
  c1->add_option("--exact-up-to", a.exact_up_to, "largest achievable l up to this bound");
  auto* c1_budget = c1->add_option("--budget", a.budget, "table-entry assignments per shard");
  c1->add_flag("--no-source-bijection", a.no_bijection, "search the source encoder even when l equals its alphabet");
  c1->add_option("--shard-index", a.shard_index);
  c1->add_option("--shard-count", a.shard_count)->check(CLI::PositiveNumber);
  c1->add_option("--witness-out", a.witness_out, "write the witness protocol here");

  auto* transform = app.add_subcommand("transform", "network rewrites");
  transform->add_option("FILE", a.file)->required();
  transform->add_option("--op", a.op, "split:EDGE:a:b | power:n | scale:k | round:n | teleport:k")->required();

  auto* bounds = app.add_subcommand("bounds", "capacity report with all bound checks");
  bounds->add_option("FILE", a.file)->required();
  bounds->add_option("--split", a.splits, "EDGE:a:b, repeatable");
  bounds->add_flag("--all-orientations", a.all_orientations, "also enumerate directions of terminal edges");
  bounds->add_option("--trials", a.trials);
  bounds->add_option("--seed", a.seed);
  bounds->add_option("--prime", a.prime);
  auto* bounds_budget = bounds->add_option("--budget", a.budget);
  auto* known = bounds->add_option("--known-r1", a.known_r1, "rank capacity established elsewhere");
  auto* external = bounds->add_option("--external-q1", a.external_q1, "reported value, recorded unverified");

  auto* reproduce = app.add_subcommand("reproduce", "check the reference claims");
  auto* claim_opt = reproduce->add_option("--claim", a.claim);
  auto* all_opt = reproduce->add_flag("--all", a.all);
  auto* list_opt = reproduce->add_flag("--list", a.list);
  claim_opt->excludes(all_opt)->excludes(list_opt);
  all_opt->excludes(list_opt);
  reproduce->add_option("--seed", a.seed);
  auto* repro_budget = reproduce->add_option("--budget", a.budget);
  reproduce->add_option("--random-networks", a.random_networks);

  auto* fixtures = app.add_subcommand("fixtures", "list, write or check the fixture files");
  auto* write_opt = fixtures->add_option("--write", a.write_dir, "write canonical JSON into DIR");
  fixtures->add_option("--check", a.check_dir, "compare DIR byte-for-byte")->excludes(write_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*mincut) return cmd_mincut(a);
    if (*rank) return cmd_rank(a);
    if (*c1) return cmd_c1(a, c1_budget);
    if (*transform) return cmd_transform(a);
    if (*bounds) return cmd_bounds(a, bounds_budget, known, external);
    if (*reproduce) return cmd_reproduce(a, repro_budget);
    if (*fixtures) return cmd_fixtures(a);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
