#include "entcap/transforms.hpp"

#include "entcap/error.hpp"
#include "entcap/mincut.hpp"

#include <algorithm>

namespace entcap {

VertexId early_stage(const VertexId& v) { return v + ".early"; }
VertexId late_stage(const VertexId& v) { return v + ".late"; }

namespace {

bool is_staged(const Network& net, const VertexId& v) {
  return std::any_of(net.stages.begin(), net.stages.end(),
                     [&](const StagePair& sp) { return sp.early == v || sp.late == v; });
}

}  // namespace

Network split_cycle_edge(const Network& net, const SplitSpec& spec) {
  require_valid(net);
  const Edge* target = net.find_edge(spec.edge);
  if (!target) throw InvalidInput("split: unknown edge \"" + spec.edge + "\"");
  if (spec.a < 1 || spec.b < 1) throw InvalidInput("split: factors must be >= 1");
  if (spec.a * spec.b != target->dim || target->dim % spec.a != 0) {
    throw InvalidInput("split: " + std::to_string(spec.a) + "*" + std::to_string(spec.b) + " does not factor dimension " +
                       std::to_string(target->dim) + " of edge \"" + spec.edge + "\"");
  }
  const VertexId u = target->u;
  const VertexId v = target->v;
  if (u == v) throw InvalidInput("split: edge \"" + spec.edge + "\" is a self-loop");
  if (net.is_terminal(u) || net.is_terminal(v)) {
    throw InvalidInput("split: edge \"" + spec.edge + "\" touches a source or sink");
  }
  if (is_staged(net, u) || is_staged(net, v)) throw InvalidInput("split: endpoint already split");
  for (const auto& x : {u, v}) {
    for (const auto& name : {early_stage(x), late_stage(x)}) {
      if (net.has_vertex(name)) throw InvalidInput("split: vertex name \"" + name + "\" already taken");
    }
  }

  Network out;
  out.sources = net.sources;
  out.sinks = net.sinks;
  out.stages = net.stages;
  for (const auto& x : net.vertices) {
    if (x == u || x == v) {
      out.vertices.push_back(early_stage(x));
      out.vertices.push_back(late_stage(x));
    } else {
      out.vertices.push_back(x);
    }
  }
  out.stages.push_back({early_stage(u), late_stage(u)});
  out.stages.push_back({early_stage(v), late_stage(v)});

  for (const auto& e : net.edges) {
    if (e.id == spec.edge) {
      out.edges.push_back({spec.edge + ".a", early_stage(v), late_stage(u), spec.a, Orientation::UV});
      out.edges.push_back({spec.edge + ".b", early_stage(u), late_stage(v), spec.b, Orientation::UV});
      continue;
    }
    Edge f = e;
    const bool touches = f.u == u || f.u == v || f.v == u || f.v == v;
    if (touches && f.is_self_loop()) continue;
    if (touches && !f.directed()) {
      if (net.is_source(f.u) || net.is_sink(f.v)) {
        f.orientation = Orientation::UV;
      } else if (net.is_source(f.v) || net.is_sink(f.u)) {
        f.orientation = Orientation::VU;
      } else {
        throw InvalidInput("split: edge \"" + f.id + "\" at a split vertex needs a direction");
      }
    }
    if (touches) {
      // Tail side leaves from the late stage, head side enters the early stage.
      auto restage = [&](VertexId& end, bool is_tail) {
        if (end == u || end == v) end = is_tail ? late_stage(end) : early_stage(end);
      };
      const bool u_is_tail = f.orientation == Orientation::UV;
      restage(f.u, u_is_tail);
      restage(f.v, !u_is_tail);
    }
    out.edges.push_back(std::move(f));
  }
  if (!is_acyclic(out)) throw CyclicNetwork("split: result still has a directed cycle");
  return out;
}

Network unsplit(const Network& split, const SplitSpec& spec) {
  const Edge* ea = split.find_edge(spec.edge + ".a");
  const Edge* eb = split.find_edge(spec.edge + ".b");
  if (!ea || !eb) throw InvalidInput("unsplit: split edges of \"" + spec.edge + "\" not found");
  auto base = [](const VertexId& x) {
    for (const char* suffix : {".early", ".late"}) {
      const std::string s(suffix);
      if (x.size() > s.size() && x.compare(x.size() - s.size(), s.size(), s) == 0) return x.substr(0, x.size() - s.size());
    }
    return x;
  };
  const VertexId u = base(ea->v);
  const VertexId v = base(ea->u);
  auto merged = [&](const VertexId& x) {
    const VertexId b = base(x);
    return (b == u || b == v) ? b : x;
  };

  Network out;
  out.sources = split.sources;
  out.sinks = split.sinks;
  for (const auto& x : split.vertices) {
    const VertexId m = merged(x);
    if (std::find(out.vertices.begin(), out.vertices.end(), m) == out.vertices.end()) out.vertices.push_back(m);
  }
  for (const auto& sp : split.stages) {
    if (merged(sp.early) == sp.early) out.stages.push_back(sp);
  }
  for (const auto& e : split.edges) {
    if (e.id == eb->id) continue;
    if (e.id == ea->id) {
      out.edges.push_back({spec.edge, u, v, ea->dim * eb->dim, Orientation::Undirected});
      continue;
    }
    out.edges.push_back({e.id, merged(e.u), merged(e.v), e.dim, Orientation::Undirected});
  }
  return out;
}

RelayDiamond match_relay_diamond(const Network& net) {
  require_valid(net);
  auto fail = [](const std::string& why) { throw InvalidInput("not a two-relay diamond network: " + why); };
  if (!net.stages.empty()) fail("has split stages");
  if (net.sources.size() != 1 || net.sinks.size() != 1) fail("needs one source and one sink");
  if (net.vertices.size() != 4 || net.edges.size() != 5) fail("needs 4 vertices and 5 edges");
  RelayDiamond d;
  d.source = net.sources[0];
  d.sink = net.sinks[0];
  std::vector<VertexId> relays = net.internal_vertices();

  std::vector<const Edge*> edges;
  for (const auto& e : net.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  auto joins = [](const Edge* e, const VertexId& x, const VertexId& y) {
    return (e->u == x && e->v == y) || (e->u == y && e->v == x);
  };
  auto unique_edge = [&](const VertexId& x, const VertexId& y) -> EdgeId {
    const Edge* hit = nullptr;
    for (const Edge* e : edges) {
      if (joins(e, x, y)) {
        if (hit) fail("parallel edges between \"" + x + "\" and \"" + y + "\"");
        hit = e;
      }
    }
    if (!hit) fail("missing edge between \"" + x + "\" and \"" + y + "\"");
    return hit->id;
  };
  EdgeId s0 = unique_edge(d.source, relays[0]);
  EdgeId s1 = unique_edge(d.source, relays[1]);
  if (s1 < s0) {
    std::swap(relays[0], relays[1]);
    std::swap(s0, s1);
  }
  d.upper = relays[0];
  d.lower = relays[1];
  d.source_upper = s0;
  d.source_lower = s1;
  d.upper_sink = unique_edge(d.upper, d.sink);
  d.lower_sink = unique_edge(d.lower, d.sink);
  d.middle = unique_edge(d.upper, d.lower);
  return d;
}

TeleportReduction teleport_reduce_scaled(const Network& net, Dim k) {
  if (k < 1) throw InvalidInput("teleport: k must be >= 1");
  const RelayDiamond d = match_relay_diamond(net);
  for (const auto& e : net.edges) {
    if (e.dim % k != 0) {
      throw InvalidInput("teleport: dimension " + std::to_string(e.dim) + " of edge \"" + e.id + "\" is not a multiple of " +
                         std::to_string(k));
    }
  }
  TeleportReduction r;
  r.through_rank = BigInt(k) * k;
  r.residual = net;
  for (auto& e : r.residual.edges) {
    if (e.id != d.middle) e.dim /= k;
  }
  return r;
}

namespace {

std::pair<Dim, Dim> power_of_two_bracket(Dim dim, unsigned n) {
  const BigInt x = pow_big(dim, n);
  const unsigned msb = static_cast<unsigned>(boost::multiprecision::msb(x));
  const bool exact = x == (BigInt(1) << msb);
  const unsigned up = exact ? msb : msb + 1;
  if (up >= 64) throw Overflow("rounded dimension 2^" + std::to_string(up) + " exceeds 64 bits");
  return {Dim{1} << msb, Dim{1} << up};
}

}  // namespace

RoundedPair round_networks(const Network& net, unsigned n) {
  if (n < 1) throw InvalidInput("round: n must be >= 1");
  require_valid(net);
  RoundedPair rp;
  rp.lower = undirected_shadow(net);
  rp.upper = rp.lower;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    auto [lo, hi] = power_of_two_bracket(net.edges[i].dim, n);
    rp.lower.edges[i].dim = lo;
    rp.upper.edges[i].dim = hi;
  }
  rp.c1 = min_cut(rp.lower).nontrivial_edge_count(rp.lower);
  const Network power = undirected_shadow(tensor_power(net, n));
  rp.c2 = min_cut(power).nontrivial_edge_count(power);
  return rp;
}

SandwichReport sandwich_check(const Network& net, unsigned n, const RankEstimator& rank_estimator) {
  SandwichReport s;
  s.n = n;
  const RoundedPair rp = round_networks(net, n);
  const Network power = undirected_shadow(tensor_power(net, n));
  s.mc_power = min_cut(power).value;
  s.mc_lower = min_cut(rp.lower).value;
  s.mc_upper = min_cut(rp.upper).value;
  s.r1 = rank_estimator(power);
  s.c1 = rp.c1;
  s.c2 = rp.c2;
  s.floor_bound = BigRational(s.mc_power, BigInt(1) << s.c1);
  s.ceiling_bound = s.mc_power << s.c2;
  s.chain_holds = s.mc_lower <= s.r1 && BigInt(s.r1) <= s.mc_upper;
  s.bounds_hold = s.floor_bound <= BigRational(s.mc_lower) && s.mc_upper <= s.ceiling_bound;
  return s;
}

}  // namespace entcap
