#include "entcap/mincut.hpp"

#include "entcap/error.hpp"

#include <algorithm>
#include <set>
#include <thread>
#include <unordered_map>

namespace entcap {

std::size_t Cut::nontrivial_edge_count(const Network& net) const {
  std::size_t n = 0;
  for (const auto& id : crossing) {
    const Edge* e = net.find_edge(id);
    if (e && e->dim > 1) ++n;
  }
  return n;
}

BigInt cut_value(const Network& net, const std::vector<VertexId>& s_side, std::vector<EdgeId>* crossing) {
  std::set<VertexId> inside(s_side.begin(), s_side.end());
  BigInt value = 1;
  for (const auto& e : net.edges) {
    bool ui = inside.count(e.u) > 0;
    bool vi = inside.count(e.v) > 0;
    bool crosses = false;
    switch (e.orientation) {
      case Orientation::Undirected: crosses = ui != vi; break;
      case Orientation::UV: crosses = ui && !vi; break;
      case Orientation::VU: crosses = vi && !ui; break;
    }
    if (!crosses) continue;
    value *= e.dim;
    if (crossing) crossing->push_back(e.id);
  }
  return value;
}

namespace {

struct CompactEdge {
  // Group index per endpoint; groups [0, free) are free, `free` is the
  // super-source, `free + 1` the super-sink.
  std::size_t a, b;
  Dim dim;
  Orientation orientation;
};

struct Problem {
  std::vector<std::vector<VertexId>> groups;  // free groups only
  std::vector<CompactEdge> edges;
  std::size_t n_free = 0;
};

Problem compact(const Network& net) {
  // Union stage pairs; sources and sinks collapse into two super-vertices.
  std::unordered_map<VertexId, VertexId> rep;
  for (const auto& v : net.vertices) rep[v] = v;
  for (const auto& sp : net.stages) rep[sp.late] = sp.early;

  Problem p;
  std::unordered_map<VertexId, std::size_t> group_of_rep;
  for (const auto& v : net.vertices) {
    if (net.is_terminal(v)) continue;
    const auto& r = rep[v];
    auto [it, fresh] = group_of_rep.emplace(r, p.groups.size());
    if (fresh) p.groups.emplace_back();
    p.groups[it->second].push_back(v);
  }
  p.n_free = p.groups.size();
  auto group = [&](const VertexId& v) -> std::size_t {
    if (net.is_source(v)) return p.n_free;
    if (net.is_sink(v)) return p.n_free + 1;
    return group_of_rep.at(rep.at(v));
  };
  for (const auto& e : net.edges) {
    if (e.dim == 1) continue;
    auto a = group(e.u);
    auto b = group(e.v);
    if (a == b) continue;
    p.edges.push_back({a, b, e.dim, e.orientation});
  }
  return p;
}

struct Candidate {
  BigInt value;
  std::vector<VertexId> s_side;
  bool valid = false;
};

bool better(const Candidate& x, const Candidate& best) {
  if (!best.valid) return true;
  if (x.value != best.value) return x.value < best.value;
  return x.s_side < best.s_side;
}

bool in_source_side(std::size_t group, std::uint64_t mask, std::size_t n_free) {
  if (group == n_free) return true;
  if (group == n_free + 1) return false;
  return (mask >> group) & 1u;
}

bool crosses(const CompactEdge& e, std::uint64_t mask, std::size_t n_free) {
  bool ai = in_source_side(e.a, mask, n_free);
  bool bi = in_source_side(e.b, mask, n_free);
  switch (e.orientation) {
    case Orientation::UV: return ai && !bi;
    case Orientation::VU: return bi && !ai;
    default: return ai != bi;
  }
}

// Product over crossing edges; uint64 fast path, BigInt on overflow.
BigInt mask_value(const Problem& p, std::uint64_t mask) {
  std::uint64_t acc = 1;
  for (const auto& e : p.edges) {
    if (crosses(e, mask, p.n_free) && __builtin_mul_overflow(acc, e.dim, &acc)) {
      BigInt big = 1;
      for (const auto& f : p.edges) {
        if (crosses(f, mask, p.n_free)) big *= f.dim;
      }
      return big;
    }
  }
  return acc;
}

std::vector<VertexId> side_of(const Network& net, const Problem& p, std::uint64_t mask) {
  std::vector<VertexId> side(net.sources.begin(), net.sources.end());
  for (std::size_t g = 0; g < p.n_free; ++g) {
    if ((mask >> g) & 1u) side.insert(side.end(), p.groups[g].begin(), p.groups[g].end());
  }
  std::sort(side.begin(), side.end());
  return side;
}

}  // namespace

Cut min_cut(const Network& net, const MinCutOptions& opts) {
  require_valid(net);
  Problem p = compact(net);
  if (p.n_free > opts.max_free_vertices || p.n_free >= 63) {
    throw TooLarge("min_cut: " + std::to_string(p.n_free) + " free vertices exceed the enumeration threshold of " +
                   std::to_string(opts.max_free_vertices));
  }
  const std::uint64_t total = std::uint64_t{1} << p.n_free;
  unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(total)));

  // Each shard keeps its best by (value, lexicographic S~), so the merge is
  // independent of scheduling.
  std::vector<Candidate> best(threads);
  auto run = [&](unsigned shard) {
    Candidate& b = best[shard];
    for (std::uint64_t mask = shard; mask < total; mask += threads) {
      Candidate c;
      c.value = mask_value(p, mask);
      if (b.valid && c.value > b.value) continue;
      c.s_side = side_of(net, p, mask);
      c.valid = true;
      if (better(c, b)) b = std::move(c);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  Candidate winner;
  for (auto& c : best) {
    if (c.valid && better(c, winner)) winner = std::move(c);
  }
  Cut cut;
  cut.s_side = std::move(winner.s_side);
  cut.value = cut_value(net, cut.s_side, &cut.crossing);
  return cut;
}

}  // namespace entcap
