#include "entcap/network.hpp"

#include "entcap/error.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

namespace entcap {

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Undirected: return "undirected";
    case Orientation::UV: return "uv";
    case Orientation::VU: return "vu";
  }
  return "undirected";
}

Orientation orientation_from_string(std::string_view s) {
  if (s == "undirected") return Orientation::Undirected;
  if (s == "uv") return Orientation::UV;
  if (s == "vu") return Orientation::VU;
  throw InvalidInput("unknown orientation \"" + std::string(s) + "\"");
}

namespace {

bool contains(const std::vector<VertexId>& xs, std::string_view v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

}  // namespace

bool Network::is_source(std::string_view v) const { return contains(sources, v); }
bool Network::is_sink(std::string_view v) const { return contains(sinks, v); }
bool Network::has_vertex(std::string_view v) const { return contains(vertices, v); }

const Edge* Network::find_edge(std::string_view id) const {
  for (const auto& e : edges) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool Network::fully_directed() const {
  return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.directed(); });
}

std::vector<VertexId> Network::internal_vertices() const {
  std::vector<VertexId> out;
  for (const auto& v : vertices) {
    if (!is_terminal(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::string> validate(const Network& net) {
  std::vector<std::string> errs;
  std::set<VertexId> seen;
  for (const auto& v : net.vertices) {
    if (!seen.insert(v).second) errs.push_back("duplicate vertex \"" + v + "\"");
  }
  if (net.sources.empty()) errs.push_back("no sources");
  if (net.sinks.empty()) errs.push_back("no sinks");
  for (const auto& s : net.sources) {
    if (!seen.count(s)) errs.push_back("unknown source \"" + s + "\"");
  }
  for (const auto& t : net.sinks) {
    if (!seen.count(t)) errs.push_back("unknown sink \"" + t + "\"");
  }
  for (const auto& s : net.sources) {
    if (net.is_sink(s)) {
      errs.push_back("sources and sinks overlap at \"" + s + "\"");
    }
  }
  std::set<EdgeId> ids;
  for (const auto& e : net.edges) {
    if (!ids.insert(e.id).second) errs.push_back("duplicate edge id \"" + e.id + "\"");
    if (!seen.count(e.u)) errs.push_back("edge \"" + e.id + "\": unknown endpoint \"" + e.u + "\"");
    if (!seen.count(e.v)) errs.push_back("edge \"" + e.id + "\": unknown endpoint \"" + e.v + "\"");
    if (e.dim < 1) errs.push_back("edge \"" + e.id + "\": dimension < 1");
  }
  std::set<VertexId> staged;
  for (const auto& sp : net.stages) {
    for (const auto* v : {&sp.early, &sp.late}) {
      if (!seen.count(*v)) errs.push_back("stage pair: unknown vertex \"" + *v + "\"");
      if (net.is_terminal(*v)) errs.push_back("stage pair: terminal vertex \"" + *v + "\"");
      if (!staged.insert(*v).second) errs.push_back("stage pair: vertex \"" + *v + "\" staged twice");
    }
    if (sp.early == sp.late) errs.push_back("stage pair: early and late coincide at \"" + sp.early + "\"");
  }
  return errs;
}

void require_valid(const Network& net) {
  auto errs = validate(net);
  if (errs.empty()) return;
  std::string msg = "invalid network:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw InvalidInput(msg);
}

Network tensor_power(const Network& net, unsigned n) {
  if (n < 1) throw InvalidInput("tensor power exponent must be >= 1");
  Network out = net;
  for (auto& e : out.edges) {
    Dim acc = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (__builtin_mul_overflow(acc, e.dim, &acc)) {
        throw Overflow("edge \"" + e.id + "\": dimension^" + std::to_string(n) + " exceeds 64 bits");
      }
    }
    e.dim = acc;
  }
  return out;
}

Network scale(const Network& net, Dim k) {
  if (k < 1) throw InvalidInput("scale factor must be >= 1");
  Network out = net;
  for (auto& e : out.edges) {
    if (__builtin_mul_overflow(e.dim, k, &e.dim)) {
      throw Overflow("edge \"" + e.id + "\": scaled dimension exceeds 64 bits");
    }
  }
  return out;
}

Network orient(const Network& net, const std::map<EdgeId, Orientation>& assignment) {
  Network out = net;
  for (const auto& [id, dir] : assignment) {
    auto it = std::find_if(out.edges.begin(), out.edges.end(), [&](const Edge& e) { return e.id == id; });
    if (it == out.edges.end()) throw InvalidInput("orient: unknown edge id \"" + id + "\"");
    if (dir == Orientation::Undirected) throw InvalidInput("orient: edge \"" + id + "\" assigned no direction");
    it->orientation = dir;
  }
  for (const auto& e : out.edges) {
    if (!e.directed()) throw InvalidInput("orient: edge \"" + e.id + "\" left undirected");
  }
  return out;
}

Network bidirectional(const Network& net) {
  Network out = net;
  out.edges.clear();
  for (const auto& e : net.edges) {
    if (e.directed()) {
      out.edges.push_back(e);
      continue;
    }
    Edge fwd = e;
    fwd.id = e.id + "+";
    fwd.orientation = Orientation::UV;
    Edge bwd = e;
    bwd.id = e.id + "-";
    bwd.orientation = Orientation::VU;
    out.edges.push_back(std::move(fwd));
    out.edges.push_back(std::move(bwd));
  }
  return out;
}

Network undirected_shadow(const Network& net) {
  Network out = net;
  for (auto& e : out.edges) e.orientation = Orientation::Undirected;
  return out;
}

Network collapse_stages(const Network& net) {
  if (net.stages.empty()) return net;
  std::unordered_map<VertexId, VertexId> rename;
  for (const auto& sp : net.stages) rename[sp.late] = sp.early;
  auto mapped = [&](const VertexId& v) {
    auto it = rename.find(v);
    return it == rename.end() ? v : it->second;
  };
  Network out;
  out.sources = net.sources;
  out.sinks = net.sinks;
  for (const auto& v : net.vertices) {
    if (!rename.count(v)) out.vertices.push_back(v);
  }
  for (auto e : net.edges) {
    e.u = mapped(e.u);
    e.v = mapped(e.v);
    out.edges.push_back(std::move(e));
  }
  return out;
}

namespace {

// Adjacency over vertex indices for the directed part of the network.
std::vector<std::vector<std::size_t>> directed_adjacency(const Network& net) {
  std::unordered_map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < net.vertices.size(); ++i) index[net.vertices[i]] = i;
  std::vector<std::vector<std::size_t>> adj(net.vertices.size());
  for (const auto& e : net.edges) {
    if (!e.directed() || e.is_self_loop()) continue;
    adj[index.at(e.tail())].push_back(index.at(e.head()));
  }
  for (const auto& sp : net.stages) adj[index.at(sp.early)].push_back(index.at(sp.late));
  return adj;
}

}  // namespace

std::vector<VertexId> topological_order(const Network& net) {
  auto adj = directed_adjacency(net);
  std::vector<std::size_t> indeg(adj.size(), 0);
  for (const auto& outs : adj) {
    for (auto w : outs) ++indeg[w];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (indeg[i] == 0) ready.push(i);
  }
  std::vector<VertexId> order;
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    order.push_back(net.vertices[v]);
    for (auto w : adj[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (order.size() != net.vertices.size()) throw CyclicNetwork("network has a directed cycle");
  return order;
}

bool is_acyclic(const Network& net) {
  try {
    topological_order(net);
    return true;
  } catch (const CyclicNetwork&) {
    return false;
  }
}

}  // namespace entcap
