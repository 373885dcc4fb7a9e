#include "entcap/coding.hpp"

#include "entcap/error.hpp"
#include "entcap/mincut.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <set>
#include <thread>
#include <unordered_map>

namespace entcap {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Witness: return "witness";
    case SearchStatus::Impossible: return "impossible";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "impossible";
}

const CodingNode* CodingGraph::find_node(std::string_view v) const {
  for (const auto& n : nodes) {
    if (n.vertex == v) return &n;
  }
  return nullptr;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const std::string& what) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow(what + " exceeds 64 bits");
  return r;
}

}  // namespace

CodingGraph coding_graph(const Network& net) {
  require_valid(net);
  CodingGraph g;
  for (const auto& e : net.edges) {
    if (e.is_self_loop()) continue;
    if (!e.directed()) throw InvalidInput("coding needs a directed network; edge \"" + e.id + "\" is undirected");
    if (net.is_source(e.head()) || net.is_sink(e.tail())) continue;
    g.edges.push_back(e);
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });

  std::unordered_map<VertexId, std::size_t> decl;
  for (std::size_t i = 0; i < net.vertices.size(); ++i) decl[net.vertices[i]] = i;
  std::unordered_map<VertexId, VertexId> early_of;
  for (const auto& sp : net.stages) early_of[sp.late] = sp.early;

  std::map<VertexId, std::vector<std::size_t>> ins, outs;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (net.is_source(e.tail())) {
      g.source_outputs.push_back(i);
      g.source_symbols = checked_mul(g.source_symbols, e.dim, "source alphabet");
    } else {
      outs[e.tail()].push_back(i);
    }
    if (net.is_sink(e.head())) {
      g.sink_inputs.push_back(i);
    } else {
      ins[e.head()].push_back(i);
    }
  }

  // Kahn over internal vertices; stage links count as dependencies.
  const auto internal = net.internal_vertices();
  std::unordered_map<VertexId, std::size_t> indeg;
  std::unordered_map<VertexId, std::vector<VertexId>> succ;
  for (const auto& v : internal) indeg[v] = 0;
  for (const auto& e : g.edges) {
    if (net.is_terminal(e.tail()) || net.is_terminal(e.head())) continue;
    succ[e.tail()].push_back(e.head());
    ++indeg[e.head()];
  }
  for (const auto& sp : net.stages) {
    succ[sp.early].push_back(sp.late);
    ++indeg[sp.late];
  }
  auto by_decl = [&](const VertexId& a, const VertexId& b) { return decl.at(a) > decl.at(b); };
  std::priority_queue<VertexId, std::vector<VertexId>, decltype(by_decl)> ready(by_decl);
  for (const auto& v : internal) {
    if (indeg[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    CodingNode node;
    node.vertex = v;
    std::vector<std::size_t> inputs = ins[v];
    if (auto it = early_of.find(v); it != early_of.end()) {
      const auto& extra = ins[it->second];
      inputs.insert(inputs.end(), extra.begin(), extra.end());
      std::sort(inputs.begin(), inputs.end());
      inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
    }
    node.inputs = std::move(inputs);
    node.outputs = outs[v];
    for (auto i : node.inputs) node.rows = checked_mul(node.rows, g.edges[i].dim, "table rows of \"" + v + "\"");
    for (auto i : node.outputs) node.symbols = checked_mul(node.symbols, g.edges[i].dim, "output alphabet of \"" + v + "\"");
    g.nodes.push_back(std::move(node));
    for (const auto& w : succ[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (g.nodes.size() != internal.size()) throw CyclicNetwork("coding needs an acyclic network; split cycles first");
  return g;
}

Json protocol_to_json(const ProtocolTable& pt) {
  Json j;
  j["l"] = pt.l;
  j["source"] = Json::array();
  for (const auto& row : pt.source) j["source"].push_back(row);
  j["nodes"] = Json::object();
  for (const auto& [v, table] : pt.nodes) j["nodes"][v] = {{"table", table}};
  return j;
}

ProtocolTable protocol_from_json(const Json& j) {
  auto fail = [](const std::string& m) -> void { throw InvalidInput("protocol: " + m); };
  if (!j.is_object()) fail("must be an object");
  for (const auto& [k, _] : j.items()) {
    if (k != "l" && k != "source" && k != "nodes") fail("unknown field \"" + k + "\"");
  }
  ProtocolTable pt;
  try {
    pt.l = j.at("l").get<std::size_t>();
    pt.source = j.at("source").get<std::vector<std::vector<std::uint64_t>>>();
    for (const auto& [v, jn] : j.at("nodes").items()) {
      for (const auto& [k, _] : jn.items()) {
        if (k != "table") fail("unknown field \"" + k + "\" in node \"" + v + "\"");
      }
      pt.nodes[v] = jn.at("table").get<std::vector<std::uint64_t>>();
    }
  } catch (const Json::exception& e) {
    fail(e.what());
  }
  return pt;
}

void check_shape(const CodingGraph& g, const ProtocolTable& pt) {
  if (pt.source.size() != pt.l) throw ShapeMismatch("source encoder must have exactly l rows");
  for (const auto& row : pt.source) {
    if (row.size() != g.source_outputs.size()) throw ShapeMismatch("source encoder row has the wrong arity");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] >= g.edges[g.source_outputs[i]].dim) {
        throw ShapeMismatch("source symbol outside the alphabet of edge \"" + g.edges[g.source_outputs[i]].id + "\"");
      }
    }
  }
  if (pt.nodes.size() != g.nodes.size()) throw ShapeMismatch("protocol must have one table per non-terminal vertex");
  for (const auto& n : g.nodes) {
    auto it = pt.nodes.find(n.vertex);
    if (it == pt.nodes.end()) throw ShapeMismatch("no table for \"" + n.vertex + "\"");
    if (it->second.size() != n.rows) throw ShapeMismatch("table of \"" + n.vertex + "\" has the wrong number of rows");
    for (auto v : it->second) {
      if (v >= n.symbols) throw ShapeMismatch("table of \"" + n.vertex + "\" emits a symbol outside its alphabet");
    }
  }
}

namespace {

std::size_t flatten(const CodingGraph& g, const std::vector<std::size_t>& edges,
                    const std::vector<std::uint64_t>& values) {
  std::size_t row = 0;
  for (auto e : edges) row = row * g.edges[e].dim + values[e];
  return row;
}

void unflatten(const CodingGraph& g, const std::vector<std::size_t>& edges, std::uint64_t code,
               std::vector<std::uint64_t>& values) {
  for (std::size_t i = edges.size(); i-- > 0;) {
    const Dim d = g.edges[edges[i]].dim;
    values[edges[i]] = code % d;
    code /= d;
  }
}

}  // namespace

std::vector<std::uint64_t> simulate(const CodingGraph& g, const ProtocolTable& pt, std::size_t message) {
  check_shape(g, pt);
  if (message >= pt.l) throw InvalidInput("message outside [0, l)");
  std::vector<std::uint64_t> values(g.edges.size(), 0);
  for (std::size_t i = 0; i < g.source_outputs.size(); ++i) values[g.source_outputs[i]] = pt.source[message][i];
  for (const auto& n : g.nodes) {
    unflatten(g, n.outputs, pt.nodes.at(n.vertex)[flatten(g, n.inputs, values)], values);
  }
  std::vector<std::uint64_t> out;
  for (auto e : g.sink_inputs) out.push_back(values[e]);
  return out;
}

std::vector<std::uint64_t> simulate(const Network& net, const ProtocolTable& pt, std::size_t message) {
  return simulate(coding_graph(net), pt, message);
}

bool is_valid(const CodingGraph& g, const ProtocolTable& pt) {
  std::set<std::vector<std::uint64_t>> seen;
  for (std::size_t m = 0; m < pt.l; ++m) {
    if (!seen.insert(simulate(g, pt, m)).second) return false;
  }
  return true;
}

bool is_valid(const Network& net, const ProtocolTable& pt) { return is_valid(coding_graph(net), pt); }

std::vector<std::uint64_t> tabulate(const CodingGraph& g, const VertexId& vertex, const NodeFunction& fn) {
  const CodingNode* n = g.find_node(vertex);
  if (!n) throw InvalidInput("no coding node \"" + vertex + "\"");
  std::vector<std::uint64_t> table(n->rows, 0);
  std::vector<std::uint64_t> values(g.edges.size(), 0);
  for (std::size_t row = 0; row < n->rows; ++row) {
    unflatten(g, n->inputs, row, values);
    std::map<EdgeId, std::uint64_t> in;
    for (auto e : n->inputs) in[g.edges[e].id] = values[e];
    auto out = fn(in);
    for (auto e : n->outputs) {
      auto it = out.find(g.edges[e].id);
      if (it == out.end()) throw InvalidInput("node function for \"" + vertex + "\" left edge \"" + g.edges[e].id + "\" unset");
      values[e] = it->second;
    }
    table[row] = flatten(g, n->outputs, values);
  }
  return table;
}

BigInt search_space(const CodingGraph& g, std::size_t l, bool source_fixed) {
  BigInt space = 1;
  if (!source_fixed) {
    for (std::size_t m = 0; m < l; ++m) space *= g.source_symbols;
  }
  for (const auto& n : g.nodes) {
    for (std::size_t r = 0; r < n.rows; ++r) space *= n.symbols;
  }
  return space;
}

namespace {

struct BudgetAbort {};

// One shard of the backtracking search. Levels are the tables in processing
// order: the source encoder (unless fixed) followed by the coding nodes.
class Searcher {
 public:
  Searcher(const CodingGraph& g, std::size_t l, bool source_fixed, std::uint64_t budget, std::size_t shard_index,
           std::size_t shard_count, const std::atomic<std::uint64_t>* best_ordinal)
      : g_(g),
        l_(l),
        source_fixed_(source_fixed),
        budget_(budget),
        shard_index_(shard_index),
        shard_count_(shard_count),
        best_ordinal_(best_ordinal) {
    build_levels();
  }

  SearchStatus run() {
    values_.assign(l_, std::vector<std::uint64_t>(g_.edges.size(), 0));
    if (source_fixed_) {
      // Canonical bijection: message index read row-major over source edges.
      for (std::size_t m = 0; m < l_; ++m) unflatten(g_, g_.source_outputs, m, values_[m]);
      if (!pairwise_distinct(initial_frontier_)) return SearchStatus::Impossible;
    }
    try {
      if (levels_.empty()) {
        if (!pairwise_distinct(initial_frontier_) || !claim_ordinal()) return SearchStatus::Impossible;
        witness_values_ = values_;
        return SearchStatus::Witness;
      }
      return enter_level(0) ? SearchStatus::Witness : SearchStatus::Impossible;
    } catch (const BudgetAbort&) {
      return SearchStatus::BudgetExceeded;
    }
  }

  std::uint64_t assignments() const { return assignments_; }
  std::uint64_t found_ordinal() const { return found_ordinal_; }

  ProtocolTable witness() const {
    ProtocolTable pt;
    pt.l = l_;
    for (std::size_t m = 0; m < l_; ++m) {
      std::vector<std::uint64_t> row;
      for (auto e : g_.source_outputs) row.push_back(witness_values_[m][e]);
      pt.source.push_back(std::move(row));
    }
    for (std::size_t t = 0; t < levels_.size(); ++t) {
      if (levels_[t].node == nullptr) continue;
      std::vector<std::uint64_t> table(levels_[t].rows, 0);
      for (std::size_t r = 0; r < table.size(); ++r) {
        if (witness_tables_[t][r] != kUnset) table[r] = witness_tables_[t][r];
      }
      pt.nodes[levels_[t].node->vertex] = std::move(table);
    }
    return pt;
  }

 private:
  static constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

  struct Level {
    const CodingNode* node = nullptr;  // null for the source encoder
    std::vector<std::size_t> outputs;
    std::size_t rows = 0;
    std::uint64_t symbols = 1;
    std::vector<std::size_t> frontier;  // edges that later levels or the sink still read
  };

  void build_levels() {
    if (!source_fixed_) {
      Level src;
      src.outputs = g_.source_outputs;
      src.rows = l_;
      src.symbols = g_.source_symbols;
      levels_.push_back(std::move(src));
    }
    for (const auto& n : g_.nodes) {
      Level lv;
      lv.node = &n;
      lv.outputs = n.outputs;
      lv.rows = n.rows;
      lv.symbols = n.symbols;
      levels_.push_back(std::move(lv));
    }
    // produced[e]: level writing e (-1 for a fixed source); last_read[e]:
    // last level reading e (levels_.size() for the sink).
    const auto n_levels = static_cast<long>(levels_.size());
    std::vector<long> produced(g_.edges.size(), -1), last_read(g_.edges.size(), -2);
    for (long t = 0; t < n_levels; ++t) {
      for (auto e : levels_[t].outputs) produced[e] = t;
      if (levels_[t].node) {
        for (auto e : levels_[t].node->inputs) last_read[e] = std::max(last_read[e], t);
      }
    }
    for (auto e : g_.sink_inputs) last_read[e] = n_levels;
    auto frontier_after = [&](long t) {
      std::vector<std::size_t> f;
      for (std::size_t e = 0; e < g_.edges.size(); ++e) {
        if (produced[e] <= t && last_read[e] > t) f.push_back(e);
      }
      return f;
    };
    initial_frontier_ = frontier_after(-1);
    for (long t = 0; t < n_levels; ++t) levels_[t].frontier = frontier_after(t);
    tables_.assign(levels_.size(), {});
    witness_tables_.clear();
  }

  bool same_on(std::size_t a, std::size_t b, const std::vector<std::size_t>& edges) const {
    for (auto e : edges) {
      if (values_[a][e] != values_[b][e]) return false;
    }
    return true;
  }

  bool pairwise_distinct(const std::vector<std::size_t>& edges) const {
    for (std::size_t a = 0; a < l_; ++a) {
      for (std::size_t b = a + 1; b < l_; ++b) {
        if (same_on(a, b, edges)) return false;
      }
    }
    return true;
  }

  // Records this level-0 completion; false when it belongs to another shard
  // or cannot beat a witness some other shard already holds.
  bool claim_ordinal() {
    const std::uint64_t ordinal = ordinal_++;
    if (best_ordinal_ && ordinal > best_ordinal_->load(std::memory_order_relaxed)) {
      stop_ = true;
      return false;
    }
    if (ordinal % shard_count_ != shard_index_) return false;
    found_ordinal_ = ordinal;
    return true;
  }

  bool enter_level(std::size_t t) {
    Level& lv = levels_[t];
    std::vector<std::size_t> row_of(l_);
    for (std::size_t m = 0; m < l_; ++m) row_of[m] = lv.node ? flatten(g_, lv.node->inputs, values_[m]) : m;
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t m = 0; m < l_; ++m) members[row_of[m]].push_back(m);
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> reached(members.begin(), members.end());
    tables_[t].assign(lv.rows, kUnset);
    std::vector<std::size_t> settled;
    return assign_row(t, reached, 0, settled);
  }

  bool assign_row(std::size_t t, const std::vector<std::pair<std::size_t, std::vector<std::size_t>>>& reached,
                  std::size_t i, std::vector<std::size_t>& settled) {
    if (i == reached.size()) return level_done(t);
    const Level& lv = levels_[t];
    const auto& [row, group] = reached[i];
    for (std::uint64_t v = 0; v < lv.symbols; ++v) {
      if (stop_) return false;
      if (++assignments_ > budget_) throw BudgetAbort{};
      tables_[t][row] = v;
      for (auto m : group) unflatten(g_, lv.outputs, v, values_[m]);
      if (collides(group, settled, lv.frontier)) continue;
      const std::size_t before = settled.size();
      settled.insert(settled.end(), group.begin(), group.end());
      if (assign_row(t, reached, i + 1, settled)) return true;
      settled.resize(before);
    }
    tables_[t][row] = kUnset;
    return false;
  }

  bool collides(const std::vector<std::size_t>& group, const std::vector<std::size_t>& settled,
                const std::vector<std::size_t>& frontier) const {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (auto s : settled) {
        if (same_on(group[a], s, frontier)) return true;
      }
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        if (same_on(group[a], group[b], frontier)) return true;
      }
    }
    return false;
  }

  bool level_done(std::size_t t) {
    if (t == 0 && !claim_ordinal()) return false;
    if (t + 1 < levels_.size()) return enter_level(t + 1);
    witness_tables_ = tables_;
    witness_values_ = values_;
    return true;
  }

  const CodingGraph& g_;
  std::size_t l_;
  bool source_fixed_;
  std::uint64_t budget_;
  std::size_t shard_index_;
  std::size_t shard_count_;
  const std::atomic<std::uint64_t>* best_ordinal_;

  std::vector<Level> levels_;
  std::vector<std::size_t> initial_frontier_;
  std::vector<std::vector<std::uint64_t>> values_;  // [message][edge]
  std::vector<std::vector<std::uint64_t>> tables_;  // [level][row]
  std::vector<std::vector<std::uint64_t>> witness_tables_;
  std::vector<std::vector<std::uint64_t>> witness_values_;
  std::uint64_t assignments_ = 0;
  std::uint64_t ordinal_ = 0;
  std::uint64_t found_ordinal_ = 0;
  bool stop_ = false;
};

}  // namespace

SearchResult exhaustive_achievable(const Network& net, const SearchConfig& cfg) {
  if (cfg.l < 1) throw InvalidInput("alphabet size must be >= 1");
  if (cfg.node_budget == 0) throw InvalidInput("search budget must be positive");
  if (cfg.shard_count == 0 || cfg.shard_index >= cfg.shard_count) throw InvalidInput("bad shard specification");
  const CodingGraph g = coding_graph(net);

  SearchResult result;
  result.source_fixed = cfg.fix_source_bijection && cfg.l == g.source_symbols;
  result.space = search_space(g, cfg.l, result.source_fixed);

  if (cfg.threads <= 1 || cfg.shard_count > 1) {
    Searcher s(g, cfg.l, result.source_fixed, cfg.node_budget, cfg.shard_index, cfg.shard_count, nullptr);
    result.status = s.run();
    result.assignments = s.assignments();
    if (result.status == SearchStatus::Witness) result.witness = s.witness();
    return result;
  }

  const unsigned n = cfg.threads;
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<SearchStatus> status(n);
  std::vector<std::optional<ProtocolTable>> witness(n);
  std::vector<std::uint64_t> ordinal(n, 0), work(n, 0);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) {
    pool.emplace_back([&, i] {
      Searcher s(g, cfg.l, result.source_fixed, cfg.node_budget, i, n, &best);
      status[i] = s.run();
      work[i] = s.assignments();
      if (status[i] == SearchStatus::Witness) {
        witness[i] = s.witness();
        ordinal[i] = s.found_ordinal();
        std::uint64_t cur = best.load();
        while (ordinal[i] < cur && !best.compare_exchange_weak(cur, ordinal[i])) {
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  for (auto w : work) result.assignments += w;
  std::optional<std::size_t> pick;
  for (unsigned i = 0; i < n; ++i) {
    if (status[i] == SearchStatus::Witness && (!pick || ordinal[i] < ordinal[*pick])) pick = i;
  }
  bool exhausted = std::none_of(status.begin(), status.end(), [](SearchStatus s) { return s == SearchStatus::BudgetExceeded; });
  if (pick) {
    result.status = SearchStatus::Witness;
    result.witness = witness[*pick];
  } else {
    result.status = exhausted ? SearchStatus::Impossible : SearchStatus::BudgetExceeded;
  }
  return result;
}

C1Result c1_exact(const Network& net, std::size_t l_max, const SearchConfig& cfg) {
  C1Result out;
  out.directed_mc = min_cut(net).value;
  std::size_t cap = l_max;
  if (out.directed_mc < cap) cap = static_cast<std::size_t>(out.directed_mc);
  for (std::size_t l = 1; l <= cap; ++l) {
    SearchConfig c = cfg;
    c.l = l;
    SearchResult r = exhaustive_achievable(net, c);
    out.trace.emplace_back(l, r.status);
    if (r.status == SearchStatus::BudgetExceeded) {
      throw BudgetExceeded("c1: search budget exhausted at l=" + std::to_string(l));
    }
    if (r.status == SearchStatus::Impossible) return out;
    out.value = l;
    out.witness = std::move(r.witness);
  }
  return out;
}

}  // namespace entcap
