#include "entcap/tensor_network.hpp"

#include "entcap/error.hpp"
#include "entcap/mincut.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace entcap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return trial == 0 ? seed : splitmix64(seed ^ splitmix64(trial));
}

Json assignment_to_json(const TensorAssignment& ta) {
  Json j = Json::object();
  for (const auto& [v, t] : ta) j[v] = {{"edges", t.edges}, {"dims", t.dims}, {"entries", t.entries}};
  return j;
}

TensorAssignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("tensor assignment must be an object");
  TensorAssignment ta;
  for (const auto& [v, jt] : j.items()) {
    if (!jt.is_object() || jt.size() != 3 || !jt.contains("edges") || !jt.contains("dims") || !jt.contains("entries")) {
      throw InvalidInput("tensor at \"" + v + "\" needs exactly edges, dims, entries");
    }
    try {
      ta[v] = {jt.at("edges").get<std::vector<EdgeId>>(), jt.at("dims").get<std::vector<Dim>>(),
               jt.at("entries").get<std::vector<std::uint64_t>>()};
    } catch (const Json::exception& e) {
      throw InvalidInput("tensor at \"" + v + "\": " + e.what());
    }
  }
  return ta;
}

Network tensor_view(const Network& net) { return undirected_shadow(collapse_stages(net)); }

namespace {

bool touches_exactly_one(const Network& net, const Edge& e, bool (Network::*pred)(std::string_view) const) {
  return (net.*pred)(e.u) != (net.*pred)(e.v);
}

std::vector<const Edge*> sorted_by_id(std::vector<const Edge*> es) {
  std::sort(es.begin(), es.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  return es;
}

std::size_t checked_product(const std::vector<Dim>& dims, std::size_t limit, const char* what) {
  std::size_t n = 1;
  for (auto d : dims) {
    if (__builtin_mul_overflow(n, static_cast<std::size_t>(d), &n) || n > limit) {
      throw TooLarge(std::string(what) + " exceeds " + std::to_string(limit) + " entries");
    }
  }
  return n;
}

}  // namespace

BoundaryLayout boundary_layout(const Network& raw) {
  Network net = tensor_view(raw);
  std::vector<const Edge*> src, snk;
  for (const auto& e : net.edges) {
    if (touches_exactly_one(net, e, &Network::is_source)) src.push_back(&e);
    if (touches_exactly_one(net, e, &Network::is_sink)) snk.push_back(&e);
  }
  BoundaryLayout b;
  for (const Edge* e : sorted_by_id(src)) {
    b.source_edges.push_back(e->id);
    b.rows = checked_product({b.rows, e->dim}, std::size_t{1} << 40, "source boundary");
  }
  for (const Edge* e : sorted_by_id(snk)) {
    b.sink_edges.push_back(e->id);
    b.cols = checked_product({b.cols, e->dim}, std::size_t{1} << 40, "sink boundary");
  }
  return b;
}

TensorAssignment empty_assignment(const Network& raw) {
  require_valid(raw);
  Network net = tensor_view(raw);
  TensorAssignment ta;
  for (const auto& v : net.internal_vertices()) {
    std::vector<const Edge*> inc;
    for (const auto& e : net.edges) {
      if (!e.is_self_loop() && (e.u == v || e.v == v)) inc.push_back(&e);
    }
    VertexTensor t;
    for (const Edge* e : sorted_by_id(inc)) {
      t.edges.push_back(e->id);
      t.dims.push_back(e->dim);
    }
    t.entries.assign(checked_product(t.dims, std::size_t{1} << 26, "vertex tensor"), 0);
    ta.emplace(v, std::move(t));
  }
  return ta;
}

TensorAssignment random_assignment(const Network& net, const PrimeField& field, std::uint64_t seed) {
  TensorAssignment ta = empty_assignment(net);
  const std::uint64_t p = field.modulus();
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % p + 1) % p;  // largest multiple of p, minus one
  for (auto& [v, t] : ta) {
    const std::uint64_t key = splitmix64(splitmix64(seed) ^ fnv1a(v));
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      std::uint64_t x = splitmix64(key ^ splitmix64(i));
      while (x > limit) x = splitmix64(x);
      t.entries[i] = x % p;
    }
  }
  return ta;
}

namespace {

// Dense tensor whose indices carry integer labels; contraction sums over
// labels shared by both operands.
struct Labeled {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
  std::vector<std::uint64_t> data;
};

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Reorders indices so that labels appear in `order`.
Labeled permute(const Labeled& t, const std::vector<int>& order) {
  if (order == t.labels) return t;
  std::vector<std::size_t> pos(order.size());
  Labeled out;
  out.labels = order;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[i] = static_cast<std::size_t>(std::find(t.labels.begin(), t.labels.end(), order[i]) - t.labels.begin());
    out.dims.push_back(t.dims[pos[i]]);
  }
  const auto src_strides = strides_of(t.dims);
  out.data.resize(t.data.size());
  std::vector<std::size_t> idx(order.size(), 0);
  for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) src += idx[i] * src_strides[pos[i]];
    out.data[flat] = t.data[src];
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < out.dims[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

Labeled contract_pair(const Labeled& a, const Labeled& b, const PrimeField& f, std::size_t max_entries) {
  std::vector<int> shared, free_a, free_b;
  for (int l : a.labels) {
    (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end() ? shared : free_a).push_back(l);
  }
  for (int l : b.labels) {
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) free_b.push_back(l);
  }
  std::vector<int> order_a = free_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<int> order_b = shared;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());
  Labeled pa = permute(a, order_a);
  Labeled pb = permute(b, order_b);

  auto prod = [](const std::vector<std::size_t>& d, std::size_t from, std::size_t to) {
    return std::accumulate(d.begin() + from, d.begin() + to, std::size_t{1}, std::multiplies<>());
  };
  const std::size_t m = prod(pa.dims, 0, free_a.size());
  const std::size_t k = prod(pa.dims, free_a.size(), pa.dims.size());
  const std::size_t n = prod(pb.dims, shared.size(), pb.dims.size());
  if (m > max_entries / std::max<std::size_t>(n, 1)) throw TooLarge("intermediate tensor too large to contract");

  Labeled out;
  out.labels = free_a;
  out.labels.insert(out.labels.end(), free_b.begin(), free_b.end());
  out.dims.assign(pa.dims.begin(), pa.dims.begin() + static_cast<std::ptrdiff_t>(free_a.size()));
  out.dims.insert(out.dims.end(), pb.dims.begin() + static_cast<std::ptrdiff_t>(shared.size()), pb.dims.end());
  out.data.assign(m * n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      const std::uint64_t x = pa.data[i * k + s];
      if (x == 0) continue;
      const std::uint64_t* row = &pb.data[s * n];
      std::uint64_t* dst = &out.data[i * n];
      for (std::size_t j = 0; j < n; ++j) dst[j] = f.add(dst[j], f.mul(x, row[j]));
    }
  }
  return out;
}

}  // namespace

Matrix contract(const Network& raw, const TensorAssignment& ta, const PrimeField& field, std::size_t max_entries) {
  require_valid(raw);
  const Network net = tensor_view(raw);
  const TensorAssignment shape = empty_assignment(net);
  if (ta.size() != shape.size()) throw ShapeMismatch("assignment covers the wrong set of internal vertices");
  for (const auto& [v, expected] : shape) {
    auto it = ta.find(v);
    if (it == ta.end()) throw ShapeMismatch("no tensor for internal vertex \"" + v + "\"");
    const auto& t = it->second;
    if (t.edges != expected.edges || t.dims != expected.dims || t.entries.size() != expected.entries.size()) {
      throw ShapeMismatch("tensor at \"" + v + "\" does not match its incident edges");
    }
  }

  std::unordered_map<EdgeId, int> label;
  for (std::size_t i = 0; i < net.edges.size(); ++i) label[net.edges[i].id] = static_cast<int>(i);
  const int col_offset = static_cast<int>(net.edges.size());

  // Pieces: one per internal vertex plus a delta for each source-sink edge.
  std::vector<Labeled> pieces;
  for (const auto& v : net.internal_vertices()) {
    const auto& t = ta.at(v);
    Labeled l;
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      l.labels.push_back(label.at(t.edges[i]));
      l.dims.push_back(t.dims[i]);
    }
    l.data.reserve(t.entries.size());
    for (auto x : t.entries) l.data.push_back(x % field.modulus());
    pieces.push_back(std::move(l));
  }
  const BoundaryLayout layout = boundary_layout(net);
  std::vector<int> row_labels, col_labels;
  for (const auto& id : layout.source_edges) row_labels.push_back(label.at(id));
  for (const auto& id : layout.sink_edges) {
    const Edge* e = net.find_edge(id);
    bool direct = net.is_source(e->u) || net.is_source(e->v);
    col_labels.push_back(label.at(id) + (direct ? col_offset : 0));
    if (direct) {
      Labeled delta;
      delta.labels = {label.at(id), label.at(id) + col_offset};
      delta.dims = {e->dim, e->dim};
      delta.data.assign(e->dim * e->dim, 0);
      for (std::size_t i = 0; i < e->dim; ++i) delta.data[i * e->dim + i] = 1;
      pieces.push_back(std::move(delta));
    }
  }

  // Greedy: always absorb the piece sharing the most labels with the running
  // result, earliest piece on ties.
  Labeled acc{{}, {}, {1}};
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t step = 0; step < pieces.size(); ++step) {
    std::size_t pick = pieces.size();
    std::size_t best_shared = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (used[i]) continue;
      std::size_t shared = 0;
      for (int l : pieces[i].labels) shared += std::count(acc.labels.begin(), acc.labels.end(), l);
      if (pick == pieces.size() || shared > best_shared) {
        pick = i;
        best_shared = shared;
      }
    }
    used[pick] = true;
    acc = contract_pair(acc, pieces[pick], field, max_entries);
  }

  std::vector<int> order = row_labels;
  order.insert(order.end(), col_labels.begin(), col_labels.end());
  acc = permute(acc, order);
  Matrix m(layout.rows, layout.cols, field);
  for (std::size_t r = 0; r < layout.rows; ++r) {
    for (std::size_t c = 0; c < layout.cols; ++c) m.at(r, c) = acc.data[r * layout.cols + c];
  }
  return m;
}

R1Estimate estimate_r1(const Network& net, const PrimeField& field, const R1Options& opts) {
  if (opts.trials < 1) throw InvalidInput("estimate_r1 needs at least one trial");
  require_valid(net);
  const BoundaryLayout layout = boundary_layout(net);
  if (field.modulus() <= std::max(layout.rows, layout.cols)) {
    throw InvalidInput("prime " + std::to_string(field.modulus()) + " must exceed the boundary dimensions");
  }

  std::vector<std::size_t> ranks(opts.trials, 0);
  auto run_trial = [&](std::size_t t) {
    ranks[t] = rank_mod_p(contract(net, random_assignment(net, field, trial_seed(opts.seed, t)), field));
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(opts.trials)));
  if (threads == 1) {
    for (std::size_t t = 0; t < opts.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < opts.trials; t += threads) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  R1Estimate est;
  est.trials = opts.trials;
  est.rows = layout.rows;
  est.cols = layout.cols;
  auto best = std::max_element(ranks.begin(), ranks.end());
  est.r1_lower = *best;
  const auto witness_trial = static_cast<std::uint64_t>(best - ranks.begin());
  est.witness_seed = trial_seed(opts.seed, witness_trial);
  est.witness = random_assignment(net, field, est.witness_seed);
  est.mc_upper = min_cut(undirected_shadow(net)).value;

  // Schwartz-Zippel, per trial: degree bound D = max rank * #entries.
  BigInt entries = 0;
  for (const auto& [_, t] : est.witness) entries += t.entries.size();
  const BigInt degree = BigInt(std::min(layout.rows, layout.cols)) * entries;
  BigRational per_trial(degree, BigInt(field.modulus()));
  if (per_trial > 1) per_trial = 1;
  est.failure_bound = 1;
  for (std::size_t t = 0; t < opts.trials; ++t) est.failure_bound *= per_trial;
  if (est.r1_lower > est.mc_upper) throw Error("rank exceeds min-cut; contraction is inconsistent");
  return est;
}

}  // namespace entcap
