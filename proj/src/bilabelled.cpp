#include "npaiso/bilabelled.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace npaiso {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Quotient {
  Graph graph;
  std::vector<Vertex> image;
};

// Classes are numbered by their smallest member. Parallel images collapse,
// edges inside a class become loops.
Quotient quotient(std::size_t n, const std::vector<Edge>& edges, DisjointSet& ds) {
  std::vector<Vertex> root_id(n, static_cast<Vertex>(-1));
  std::vector<Vertex> image(n);
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = ds.find(v);
    if (root_id[r] == static_cast<Vertex>(-1)) root_id[r] = next++;
    image[v] = root_id[r];
  }
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  for (const Edge& e : edges) mapped.emplace_back(image[e.first], image[e.second]);
  return {Graph(next, mapped), std::move(image)};
}

std::vector<Vertex> map_labels(const std::vector<Vertex>& labels, const std::vector<Vertex>& image,
                               Vertex offset = 0) {
  std::vector<Vertex> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = image[labels[i] + offset];
  return out;
}

void require_same_k(const BilabelledGraph& a, const BilabelledGraph& b, const char* op) {
  if (a.k() != b.k()) {
    throw BilabelledError(std::string(op) + ": arity mismatch (" + std::to_string(a.k()) + " vs " +
                          std::to_string(b.k()) + ")");
  }
}

void require_k(int k) {
  if (k < 1) throw BilabelledError("label arity k must be at least 1");
}

int parse_index(const std::string& name, std::size_t prefix) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(name.substr(prefix), &used);
    if (used + prefix != name.size()) throw std::invalid_argument(name);
    return i;
  } catch (const std::exception&) {
    throw BilabelledError("unknown generator name: " + name);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

ExprPtr Expr::generator(std::string name) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Generator;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::minor(std::string atom, std::string edge_actions) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Minor;
  e->name = std::move(atom);
  e->edge_actions = std::move(edge_actions);
  return e;
}

ExprPtr Expr::series(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Series;
  e->depth = std::max(a->depth, b->depth) + 1;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::parallel(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Parallel;
  e->depth = std::max(a->depth, b->depth);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::sigma(ExprPtr a, int power) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Sigma;
  e->depth = a->depth;
  e->power = power;
  e->lhs = std::move(a);
  return e;
}

ExprPtr Expr::swap(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Swap;
  e->depth = a->depth;
  e->lhs = std::move(a);
  return e;
}

namespace {

nlohmann::json expr_to_json_impl(const ExprPtr& e, std::size_t& budget) {
  if (!e) return nullptr;
  if (budget == 0) return {{"op", "elided"}, {"depth", e->depth}};
  --budget;
  switch (e->op) {
    case Expr::Op::Generator: return {{"gen", e->name}};
    case Expr::Op::Minor: return {{"op", "minor"}, {"of", e->name}, {"edges", e->edge_actions}};
    case Expr::Op::Series:
    case Expr::Op::Parallel: {
      auto l = expr_to_json_impl(e->lhs, budget);
      auto r = expr_to_json_impl(e->rhs, budget);
      return {{"op", e->op == Expr::Op::Series ? "series" : "parallel"}, {"args", {l, r}}};
    }
    case Expr::Op::Sigma:
      return {{"op", "sigma"}, {"power", e->power}, {"arg", expr_to_json_impl(e->lhs, budget)}};
    case Expr::Op::Swap: return {{"op", "swap"}, {"arg", expr_to_json_impl(e->lhs, budget)}};
  }
  return nullptr;
}

}  // namespace

nlohmann::json expr_to_json(const ExprPtr& e, std::size_t node_budget) {
  return expr_to_json_impl(e, node_budget);
}

ExprPtr expr_from_json(const nlohmann::json& j) {
  if (j.is_null()) return nullptr;
  if (j.contains("gen")) return Expr::generator(j.at("gen").get<std::string>());
  const auto op = j.at("op").get<std::string>();
  if (op == "minor") return Expr::minor(j.at("of").get<std::string>(), j.at("edges").get<std::string>());
  if (op == "series") return Expr::series(expr_from_json(j.at("args")[0]), expr_from_json(j.at("args")[1]));
  if (op == "parallel") return Expr::parallel(expr_from_json(j.at("args")[0]), expr_from_json(j.at("args")[1]));
  if (op == "sigma") return Expr::sigma(expr_from_json(j.at("arg")), j.at("power").get<int>());
  if (op == "swap") return Expr::swap(expr_from_json(j.at("arg")));
  throw BilabelledError("cannot rebuild provenance node '" + op + "'");
}

std::string expr_to_string(const ExprPtr& e) {
  if (!e) return "?";
  switch (e->op) {
    case Expr::Op::Generator: return e->name;
    case Expr::Op::Minor: return e->name + "[" + e->edge_actions + "]";
    case Expr::Op::Series: return "(" + expr_to_string(e->lhs) + " . " + expr_to_string(e->rhs) + ")";
    case Expr::Op::Parallel: return "(" + expr_to_string(e->lhs) + " o " + expr_to_string(e->rhs) + ")";
    case Expr::Op::Sigma: return expr_to_string(e->lhs) + "^s" + std::to_string(e->power);
    case Expr::Op::Swap: return expr_to_string(e->lhs) + "*";
  }
  return "?";
}

std::size_t expr_tree_size(const ExprPtr& e) {
  if (!e) return 0;
  constexpr std::size_t cap = static_cast<std::size_t>(1) << 40;
  const std::size_t l = expr_tree_size(e->lhs);
  const std::size_t r = expr_tree_size(e->rhs);
  return std::min(cap, 1 + l + r);
}

// ---------------------------------------------------------------------------
// CyclicPerm

CyclicPerm::CyclicPerm(int k, int power) : k_(k), power_(0) {
  require_k(k);
  const int order = 2 * k;
  power_ = ((power % order) + order) % order;
}

std::vector<int> CyclicPerm::slot_order(int k) {
  std::vector<int> order;
  order.reserve(2 * k);
  for (int i = 0; i < k; ++i) order.push_back(i);
  for (int i = 2 * k - 1; i >= k; --i) order.push_back(i);
  return order;
}

int CyclicPerm::successor(int k, int slot) { return CyclicPerm(k, 1).apply(slot); }

int CyclicPerm::apply(int slot) const {
  const int order = 2 * k_;
  if (slot < 0 || slot >= order) throw BilabelledError("slot out of range");
  // Position of `slot` in the cyclic order.
  const int pos = slot < k_ ? slot : (order - 1 - (slot - k_));
  const int target = (pos + power_) % order;
  return target < k_ ? target : k_ + (order - 1 - target);
}

CyclicPerm CyclicPerm::compose(const CyclicPerm& other) const {
  if (other.k_ != k_) throw BilabelledError("CyclicPerm: arity mismatch");
  return CyclicPerm(k_, power_ + other.power_);
}

CyclicPerm CyclicPerm::inverse() const { return CyclicPerm(k_, -power_); }

// ---------------------------------------------------------------------------
// BilabelledGraph

BilabelledGraph::BilabelledGraph(Graph graph, std::vector<Vertex> in, std::vector<Vertex> out,
                                 ExprPtr provenance)
    : graph_(std::move(graph)), in_(std::move(in)), out_(std::move(out)), provenance_(std::move(provenance)) {
  if (in_.size() != out_.size()) throw BilabelledError("in- and out-label tuples differ in length");
  if (in_.empty()) throw BilabelledError("label arity k must be at least 1");
  for (Vertex v : slots()) {
    if (v >= graph_.vertex_count()) throw BilabelledError("label refers to a missing vertex");
  }
}

std::vector<Vertex> BilabelledGraph::slots() const {
  std::vector<Vertex> s(in_);
  s.insert(s.end(), out_.begin(), out_.end());
  return s;
}

bool BilabelledGraph::is_labelled(Vertex v) const {
  return std::find(in_.begin(), in_.end(), v) != in_.end() ||
         std::find(out_.begin(), out_.end(), v) != out_.end();
}

bool BilabelledGraph::is_atomic() const {
  std::vector<bool> seen(graph_.vertex_count(), false);
  for (Vertex v : slots()) seen[v] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

BilabelledGraph BilabelledGraph::with_provenance(ExprPtr p) const {
  return BilabelledGraph(graph_, in_, out_, std::move(p));
}

nlohmann::json to_json(const BilabelledGraph& f, std::size_t provenance_budget) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : f.graph().edges()) edges.push_back({e.first, e.second});
  return {{"n", f.vertex_count()},
          {"edges", edges},
          {"in", f.in_labels()},
          {"out", f.out_labels()},
          {"provenance", expr_to_json(f.provenance(), provenance_budget)}};
}

BilabelledGraph bilabelled_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  ExprPtr prov;
  if (j.contains("provenance")) prov = expr_from_json(j.at("provenance"));
  return BilabelledGraph(Graph(n, edges), j.at("in").get<std::vector<Vertex>>(),
                         j.at("out").get<std::vector<Vertex>>(), prov);
}

// ---------------------------------------------------------------------------
// Composition

namespace {

std::vector<Edge> union_edges(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  const auto off = static_cast<Vertex>(a.vertex_count());
  for (const Edge& x : b.edges()) e.emplace_back(x.first + off, x.second + off);
  return e;
}

ExprPtr prov_or_anon(const BilabelledGraph& f) {
  return f.provenance() ? f.provenance() : Expr::generator("?");
}

}  // namespace

BilabelledGraph series(const BilabelledGraph& a, const BilabelledGraph& b) {
  require_same_k(a, b, "series");
  const std::size_t na = a.vertex_count();
  const std::size_t n = na + b.vertex_count();
  DisjointSet ds(n);
  for (int i = 0; i < a.k(); ++i) ds.unite(a.out_labels()[i], b.in_labels()[i] + na);
  auto q = quotient(n, union_edges(a.graph(), b.graph()), ds);
  auto in = map_labels(a.in_labels(), q.image);
  auto out = map_labels(b.out_labels(), q.image, static_cast<Vertex>(na));
  return BilabelledGraph(std::move(q.graph), std::move(in), std::move(out),
                         Expr::series(prov_or_anon(a), prov_or_anon(b)));
}

BilabelledGraph parallel(const BilabelledGraph& a, const BilabelledGraph& b) {
  require_same_k(a, b, "parallel");
  const std::size_t na = a.vertex_count();
  const std::size_t n = na + b.vertex_count();
  DisjointSet ds(n);
  for (int i = 0; i < a.k(); ++i) {
    ds.unite(a.in_labels()[i], b.in_labels()[i] + na);
    ds.unite(a.out_labels()[i], b.out_labels()[i] + na);
  }
  auto q = quotient(n, union_edges(a.graph(), b.graph()), ds);
  auto in = map_labels(a.in_labels(), q.image);
  auto out = map_labels(a.out_labels(), q.image);
  return BilabelledGraph(std::move(q.graph), std::move(in), std::move(out),
                         Expr::parallel(prov_or_anon(a), prov_or_anon(b)));
}

BilabelledGraph sigma_act(const BilabelledGraph& f, const CyclicPerm& s) {
  if (s.k() != f.k()) throw BilabelledError("sigma_act: arity mismatch");
  const auto old = f.slots();
  const int k = f.k();
  std::vector<Vertex> in(k), out(k);
  for (int i = 0; i < 2 * k; ++i) {
    const Vertex v = old[s.apply(i)];
    if (i < k) in[i] = v; else out[i - k] = v;
  }
  return BilabelledGraph(f.graph(), std::move(in), std::move(out),
                         s.power() == 0 ? f.provenance() : Expr::sigma(prov_or_anon(f), s.power()));
}

BilabelledGraph swap(const BilabelledGraph& f) {
  return BilabelledGraph(f.graph(), f.out_labels(), f.in_labels(), Expr::swap(prov_or_anon(f)));
}

Graph soe_graph(const BilabelledGraph& f) { return f.graph(); }

Graph tr_graph(const BilabelledGraph& f) {
  DisjointSet ds(f.vertex_count());
  for (int i = 0; i < f.k(); ++i) ds.unite(f.in_labels()[i], f.out_labels()[i]);
  return quotient(f.vertex_count(), f.graph().edges(), ds).graph;
}

// ---------------------------------------------------------------------------
// Minors

BilabelledGraph delete_edge(const BilabelledGraph& f, Edge e) {
  const auto& edges = f.graph().edges();
  if (!std::binary_search(edges.begin(), edges.end(), e)) {
    throw BilabelledError("delete_edge: not an edge");
  }
  std::vector<Edge> kept;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(kept), [&](const Edge& x) { return !(x == e); });
  return BilabelledGraph(Graph(f.vertex_count(), kept), f.in_labels(), f.out_labels(), f.provenance());
}

BilabelledGraph contract_edges(const BilabelledGraph& f, const std::vector<Edge>& contracted) {
  const auto& edges = f.graph().edges();
  DisjointSet ds(f.vertex_count());
  for (const Edge& e : contracted) {
    if (!std::binary_search(edges.begin(), edges.end(), e)) {
      throw BilabelledError("contract_edges: {" + std::to_string(e.first) + "," +
                            std::to_string(e.second) + "} is not an edge");
    }
    ds.unite(e.first, e.second);
  }
  std::vector<Edge> rest;
  for (const Edge& e : edges) {
    if (std::find(contracted.begin(), contracted.end(), e) == contracted.end()) rest.push_back(e);
  }
  auto q = quotient(f.vertex_count(), rest, ds);
  return BilabelledGraph(std::move(q.graph), map_labels(f.in_labels(), q.image),
                         map_labels(f.out_labels(), q.image), f.provenance());
}

BilabelledGraph delete_unlabelled_vertex(const BilabelledGraph& f, Vertex w) {
  if (w >= f.vertex_count()) throw BilabelledError("delete_unlabelled_vertex: no such vertex");
  if (f.is_labelled(w)) throw BilabelledError("delete_unlabelled_vertex: vertex carries a label");
  auto shift = [w](Vertex v) { return v > w ? v - 1 : v; };
  std::vector<Edge> kept;
  for (const Edge& e : f.graph().edges()) {
    if (e.first == w || e.second == w) continue;
    kept.emplace_back(shift(e.first), shift(e.second));
  }
  std::vector<Vertex> in, out;
  for (Vertex v : f.in_labels()) in.push_back(shift(v));
  for (Vertex v : f.out_labels()) out.push_back(shift(v));
  return BilabelledGraph(Graph(f.vertex_count() - 1, kept), std::move(in), std::move(out), f.provenance());
}

// ---------------------------------------------------------------------------
// Atomic graphs and generators

namespace {

std::vector<Vertex> iota_labels(int from, int count) {
  std::vector<Vertex> v(count);
  std::iota(v.begin(), v.end(), static_cast<Vertex>(from));
  return v;
}

BilabelledGraph apply_minor(const BilabelledGraph& atom, const std::string& actions, ExprPtr prov) {
  const auto& edges = atom.graph().edges();
  if (actions.size() != edges.size()) throw BilabelledError("minor: one action per atom edge expected");
  std::vector<Edge> kept, contracted;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    switch (actions[i]) {
      case 'k': kept.push_back(edges[i]); break;
      case 'c': kept.push_back(edges[i]); contracted.push_back(edges[i]); break;
      case 'd': break;
      default: throw BilabelledError(std::string("minor: unknown edge action '") + actions[i] + "'");
    }
  }
  BilabelledGraph pruned(Graph(atom.vertex_count(), kept), atom.in_labels(), atom.out_labels());
  return contract_edges(pruned, contracted).with_provenance(std::move(prov));
}

}  // namespace

BilabelledGraph cycle_atomic(int k) {
  require_k(k);
  std::vector<Edge> e;
  const auto order = CyclicPerm::slot_order(k);
  for (int q = 0; q < 2 * k; ++q) e.emplace_back(order[q], order[(q + 1) % (2 * k)]);
  return BilabelledGraph(Graph(2 * k, e), iota_labels(0, k), iota_labels(k, k), Expr::generator("C_k"));
}

BilabelledGraph matching_atomic(int k) {
  require_k(k);
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, i + k);
  return BilabelledGraph(Graph(2 * k, e), iota_labels(0, k), iota_labels(k, k), Expr::generator("M_k"));
}

BilabelledGraph J_atomic(int k) {
  require_k(k);
  return BilabelledGraph(Graph(2 * k), iota_labels(0, k), iota_labels(k, k), Expr::generator("J"));
}

BilabelledGraph I_atomic(int k) {
  require_k(k);
  return BilabelledGraph(Graph(k), iota_labels(0, k), iota_labels(0, k), Expr::generator("I"));
}

namespace {

BilabelledGraph cycle_gadget(int k, int i, bool identify) {
  // i is 1-based; slot i-1 and its cyclic successor are merged or joined.
  const int a = i - 1;
  const int b = CyclicPerm::successor(k, a);
  const std::string name = (identify ? "C=" : "C~") + std::to_string(i);
  if (!identify) {
    return BilabelledGraph(Graph(2 * k, {Edge(a, b)}), iota_labels(0, k), iota_labels(k, k),
                           Expr::generator(name));
  }
  BilabelledGraph joined(Graph(2 * k, {Edge(a, b)}), iota_labels(0, k), iota_labels(k, k));
  return contract_edges(joined, {Edge(a, b)}).with_provenance(Expr::generator(name));
}

BilabelledGraph matching_gadget(int k, int i, bool connect) {
  const std::string name = (connect ? "M~" : "M!=") + std::to_string(i);
  auto out = iota_labels(0, k);
  out[i - 1] = static_cast<Vertex>(k);
  std::vector<Edge> e;
  if (connect) e.emplace_back(i - 1, k);
  return BilabelledGraph(Graph(k + 1, e), iota_labels(0, k), std::move(out), Expr::generator(name));
}

}  // namespace

BasalGenerators basal_generators(int k) {
  require_k(k);
  BasalGenerators b;
  b.parallel.push_back(J_atomic(k));
  for (int i = 1; i <= 2 * k; ++i) {
    b.parallel.push_back(cycle_gadget(k, i, true));
    b.parallel.push_back(cycle_gadget(k, i, false));
  }
  b.series.push_back(I_atomic(k));
  for (int i = 1; i <= k; ++i) {
    b.series.push_back(matching_gadget(k, i, false));
    b.series.push_back(matching_gadget(k, i, true));
  }
  return b;
}

BilabelledGraph generator_by_name(const std::string& name, int k) {
  if (name == "J") return J_atomic(k);
  if (name == "I") return I_atomic(k);
  if (name == "C_k") return cycle_atomic(k);
  if (name == "M_k") return matching_atomic(k);
  auto check = [&](int i, int hi) {
    if (i < 1 || i > hi) throw BilabelledError("generator index out of range: " + name);
    return i;
  };
  if (name.rfind("C=", 0) == 0) return cycle_gadget(k, check(parse_index(name, 2), 2 * k), true);
  if (name.rfind("C~", 0) == 0) return cycle_gadget(k, check(parse_index(name, 2), 2 * k), false);
  if (name.rfind("M!=", 0) == 0) return matching_gadget(k, check(parse_index(name, 3), k), false);
  if (name.rfind("M~", 0) == 0) return matching_gadget(k, check(parse_index(name, 2), k), true);
  throw BilabelledError("unknown generator name: " + name);
}

BilabelledGraph materialize(const ExprPtr& e, int k) {
  if (!e) throw BilabelledError("materialize: missing provenance");
  switch (e->op) {
    case Expr::Op::Generator: return generator_by_name(e->name, k);
    case Expr::Op::Minor: return apply_minor(generator_by_name(e->name, k), e->edge_actions, e);
    case Expr::Op::Series: return series(materialize(e->lhs, k), materialize(e->rhs, k)).with_provenance(e);
    case Expr::Op::Parallel: return parallel(materialize(e->lhs, k), materialize(e->rhs, k)).with_provenance(e);
    case Expr::Op::Sigma: return sigma_act(materialize(e->lhs, k), CyclicPerm(k, e->power)).with_provenance(e);
    case Expr::Op::Swap: return swap(materialize(e->lhs, k)).with_provenance(e);
  }
  throw BilabelledError("materialize: bad node");
}

BilabelledGraph minor_of_atom(const std::string& atom, const std::string& actions, int k) {
  return apply_minor(generator_by_name(atom, k), actions, Expr::minor(atom, actions));
}

GridGadgets grid_bilabelled(int k) {
  if (k < 2) throw BilabelledError("grid_bilabelled requires k >= 2");
  BilabelledGraph v = parallel(matching_atomic(k), cycle_atomic(k));
  BilabelledGraph g = v;
  for (int i = 1; i < k - 1; ++i) g = series(g, v);
  return {v, g};
}

}  // namespace npaiso
