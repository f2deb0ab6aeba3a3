#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "npaiso/graph.hpp"

namespace npaiso {

class BilabelledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Provenance expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of the construction expression of a bilabelled graph. Nodes are shared,
/// so a provenance is a DAG even though it serializes as a tree.
struct Expr {
  enum class Op { Generator, Series, Parallel, Sigma, Swap, Minor };

  Op op = Op::Generator;
  /// Generator name ("J", "C=1", "M~2", "C_k", ...) or, for Minor, the atom it is a minor of.
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;
  int power = 0;
  /// Minor: per edge of the atom, 'k'eep, 'c'ontract or 'd'elete.
  std::string edge_actions;
  int depth = 1;

  static ExprPtr generator(std::string name);
  static ExprPtr minor(std::string atom, std::string edge_actions);
  static ExprPtr series(ExprPtr a, ExprPtr b);
  static ExprPtr parallel(ExprPtr a, ExprPtr b);
  static ExprPtr sigma(ExprPtr a, int power);
  static ExprPtr swap(ExprPtr a);
};

/// Tree serialization; subtrees beyond `node_budget` nodes are replaced by
/// {"op":"elided"}.
nlohmann::json expr_to_json(const ExprPtr& e, std::size_t node_budget = 4096);
ExprPtr expr_from_json(const nlohmann::json& j);
std::string expr_to_string(const ExprPtr& e);
/// Number of nodes of the fully expanded tree (saturating).
std::size_t expr_tree_size(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Cyclic label permutations

/// Element of the order-2k rotation group acting on label slots arranged
/// cyclically as in_1, ..., in_k, out_k, ..., out_1. Slots are 0-based:
/// slot i < k is in_{i+1}, slot k + j is out_{j+1}.
class CyclicPerm {
 public:
  CyclicPerm(int k, int power);

  int k() const { return k_; }
  int power() const { return power_; }
  /// Image of a slot: the slot `power` steps further along the cyclic order.
  int apply(int slot) const;
  CyclicPerm compose(const CyclicPerm& other) const;
  CyclicPerm inverse() const;

  /// Cyclic slot order (0-based): 0, ..., k-1, 2k-1, ..., k.
  static std::vector<int> slot_order(int k);
  /// Successor of a slot in the cyclic order.
  static int successor(int k, int slot);

 private:
  int k_;
  int power_;
};

// ---------------------------------------------------------------------------
// Bilabelled graphs

/// A (k,k)-bilabelled graph: a graph with an in-label tuple and an out-label
/// tuple of equal length k. Labels may repeat.
class BilabelledGraph {
 public:
  BilabelledGraph(Graph graph, std::vector<Vertex> in, std::vector<Vertex> out,
                  ExprPtr provenance = nullptr);

  const Graph& graph() const { return graph_; }
  const std::vector<Vertex>& in_labels() const { return in_; }
  const std::vector<Vertex>& out_labels() const { return out_; }
  int k() const { return static_cast<int>(in_.size()); }
  const ExprPtr& provenance() const { return provenance_; }
  int depth() const { return provenance_ ? provenance_->depth : 1; }

  std::size_t vertex_count() const { return graph_.vertex_count(); }
  /// in_labels followed by out_labels.
  std::vector<Vertex> slots() const;
  bool is_labelled(Vertex v) const;
  /// Every vertex carries at least one label.
  bool is_atomic() const;
  bool has_loop() const { return !graph_.is_simple(); }

  BilabelledGraph with_provenance(ExprPtr p) const;

 private:
  Graph graph_;
  std::vector<Vertex> in_;
  std::vector<Vertex> out_;
  ExprPtr provenance_;
};

nlohmann::json to_json(const BilabelledGraph& f, std::size_t provenance_budget = 4096);
BilabelledGraph bilabelled_from_json(const nlohmann::json& j);

/// Glue out-labels of `a` to in-labels of `b`.
BilabelledGraph series(const BilabelledGraph& a, const BilabelledGraph& b);
/// Identify labels position-wise.
BilabelledGraph parallel(const BilabelledGraph& a, const BilabelledGraph& b);
/// New slot i carries the vertex previously at slot s(i).
BilabelledGraph sigma_act(const BilabelledGraph& f, const CyclicPerm& s);
BilabelledGraph swap(const BilabelledGraph& f);

/// Underlying unlabelled graph.
Graph soe_graph(const BilabelledGraph& f);
/// Underlying graph after identifying in_i with out_i for every i.
Graph tr_graph(const BilabelledGraph& f);

// Bilabelled minor operations.
BilabelledGraph delete_edge(const BilabelledGraph& f, Edge e);
/// Quotient by the components of `contracted`. Contracted edges disappear,
/// other edges whose endpoints merge become loops, merged vertices carry the
/// union of their labels.
BilabelledGraph contract_edges(const BilabelledGraph& f, const std::vector<Edge>& contracted);
BilabelledGraph delete_unlabelled_vertex(const BilabelledGraph& f, Vertex w);

// Atomic graphs. Vertex i here is vertex i+1 in the usual 1-based drawing.
BilabelledGraph cycle_atomic(int k);
BilabelledGraph matching_atomic(int k);
BilabelledGraph J_atomic(int k);
BilabelledGraph I_atomic(int k);

/// Generating sets for parallel (P) and series (S) composition, in listing
/// order: J, C=1, C~1, ..., C=2k, C~2k and I, M!=1, M~1, ..., M!=k, M~k.
struct BasalGenerators {
  std::vector<BilabelledGraph> parallel;
  std::vector<BilabelledGraph> series;
};
BasalGenerators basal_generators(int k);

/// Resolve a generator name produced by this module.
BilabelledGraph generator_by_name(const std::string& name, int k);
/// Rebuild the bilabelled graph described by an expression.
BilabelledGraph materialize(const ExprPtr& e, int k);
/// Minor of a named atom; `actions` holds one of 'k', 'c', 'd' per atom edge
/// in sorted edge order.
BilabelledGraph minor_of_atom(const std::string& atom, const std::string& actions, int k);

/// V_k = M_k parallel C_k and G_k = V_k series ... series V_k (k-1 copies).
struct GridGadgets {
  BilabelledGraph vertical;
  BilabelledGraph grid;
};
GridGadgets grid_bilabelled(int k);

}  // namespace npaiso
