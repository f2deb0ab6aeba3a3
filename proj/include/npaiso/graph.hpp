#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace npaiso {

using Vertex = std::uint32_t;

/// Unordered vertex pair stored with `first <= second`. A loop has `first == second`.
struct Edge {
  Vertex first = 0;
  Vertex second = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : first(a < b ? a : b), second(a < b ? b : a) {}

  bool is_loop() const { return first == second; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite undirected graph on vertices 0..n-1. Loops are allowed, parallel
/// edges are not representable. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  /// Duplicate pairs are collapsed; endpoints must be < vertex_count.
  Graph(std::size_t vertex_count, const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Sorted, duplicate-free.
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(Vertex u, Vertex v) const {
    return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  bool has_loop(Vertex v) const { return adjacent(v, v); }
  bool is_simple() const;

  /// Neighbours excluding `v` itself, ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
  std::size_t degree(Vertex v) const { return nbrs_[v].size(); }
  std::vector<std::size_t> degree_sequence() const;  // descending

  /// Component id per vertex, ids assigned in order of smallest vertex.
  std::vector<std::size_t> components(std::size_t* count = nullptr) const;

  /// Graph with vertex v renamed to perm[v].
  Graph relabel(const std::vector<Vertex>& perm) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
};

/// Three-way vertex relation of the isomorphism game.
enum class Rel { Equal, Adjacent, DistinctNonAdjacent };

/// Equal iff g == g2; Adjacent iff {g,g2} is an edge and g != g2. A loop at g
/// does not make rel(G,g,g) Adjacent.
Rel rel(const Graph& g, Vertex a, Vertex b);

std::string to_string(Rel r);

// Generators.
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// K_{1,leaves}: centre is vertex 0.
Graph star_graph(std::size_t leaves);
/// Vertex (r, c) is r * cols + c.
Graph grid_graph(std::size_t rows, std::size_t cols);
/// H's vertices are shifted by |V(G)|.
Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace npaiso
