#include "npaiso/graph.hpp"

#include <algorithm>

namespace npaiso {

Graph::Graph(std::size_t vertex_count) : Graph(vertex_count, {}) {}

Graph::Graph(std::size_t vertex_count, const std::vector<Edge>& edges)
    : n_(vertex_count), adj_(vertex_count * vertex_count, 0), nbrs_(vertex_count) {
  for (const Edge& e : edges) {
    if (e.first >= n_ || e.second >= n_) {
      throw GraphError("edge endpoint out of range: {" + std::to_string(e.first) + "," +
                       std::to_string(e.second) + "} with " + std::to_string(n_) +
                       " vertices");
    }
    auto& cell = adj_[static_cast<std::size_t>(e.first) * n_ + e.second];
    if (cell) continue;
    cell = 1;
    adj_[static_cast<std::size_t>(e.second) * n_ + e.first] = 1;
    edges_.push_back(e);
    if (!e.is_loop()) {
      nbrs_[e.first].push_back(e.second);
      nbrs_[e.second].push_back(e.first);
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

bool Graph::is_simple() const {
  return std::none_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> d(n_);
  for (std::size_t v = 0; v < n_; ++v) d[v] = nbrs_[v].size();
  std::sort(d.rbegin(), d.rend());
  return d;
}

std::vector<std::size_t> Graph::components(std::size_t* count) const {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n_, unset);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : nbrs_[v]) {
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

Graph Graph::relabel(const std::vector<Vertex>& perm) const {
  if (perm.size() != n_) throw GraphError("relabel: permutation has wrong length");
  std::vector<Edge> e;
  e.reserve(edges_.size());
  for (const Edge& x : edges_) e.emplace_back(perm.at(x.first), perm.at(x.second));
  return Graph(n_, e);
}

Rel rel(const Graph& g, Vertex a, Vertex b) {
  if (a >= g.vertex_count() || b >= g.vertex_count()) {
    throw GraphError("rel: vertex out of range");
  }
  if (a == b) return Rel::Equal;
  return g.adjacent(a, b) ? Rel::Adjacent : Rel::DistinctNonAdjacent;
}

std::string to_string(Rel r) {
  switch (r) {
    case Rel::Equal: return "equal";
    case Rel::Adjacent: return "adjacent";
    case Rel::DistinctNonAdjacent: return "distinct-nonadjacent";
  }
  return "?";
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle requires at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw GraphError("path requires at least 1 vertex");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw GraphError("complete graph requires at least 1 vertex");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph star_graph(std::size_t leaves) {
  if (leaves < 1) throw GraphError("star requires at least 1 leaf");
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw GraphError("grid requires positive dimensions");
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, e);
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const auto off = static_cast<Vertex>(g.vertex_count());
  std::vector<Edge> e = g.edges();
  for (const Edge& x : h.edges()) e.emplace_back(x.first + off, x.second + off);
  return Graph(g.vertex_count() + h.vertex_count(), e);
}

}  // namespace npaiso
