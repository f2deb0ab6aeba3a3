#include "npaiso/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <set>

namespace npaiso::oracle {

// ---------------------------------------------------------------------------
// Homomorphism counting

namespace {

using Count = unsigned __int128;

mpz_class to_mpz(Count c) {
  const auto hi = static_cast<std::uint64_t>(c >> 64);
  const auto lo = static_cast<std::uint64_t>(c);
  mpz_class z = mpz_class(std::to_string(hi)) << 64;
  return z + mpz_class(std::to_string(lo));
}

class HomCounter {
 public:
  HomCounter(const Graph& f, const Graph& g, std::vector<Vertex> order)
      : f_(f), g_(g), order_(std::move(order)), image_(f.vertex_count()), pos_(f.vertex_count()) {
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
    for (Vertex v : order_) {
      back_.emplace_back();
      for (Vertex w : f_.neighbors(v))
        if (pos_[w] < pos_[v]) back_.back().push_back(w);
    }
  }

  Count run() { return order_.empty() ? 1 : extend(0); }

 private:
  bool fits(std::size_t i, Vertex y) const {
    const Vertex v = order_[i];
    if (f_.has_loop(v) && !g_.has_loop(y)) return false;
    for (Vertex w : back_[i])
      if (!g_.adjacent(y, image_[w])) return false;
    return true;
  }

  Count extend(std::size_t i) {
    Count total = 0;
    const bool last = i + 1 == order_.size();
    for (Vertex y = 0; y < g_.vertex_count(); ++y) {
      if (!fits(i, y)) continue;
      if (last) {
        ++total;
        continue;
      }
      image_[order_[i]] = y;
      total += extend(i + 1);
    }
    return total;
  }

  const Graph& f_;
  const Graph& g_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<std::size_t> pos_;
  std::vector<std::vector<Vertex>> back_;
};

// Each component in turn: start at a highest-degree vertex, then always take
// the vertex with the most neighbours already placed.
std::vector<std::vector<Vertex>> component_orders(const Graph& f) {
  std::size_t count = 0;
  const auto comp = f.components(&count);
  std::vector<std::vector<Vertex>> out(count);
  std::vector<bool> placed(f.vertex_count(), false);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < f.vertex_count(); ++v)
      if (comp[v] == c) members.push_back(v);
    std::vector<std::size_t> placed_nbrs(f.vertex_count(), 0);
    while (out[c].size() < members.size()) {
      Vertex best = members.front();
      bool found = false;
      for (Vertex v : members) {
        if (placed[v]) continue;
        if (!found || placed_nbrs[v] > placed_nbrs[best] ||
            (placed_nbrs[v] == placed_nbrs[best] && f.degree(v) > f.degree(best))) {
          best = v;
          found = true;
        }
      }
      placed[best] = true;
      out[c].push_back(best);
      for (Vertex w : f.neighbors(best)) ++placed_nbrs[w];
    }
  }
  return out;
}

}  // namespace

mpz_class hom_count(const Graph& f, const Graph& g) {
  const std::size_t nf = f.vertex_count();
  if (nf > 10) {
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), g.vertex_count(), nf);
    if (bound > 1000000000) {
      throw GuardError("hom_count: pattern with " + std::to_string(nf) + " vertices into " +
                       std::to_string(g.vertex_count()) + " vertices exceeds the brute-force guard");
    }
  }
  mpz_class total = 1;
  for (auto& order : component_orders(f)) {
    const Count c = HomCounter(f, g, std::move(order)).run();
    if (c == 0) return 0;
    total *= to_mpz(c);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Colour refinement to a stable partition, used only to narrow candidates.
std::vector<std::size_t> refine(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> colour(n);
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v) * 2 + (g.has_loop(v) ? 1 : 0);
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (Vertex w : g.neighbors(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
      ids.emplace(sig[v], 0);
    }
    std::size_t next = 0;
    for (auto& [key, id] : ids) id = next++;
    std::vector<std::size_t> updated(n);
    for (Vertex v = 0; v < n; ++v) updated[v] = ids[sig[v]];
    const bool stable = std::set<std::size_t>(colour.begin(), colour.end()).size() == next;
    colour = std::move(updated);
    if (stable) break;
  }
  return colour;
}

}  // namespace

std::optional<std::vector<Vertex>> is_isomorphic(const Graph& g, const Graph& h, std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices || h.vertex_count() > max_vertices) {
    throw GuardError("is_isomorphic: graphs larger than " + std::to_string(max_vertices) + " vertices");
  }
  if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (g.degree_sequence() != h.degree_sequence()) return std::nullopt;

  // Refine both graphs jointly so colour ids are comparable.
  const Graph both = disjoint_union(g, h);
  const auto colour = refine(both);
  std::vector<std::size_t> cg(colour.begin(), colour.begin() + n), ch(colour.begin() + n, colour.end());
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  // Rare colours first, then high degree.
  std::map<std::size_t, std::size_t> freq;
  for (auto c : cg) ++freq[c];
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (freq[cg[a]] != freq[cg[b]]) return freq[cg[a]] < freq[cg[b]];
    return g.degree(a) > g.degree(b);
  });

  constexpr Vertex unset = static_cast<Vertex>(-1);
  std::vector<Vertex> map(n, unset);
  std::vector<bool> used(n, false);
  auto fits = [&](Vertex v, Vertex y) {
    if (cg[v] != ch[y] || g.has_loop(v) != h.has_loop(y)) return false;
    for (Vertex w = 0; w < n; ++w) {
      if (map[w] == unset || w == v) continue;
      if (g.adjacent(v, w) != h.adjacent(y, map[w])) return false;
    }
    return true;
  };
  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    const Vertex v = order[i];
    for (Vertex y = 0; y < n; ++y) {
      if (used[y] || !fits(v, y)) continue;
      map[v] = y;
      used[y] = true;
      if (self(self, i + 1)) return true;
      map[v] = unset;
      used[y] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

// ---------------------------------------------------------------------------
// Planarity

namespace {

using Adj = std::vector<std::uint32_t>;  // bitset rows, n <= 32

Adj to_bits(const Graph& g) {
  Adj a(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    a[e.first] |= 1u << e.second;
    a[e.second] |= 1u << e.first;
  }
  return a;
}

std::size_t edge_count(const Adj& a) {
  std::size_t m = 0;
  for (auto row : a) m += std::popcount(row);
  return m / 2;
}

// Removes vertices of degree <= 1 and smooths degree-2 vertices (parallel
// edges from smoothing collapse, which preserves planarity). Returns the
// compacted adjacency.
Adj reduce(Adj a) {
  const std::size_t n = a.size();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      const int d = std::popcount(a[v]);
      if (d <= 2) {
        std::uint32_t nb = a[v];
        for (std::size_t w = 0; w < n; ++w)
          if (nb >> w & 1u) a[w] &= ~(1u << v);
        a[v] = 0;
        alive[v] = false;
        if (d == 2) {
          const int x = std::countr_zero(nb);
          const int y = std::countr_zero(nb & (nb - 1));
          a[x] |= 1u << y;
          a[y] |= 1u << x;
        }
        changed = true;
      }
    }
  }
  std::vector<int> idx(n, -1);
  int next = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) idx[v] = next++;
  Adj out(next, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (std::size_t w = 0; w < n; ++w)
      if ((a[v] >> w & 1u) && alive[w]) out[idx[v]] |= 1u << idx[w];
  }
  return out;
}

bool connected_within(const Adj& a, std::uint32_t set) {
  if (set == 0) return false;
  std::uint32_t seen = set & (~set + 1);
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t grow = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) grow |= a[std::countr_zero(f)];
    grow &= set & ~seen;
    seen |= grow;
    frontier = grow;
  }
  return seen == set;
}

bool blocks_adjacent(const Adj& a, std::uint32_t x, std::uint32_t y) {
  for (std::uint32_t f = x; f; f &= f - 1)
    if (a[std::countr_zero(f)] & y) return true;
  return false;
}

bool is_kuratowski_model(const Adj& a, const std::vector<std::uint32_t>& blocks) {
  for (auto b : blocks)
    if (!connected_within(a, b)) return false;
  const std::size_t m = blocks.size();
  std::array<std::array<bool, 6>, 6> adj{};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = blocks_adjacent(a, blocks[i], blocks[j]);
  if (m == 5) {
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (!adj[i][j]) return false;
    return true;
  }
  // m == 6: some 3+3 split with all cross pairs adjacent. Block 0 on side A.
  for (int mask = 0; mask < 64; ++mask) {
    if (!(mask & 1) || std::popcount(static_cast<unsigned>(mask)) != 3) continue;
    bool ok = true;
    for (int i = 0; i < 6 && ok; ++i)
      for (int j = 0; j < 6 && ok; ++j)
        if ((mask >> i & 1) && !(mask >> j & 1) && !adj[i][j]) ok = false;
    if (ok) return true;
  }
  return false;
}

// Assigns each vertex to one of up to `parts` branch sets or leaves it out;
// branch-set ids appear in order of first use.
bool search_model(const Adj& a, std::size_t parts, std::size_t v, std::vector<std::uint32_t>& blocks) {
  const std::size_t n = a.size();
  if (blocks.size() + (n - v) < parts) return false;
  if (v == n) return blocks.size() == parts && is_kuratowski_model(a, blocks);
  if (search_model(a, parts, v + 1, blocks)) return true;  // unused
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b] |= 1u << v;
    const bool hit = search_model(a, parts, v + 1, blocks);
    blocks[b] &= ~(1u << v);
    if (hit) return true;
  }
  if (blocks.size() < parts) {
    blocks.push_back(1u << v);
    const bool hit = search_model(a, parts, v + 1, blocks);
    blocks.pop_back();
    if (hit) return true;
  }
  return false;
}

}  // namespace

bool is_planar_small(const Graph& g, std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices || g.vertex_count() > 32) {
    throw GuardError("is_planar_small: more than " + std::to_string(max_vertices) + " vertices");
  }
  const Adj a = reduce(to_bits(g));
  const std::size_t n = a.size();
  if (n <= 4) return true;
  if (edge_count(a) > 3 * n - 6) return false;
  std::vector<std::uint32_t> blocks;
  if (search_model(a, 5, 0, blocks)) return false;
  blocks.clear();
  return !search_model(a, 6, 0, blocks);
}

bool is_outerplanar_small(const Graph& g, std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices) {
    throw GuardError("is_outerplanar_small: more than " + std::to_string(max_vertices) + " vertices");
  }
  std::vector<Edge> e = g.edges();
  const auto apex = static_cast<Vertex>(g.vertex_count());
  for (Vertex v = 0; v < apex; ++v) e.emplace_back(v, apex);
  return is_planar_small(Graph(g.vertex_count() + 1, e), max_vertices + 1);
}

// ---------------------------------------------------------------------------
// Treewidth

int treewidth(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices || n > 24) {
    throw GuardError("treewidth: more than " + std::to_string(max_vertices) + " vertices");
  }
  if (n == 0) return -1;
  const Adj a = to_bits(g);
  // Q(S, v): vertices outside S + v reachable from v through S.
  auto q_size = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t reach = 0;
    std::uint32_t inside = 1u << v;
    std::uint32_t frontier = inside;
    while (frontier) {
      std::uint32_t nb = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) nb |= a[std::countr_zero(f)];
      reach |= nb & ~s & ~(1u << v);
      frontier = nb & s & ~inside;
      inside |= frontier;
    }
    return std::popcount(reach);
  };
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int best = 127;
    for (std::uint32_t f = s; f; f &= f - 1) {
      const std::size_t v = std::countr_zero(f);
      const std::uint32_t rest = s & ~(1u << v);
      best = std::min(best, std::max<int>(tw[rest], q_size(rest, v)));
    }
    tw[s] = static_cast<std::int8_t>(best);
    if (s == full) break;
  }
  return tw[full];
}

bool treewidth_at_most(const Graph& g, int w, std::size_t max_vertices) { return treewidth(g, max_vertices) <= w; }

// ---------------------------------------------------------------------------

WitnessReport verify_witness(const BilabelledGraph& f, const Graph& g, const Graph& h,
                             const std::optional<mpz_class>& p) {
  WitnessReport r;
  const Graph u = soe_graph(f);
  r.hom_g = hom_count(u, g);
  r.hom_h = hom_count(u, h);
  r.equal = r.hom_g == r.hom_h;
  if (p) {
    mpz_class d = r.hom_g - r.hom_h;
    r.congruent = mpz_divisible_p(d.get_mpz_t(), p->get_mpz_t()) != 0;
  }
  return r;
}

}  // namespace npaiso::oracle
