#include "npaiso/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace npaiso {

namespace {

std::vector<std::uint64_t> invariant_key(const BilabelledGraph& f) {
  const Graph& g = f.graph();
  const auto slots = f.slots();
  std::vector<std::uint64_t> key;
  key.reserve(4 + slots.size() * (slots.size() + 1) + g.vertex_count());
  key.push_back(g.vertex_count());
  key.push_back(g.edge_count());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Vertex v = slots[i];
    key.push_back(g.degree(v) * 2 + (g.has_loop(v) ? 1 : 0));
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      key.push_back(static_cast<std::uint64_t>(rel(g, v, slots[j])));
    }
  }
  std::vector<std::uint64_t> free_degrees;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!f.is_labelled(v)) free_degrees.push_back(g.degree(v) * 2 + (g.has_loop(v) ? 1 : 0));
  }
  std::sort(free_degrees.begin(), free_degrees.end());
  key.insert(key.end(), free_degrees.begin(), free_degrees.end());
  return key;
}

class IsoSearch {
 public:
  IsoSearch(const Graph& a, const Graph& b) : a_(a), b_(b), map_(a.vertex_count(), kUnset), used_(b.vertex_count(), false) {}

  bool pin(Vertex x, Vertex y) {
    if (map_[x] == kUnset) {
      if (used_[y]) return false;
      map_[x] = y;
      used_[y] = true;
      return true;
    }
    return map_[x] == y;
  }

  bool run() {
    // Pinned vertices must already agree among themselves.
    for (Vertex x = 0; x < a_.vertex_count(); ++x) {
      if (map_[x] == kUnset) {
        free_.push_back(x);
        continue;
      }
      if (a_.has_loop(x) != b_.has_loop(map_[x]) || a_.degree(x) != b_.degree(map_[x])) return false;
      for (Vertex z = 0; z < x; ++z) {
        if (map_[z] != kUnset && a_.adjacent(x, z) != b_.adjacent(map_[x], map_[z])) return false;
      }
    }
    // Most constrained first: high degree.
    std::sort(free_.begin(), free_.end(), [&](Vertex p, Vertex q) { return a_.degree(p) > a_.degree(q); });
    return extend(0);
  }

 private:
  static constexpr Vertex kUnset = static_cast<Vertex>(-1);

  bool consistent(Vertex x, Vertex y) const {
    if (a_.degree(x) != b_.degree(y) || a_.has_loop(x) != b_.has_loop(y)) return false;
    for (Vertex z = 0; z < a_.vertex_count(); ++z) {
      if (z == x || map_[z] == kUnset) continue;
      if (a_.adjacent(x, z) != b_.adjacent(y, map_[z])) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == free_.size()) return true;
    const Vertex x = free_[i];
    for (Vertex y = 0; y < b_.vertex_count(); ++y) {
      if (used_[y] || !consistent(x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      if (extend(i + 1)) return true;
      map_[x] = kUnset;
      used_[y] = false;
    }
    return false;
  }

  const Graph& a_;
  const Graph& b_;
  std::vector<Vertex> map_;
  std::vector<bool> used_;
  std::vector<Vertex> free_;
};

std::string all_actions(std::size_t edges, std::size_t code) {
  static constexpr char kActions[3] = {'k', 'c', 'd'};
  std::string s(edges, 'k');
  for (std::size_t i = 0; i < edges; ++i) {
    s[i] = kActions[code % 3];
    code /= 3;
  }
  return s;
}

}  // namespace

bool labelled_isomorphic(const BilabelledGraph& a, const BilabelledGraph& b, std::size_t max_vertices) {
  if (a.vertex_count() > max_vertices || b.vertex_count() > max_vertices) {
    throw BilabelledError("labelled_isomorphic: graphs larger than " + std::to_string(max_vertices) +
                          " vertices");
  }
  if (a.k() != b.k()) return false;
  if (a.vertex_count() != b.vertex_count() || a.graph().edge_count() != b.graph().edge_count()) return false;
  IsoSearch search(a.graph(), b.graph());
  const auto sa = a.slots();
  const auto sb = b.slots();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (!search.pin(sa[i], sb[i])) return false;
  }
  return search.run();
}

std::optional<std::string> labelled_canonical_key(const BilabelledGraph& f, std::size_t max_orderings) {
  const Graph& g = f.graph();
  const std::size_t n = g.vertex_count();
  const auto slots = f.slots();

  // Labelled vertices are pinned by their first slot.
  std::vector<int> id(n, -1);
  std::vector<Vertex> order;
  std::string key;
  key.push_back(static_cast<char>(f.k()));
  for (Vertex v : slots) {
    if (id[v] < 0) {
      id[v] = static_cast<int>(order.size());
      order.push_back(v);
    }
    key.push_back(static_cast<char>(id[v]));
  }
  const std::size_t pinned = order.size();

  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v)
    if (id[v] < 0) free.push_back(v);

  // Colour refinement on the free vertices, starting from their loop flag and
  // their neighbours among the pinned ones.
  std::vector<std::size_t> colour(n, 0);
  {
    std::vector<std::vector<std::uint64_t>> sig(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) {
      const Vertex v = free[i];
      sig[i].push_back(g.has_loop(v) ? 1 : 0);
      for (std::size_t j = 0; j < pinned; ++j) sig[i].push_back(g.adjacent(v, order[j]) ? 1 : 0);
    }
    for (std::size_t round = 0;; ++round) {
      std::vector<std::vector<std::uint64_t>> sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<std::size_t> next(free.size());
      for (std::size_t i = 0; i < free.size(); ++i)
        next[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
      bool stable = round > 0;
      for (std::size_t i = 0; i < free.size(); ++i) {
        stable = stable && next[i] == colour[free[i]];
        colour[free[i]] = next[i];
      }
      if (stable) break;
      for (std::size_t i = 0; i < free.size(); ++i) {
        std::vector<std::uint64_t> nb;
        for (Vertex w : g.neighbors(free[i]))
          if (id[w] < 0 && w != free[i]) nb.push_back(colour[w]);
        std::sort(nb.begin(), nb.end());
        sig[i] = {colour[free[i]]};
        sig[i].insert(sig[i].end(), nb.begin(), nb.end());
      }
    }
  }
  std::sort(free.begin(), free.end(), [&](Vertex a, Vertex b) { return colour[a] < colour[b] || (colour[a] == colour[b] && a < b); });

  std::size_t orderings = 1;
  for (std::size_t i = 0; i < free.size();) {
    std::size_t j = i;
    while (j < free.size() && colour[free[j]] == colour[free[i]]) ++j;
    for (std::size_t m = 2; m <= j - i; ++m) {
      orderings *= m;
      if (orderings > max_orderings) return std::nullopt;
    }
    i = j;
  }

  // Smallest upper-triangle adjacency string over all orders that keep the cells.
  std::string best;
  std::vector<Vertex> full = order;
  full.insert(full.end(), free.begin(), free.end());
  auto encode = [&]() {
    std::string bits((n * (n + 1) / 2 + 7) / 8, '\0');
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++b)
        if (g.adjacent(full[i], full[j])) bits[b / 8] = static_cast<char>(bits[b / 8] | (1 << (b % 8)));
    return bits;
  };
  std::function<void(std::size_t)> permute = [&](std::size_t start) {
    if (start >= full.size()) {
      std::string e = encode();
      if (best.empty() || e < best) best = std::move(e);
      return;
    }
    std::size_t end = start;
    while (end < full.size() && colour[full[end]] == colour[full[start]]) ++end;
    auto first = full.begin() + static_cast<std::ptrdiff_t>(start);
    auto last = full.begin() + static_cast<std::ptrdiff_t>(end);
    std::sort(first, last);
    do {
      permute(end);
    } while (std::next_permutation(first, last));
  };
  permute(pinned);

  key.push_back(static_cast<char>(n));
  key.push_back(static_cast<char>(n >> 8));
  // Cell sizes separate graphs whose free vertices refine differently.
  for (Vertex v : free) key.push_back(static_cast<char>(colour[v]));
  key.push_back('|');
  return key + best;
}

bool LabelledIsoStore::contains(const BilabelledGraph& f) const {
  if (auto key = labelled_canonical_key(f)) return canonical_.count(*key) > 0;
  const auto it = buckets_.find(invariant_key(f));
  if (it == buckets_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::size_t i) { return labelled_isomorphic(members_[i], f, 64); });
}

bool LabelledIsoStore::insert(const BilabelledGraph& f) {
  if (auto key = labelled_canonical_key(f)) {
    if (!canonical_.insert(std::move(*key)).second) return false;
    members_.push_back(f);
    return true;
  }
  auto& bucket = buckets_[invariant_key(f)];
  for (std::size_t i : bucket) {
    if (labelled_isomorphic(members_[i], f, 64)) return false;
  }
  bucket.push_back(members_.size());
  members_.push_back(f);
  return true;
}

AtomicClasses enumerate_Qk(int k, int max_k) {
  if (k < 1) throw BilabelledError("label arity k must be at least 1");
  if (k > max_k) {
    throw BilabelledError("enumerate_Qk: k = " + std::to_string(k) + " exceeds the bound " + std::to_string(max_k));
  }
  AtomicClasses out;
  auto run = [&](const std::string& atom, std::vector<BilabelledGraph>& dest, std::size_t& candidates) {
    const std::size_t m = generator_by_name(atom, k).graph().edge_count();
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 3;
    LabelledIsoStore store;
    for (std::size_t code = 0; code < total; ++code) store.insert(minor_of_atom(atom, all_actions(m, code), k));
    candidates = total;
    dest = store.members();
  };
  run("C_k", out.parallel, out.parallel_candidates);
  run("M_k", out.series, out.series_candidates);
  return out;
}

namespace {

// Vertex count of series(a, b) without building it.
std::size_t series_vertex_count(const BilabelledGraph& a, const BilabelledGraph& b) {
  const int k = a.k();
  std::vector<Vertex> ids;
  ids.reserve(2 * k);
  for (int i = 0; i < k; ++i) {
    ids.push_back(a.out_labels()[i]);
    ids.push_back(b.in_labels()[i] + static_cast<Vertex>(a.vertex_count()));
  }
  std::vector<Vertex> distinct = ids;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin());
  };
  std::vector<std::size_t> parent(distinct.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t merges = 0;
  for (int i = 0; i < k; ++i) {
    const std::size_t x = find(index(ids[2 * i])), y = find(index(ids[2 * i + 1]));
    if (x != y) {
      parent[x] = y;
      ++merges;
    }
  }
  return a.vertex_count() + b.vertex_count() - merges;
}

}  // namespace

PkEnumeration enumerate_Pk_bounded(int k, const PkBounds& bounds) {
  const AtomicClasses q = enumerate_Qk(k);
  PkEnumeration result;
  LabelledIsoStore store;
  std::vector<int> depth;

  auto admit = [&](const BilabelledGraph& f, int d) {
    if (result.truncated) return false;
    if (!bounds.keep_looped && f.has_loop()) return false;
    if (f.vertex_count() > bounds.max_vertices) {
      result.pruned_by_vertices = true;
      return false;
    }
    if (!store.insert(f)) return false;
    if (store.size() >= bounds.max_members) result.truncated = true;
    depth.push_back(d);
    return true;
  };

  // Parallel composition with Q^P and rotations keep the depth, so each level
  // is closed under them before the next level is formed.
  auto close_level = [&](std::deque<std::size_t> frontier, int d) {
    while (!frontier.empty() && !result.truncated) {
      const BilabelledGraph f = store.members()[frontier.front()];
      frontier.pop_front();
      for (const auto& a : q.parallel) {
        if (admit(parallel(f, a), d)) frontier.push_back(store.size() - 1);
      }
      for (int t = 1; t < 2 * k; ++t) {
        if (admit(sigma_act(f, CyclicPerm(k, t)), d)) frontier.push_back(store.size() - 1);
      }
    }
  };

  std::deque<std::size_t> frontier;
  for (const auto* cls : {&q.parallel, &q.series}) {
    for (const auto& f : *cls) {
      if (admit(f, 1)) frontier.push_back(store.size() - 1);
    }
  }
  close_level(frontier, 1);

  for (int d = 2; d <= bounds.max_depth && !result.truncated; ++d) {
    const std::size_t count = store.size();
    frontier.clear();
    for (std::size_t i = 0; i < count && !result.truncated; ++i) {
      for (std::size_t j = 0; j < count && !result.truncated; ++j) {
        if (std::max(depth[i], depth[j]) != d - 1) continue;
        const auto& a = store.members()[i];
        const auto& b = store.members()[j];
        if (series_vertex_count(a, b) > bounds.max_vertices) {
          result.pruned_by_vertices = true;
          continue;
        }
        if (admit(series(a, b), d)) frontier.push_back(store.size() - 1);
      }
    }
    close_level(frontier, d);
  }
  result.members = store.members();
  return result;
}

}  // namespace npaiso
