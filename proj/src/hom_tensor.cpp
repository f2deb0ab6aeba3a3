#include "npaiso/hom_tensor.hpp"

#include <algorithm>

namespace npaiso {

std::size_t checked_power(std::size_t n, int e, std::size_t cap) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (n != 0 && r > (cap - 1) / n) {
      throw TensorError("tensor block of " + std::to_string(n) + "^" + std::to_string(e) +
                        " entries reaches the cap of " + std::to_string(cap));
    }
    r *= n;
  }
  if (r >= cap) {
    throw TensorError("tensor block of " + std::to_string(n) + "^" + std::to_string(e) +
                      " entries reaches the cap of " + std::to_string(cap));
  }
  return r;
}

namespace {

struct LabelLayout {
  std::vector<Vertex> labelled;       // distinct labelled vertices, by first slot
  std::vector<std::size_t> slot_pos;  // slot -> index into labelled
  std::vector<int> local;             // vertex -> index into labelled, or -1
};

LabelLayout layout(const BilabelledGraph& f) {
  LabelLayout l;
  l.local.assign(f.vertex_count(), -1);
  for (Vertex v : f.slots()) {
    if (l.local[v] < 0) {
      l.local[v] = static_cast<int>(l.labelled.size());
      l.labelled.push_back(v);
    }
    l.slot_pos.push_back(static_cast<std::size_t>(l.local[v]));
  }
  return l;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw TensorError("homomorphism count overflows 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw TensorError("homomorphism count overflows 64 bits");
  return r;
}

// One connected piece of the unlabelled part, in BFS order, with each
// vertex's constraints against earlier piece vertices and labelled vertices.
struct Piece {
  std::vector<Vertex> order;
  std::vector<std::vector<std::size_t>> earlier;  // positions in `order`
  std::vector<std::vector<std::size_t>> anchors;  // indices into labelled
  std::vector<bool> looped;
};

std::vector<Piece> pieces(const Graph& f, const LabelLayout& l) {
  const std::size_t n = f.vertex_count();
  std::vector<int> pos(n, -1);
  std::vector<Piece> out;
  for (Vertex s = 0; s < n; ++s) {
    if (l.local[s] >= 0 || pos[s] >= 0) continue;
    Piece p;
    pos[s] = 0;
    p.order.push_back(s);
    for (std::size_t head = 0; head < p.order.size(); ++head) {
      for (Vertex w : f.neighbors(p.order[head])) {
        if (l.local[w] >= 0 || pos[w] >= 0) continue;
        pos[w] = static_cast<int>(p.order.size());
        p.order.push_back(w);
      }
    }
    for (std::size_t i = 0; i < p.order.size(); ++i) {
      const Vertex v = p.order[i];
      p.earlier.emplace_back();
      p.anchors.emplace_back();
      p.looped.push_back(f.has_loop(v));
      for (Vertex w : f.neighbors(v)) {
        if (l.local[w] >= 0) p.anchors.back().push_back(static_cast<std::size_t>(l.local[w]));
        else if (static_cast<std::size_t>(pos[w]) < i) p.earlier.back().push_back(static_cast<std::size_t>(pos[w]));
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

class PieceCounter {
 public:
  PieceCounter(const Piece& p, const Graph& g, const std::vector<Vertex>& pinned)
      : p_(p), g_(g), pinned_(pinned), image_(p.order.size()) {}

  std::uint64_t count() { return extend(0); }

 private:
  bool fits(std::size_t i, Vertex y) const {
    if (p_.looped[i] && !g_.has_loop(y)) return false;
    for (std::size_t a : p_.anchors[i])
      if (!g_.adjacent(y, pinned_[a])) return false;
    for (std::size_t e : p_.earlier[i])
      if (!g_.adjacent(y, image_[e])) return false;
    return true;
  }

  std::uint64_t extend(std::size_t i) {
    const bool last = i + 1 == p_.order.size();
    std::uint64_t total = 0;
    for (Vertex y = 0; y < g_.vertex_count(); ++y) {
      if (!fits(i, y)) continue;
      if (last) {
        ++total;
      } else {
        image_[i] = y;
        total = checked_add(total, extend(i + 1));
      }
    }
    return total;
  }

  const Piece& p_;
  const Graph& g_;
  const std::vector<Vertex>& pinned_;
  std::vector<Vertex> image_;
};

}  // namespace

std::vector<std::uint64_t> hom_tensor_counts(const BilabelledGraph& f, const Graph& g, std::size_t cap) {
  const int k = f.k();
  const std::size_t n = g.vertex_count();
  const std::size_t total = checked_power(n, 2 * k, cap);
  std::vector<std::uint64_t> out(total, 0);
  if (n == 0) return out;

  const LabelLayout l = layout(f);
  const auto parts = pieces(f.graph(), l);
  const std::size_t m = l.labelled.size();

  // Weight of each labelled vertex in the flat index: sum over its slots.
  std::vector<std::size_t> weight(m, 0);
  {
    std::size_t w = 1;
    for (int slot = 2 * k - 1; slot >= 0; --slot) {
      weight[l.slot_pos[slot]] += w;
      w *= n;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> labelled_edges;
  for (const Edge& e : f.graph().edges()) {
    if (l.local[e.first] >= 0 && l.local[e.second] >= 0) {
      labelled_edges.emplace_back(l.local[e.first], l.local[e.second]);
    }
  }

  std::vector<Vertex> pinned(m, 0);
  for (;;) {
    bool ok = true;
    for (auto [a, b] : labelled_edges) {
      if (!g.adjacent(pinned[a], pinned[b])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::uint64_t c = 1;
      for (const Piece& p : parts) {
        c = checked_mul(c, PieceCounter(p, g, pinned).count());
        if (c == 0) break;
      }
      std::size_t idx = 0;
      for (std::size_t i = 0; i < m; ++i) idx += weight[i] * pinned[i];
      out[idx] = c;
    }
    std::size_t i = m;
    while (i > 0 && ++pinned[i - 1] == n) pinned[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<std::uint64_t> atomic_tensor_counts(const BilabelledGraph& f, const Graph& g, std::size_t cap) {
  if (!f.is_atomic()) throw TensorError("atomic_tensor_fast: graph has unlabelled vertices");
  const int slots = 2 * f.k();
  const std::size_t n = g.vertex_count();
  const std::size_t total = checked_power(n, slots, cap);
  const LabelLayout l = layout(f);

  // Representative slot per labelled vertex, and slot pairs forced equal.
  std::vector<int> rep(l.labelled.size(), -1);
  std::vector<std::pair<int, int>> equal_slots;
  for (int s = 0; s < slots; ++s) {
    auto& r = rep[l.slot_pos[s]];
    if (r < 0) r = s;
    else equal_slots.emplace_back(r, s);
  }
  std::vector<std::pair<int, int>> edge_slots;
  for (const Edge& e : f.graph().edges()) edge_slots.emplace_back(rep[l.local[e.first]], rep[l.local[e.second]]);

  std::vector<std::uint64_t> out(total, 0);
  std::vector<Vertex> coord(slots, 0);
  for (std::size_t b = 0; b < total; ++b) {
    std::size_t rest = b;
    for (int s = slots - 1; s >= 0; --s) {
      coord[s] = static_cast<Vertex>(rest % n);
      rest /= n;
    }
    bool ok = std::all_of(equal_slots.begin(), equal_slots.end(),
                          [&](auto pr) { return coord[pr.first] == coord[pr.second]; });
    ok = ok && std::all_of(edge_slots.begin(), edge_slots.end(),
                           [&](auto pr) { return g.adjacent(coord[pr.first], coord[pr.second]); });
    out[b] = ok ? 1 : 0;
  }
  return out;
}

std::vector<std::uint32_t> sigma_index_map(int k, std::size_t n, const CyclicPerm& s) {
  const int slots = 2 * k;
  std::size_t total = 1;
  for (int i = 0; i < slots; ++i) total *= n;
  std::vector<std::size_t> place(slots);
  {
    std::size_t w = 1;
    for (int i = slots - 1; i >= 0; --i) {
      place[i] = w;
      w *= n;
    }
  }
  std::vector<int> image(slots);
  for (int i = 0; i < slots; ++i) image[i] = s.apply(i);
  std::vector<std::uint32_t> map(total);
  std::vector<std::size_t> coord(slots, 0);
  for (std::size_t b = 0; b < total; ++b) {
    std::size_t a = 0;
    for (int i = 0; i < slots; ++i) a += coord[i] * place[image[i]];
    map[b] = static_cast<std::uint32_t>(a);
    for (int i = slots - 1; i >= 0; --i) {
      if (++coord[i] < n) break;
      coord[i] = 0;
    }
  }
  return map;
}

}  // namespace npaiso
