#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "npaiso/bilabelled.hpp"
#include "npaiso/kernels.hpp"
#include "npaiso/rings.hpp"

namespace npaiso {

class TensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default refusal threshold on n^{2k}, the entry count of one tensor block.
inline constexpr std::size_t kDefaultTensorCap = 4096;

/// n^e, throwing TensorError once the value reaches `cap`.
std::size_t checked_power(std::size_t n, int e, std::size_t cap);

/// Raw homomorphism counts of F into G, one per (in-tuple, out-tuple) pair,
/// row-major over n^k x n^k. Throws TensorError if an entry overflows 64 bits
/// or n^{2k} reaches `cap`.
std::vector<std::uint64_t> hom_tensor_counts(const BilabelledGraph& f, const Graph& g,
                                             std::size_t cap = kDefaultTensorCap);
/// Same counts for an atomic F (every vertex labelled): entry is 1 iff labelled
/// adjacencies land on edges and shared vertices get equal coordinates.
std::vector<std::uint64_t> atomic_tensor_counts(const BilabelledGraph& f, const Graph& g,
                                                std::size_t cap = kDefaultTensorCap);

template <class Ring>
struct HomTensor {
  using Elem = typename Ring::Elem;
  int k = 1;
  std::size_t n = 0;
  std::size_t dim = 0;  // n^k
  std::vector<Elem> entries;

  const Elem& at(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
};

template <class Ring>
HomTensor<Ring> tensor_from_counts(const Ring& ring, int k, std::size_t n, const std::vector<std::uint64_t>& counts) {
  HomTensor<Ring> t;
  t.k = k;
  t.n = n;
  t.dim = 1;
  for (int i = 0; i < k; ++i) t.dim *= n;
  t.entries.reserve(counts.size());
  for (std::uint64_t c : counts) t.entries.push_back(ring.from_count(c));
  return t;
}

template <class Ring>
HomTensor<Ring> hom_tensor(const BilabelledGraph& f, const Graph& g, const Ring& ring,
                           std::size_t cap = kDefaultTensorCap) {
  return tensor_from_counts(ring, f.k(), g.vertex_count(), hom_tensor_counts(f, g, cap));
}

template <class Ring>
HomTensor<Ring> atomic_tensor_fast(const BilabelledGraph& f, const Graph& g, const Ring& ring,
                                   std::size_t cap = kDefaultTensorCap) {
  return tensor_from_counts(ring, f.k(), g.vertex_count(), atomic_tensor_counts(f, g, cap));
}

namespace detail {
template <class Ring>
void require_compatible(const HomTensor<Ring>& x, const HomTensor<Ring>& y, const char* op) {
  if (x.k != y.k || x.n != y.n) throw TensorError(std::string(op) + ": dimension mismatch");
}
}  // namespace detail

template <class Ring>
HomTensor<Ring> matmul(const Ring& ring, const HomTensor<Ring>& x, const HomTensor<Ring>& y) {
  detail::require_compatible(x, y, "matmul");
  HomTensor<Ring> r{x.k, x.n, x.dim, kernels::matmul(ring, x.entries, y.entries, x.dim)};
  return r;
}

template <class Ring>
HomTensor<Ring> schur(const Ring& ring, const HomTensor<Ring>& x, const HomTensor<Ring>& y) {
  detail::require_compatible(x, y, "schur");
  return {x.k, x.n, x.dim, kernels::schur(ring, x.entries, y.entries)};
}

template <class Ring>
HomTensor<Ring> transpose(const HomTensor<Ring>& x) {
  HomTensor<Ring> r = x;
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j) r.entries[j * x.dim + i] = x.entries[i * x.dim + j];
  return r;
}

/// Index map of a slot rotation on flattened 2k-slot tensors: result[b] = x[map[b]].
std::vector<std::uint32_t> sigma_index_map(int k, std::size_t n, const CyclicPerm& s);

template <class Ring>
HomTensor<Ring> sigma_act_tensor(const HomTensor<Ring>& x, const CyclicPerm& s) {
  if (s.k() != x.k) throw TensorError("sigma_act_tensor: arity mismatch");
  const auto map = sigma_index_map(x.k, x.n, s);
  HomTensor<Ring> r = x;
  for (std::size_t b = 0; b < map.size(); ++b) r.entries[b] = x.entries[map[b]];
  return r;
}

template <class Ring>
typename Ring::Elem soe(const Ring& ring, const HomTensor<Ring>& x) {
  auto s = ring.zero();
  for (const auto& e : x.entries) s = ring.add(s, e);
  return s;
}

template <class Ring>
typename Ring::Elem trace(const Ring& ring, const HomTensor<Ring>& x) {
  auto s = ring.zero();
  for (std::size_t i = 0; i < x.dim; ++i) s = ring.add(s, x.at(i, i));
  return s;
}

template <class Ring>
bool operator==(const HomTensor<Ring>& a, const HomTensor<Ring>& b) {
  return a.k == b.k && a.n == b.n && a.entries == b.entries;
}

template <class Ring>
nlohmann::json tensor_to_json(const Ring& ring, const HomTensor<Ring>& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < x.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < x.dim; ++j) row.push_back(ring.to_integer(x.at(i, j)).get_str());
    rows.push_back(std::move(row));
  }
  return {{"k", x.k}, {"n", x.n}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Block pairs for (G, H)

template <class Ring>
struct TensorPair {
  HomTensor<Ring> g;
  HomTensor<Ring> h;
};

template <class Ring>
TensorPair<Ring> matmul(const Ring& ring, const TensorPair<Ring>& x, const TensorPair<Ring>& y) {
  return {matmul(ring, x.g, y.g), matmul(ring, x.h, y.h)};
}

template <class Ring>
TensorPair<Ring> schur(const Ring& ring, const TensorPair<Ring>& x, const TensorPair<Ring>& y) {
  return {schur(ring, x.g, y.g), schur(ring, x.h, y.h)};
}

template <class Ring>
TensorPair<Ring> sigma_act_tensor(const TensorPair<Ring>& x, const CyclicPerm& s) {
  return {sigma_act_tensor(x.g, s), sigma_act_tensor(x.h, s)};
}

template <class Ring>
std::pair<typename Ring::Elem, typename Ring::Elem> soe_pair(const Ring& ring, const TensorPair<Ring>& x) {
  return {soe(ring, x.g), soe(ring, x.h)};
}

/// G block row-major, then H block row-major.
template <class Ring>
std::vector<typename Ring::Elem> flatten(const TensorPair<Ring>& x) {
  std::vector<typename Ring::Elem> v;
  v.reserve(x.g.entries.size() + x.h.entries.size());
  v.insert(v.end(), x.g.entries.begin(), x.g.entries.end());
  v.insert(v.end(), x.h.entries.begin(), x.h.entries.end());
  return v;
}

template <class Ring>
TensorPair<Ring> unflatten(const std::vector<typename Ring::Elem>& v, int k, std::size_t ng, std::size_t nh) {
  TensorPair<Ring> x;
  auto fill = [&](HomTensor<Ring>& t, std::size_t n, std::size_t offset) {
    t.k = k;
    t.n = n;
    t.dim = 1;
    for (int i = 0; i < k; ++i) t.dim *= n;
    t.entries.assign(v.begin() + offset, v.begin() + offset + t.dim * t.dim);
  };
  fill(x.g, ng, 0);
  fill(x.h, nh, x.g.entries.size());
  return x;
}

template <class Ring>
TensorPair<Ring> tensor_pair(const BilabelledGraph& f, const Graph& g, const Graph& h, const Ring& ring,
                             std::size_t cap = kDefaultTensorCap) {
  if (f.is_atomic()) return {atomic_tensor_fast(f, g, ring, cap), atomic_tensor_fast(f, h, ring, cap)};
  return {hom_tensor(f, g, ring, cap), hom_tensor(f, h, ring, cap)};
}

/// Evaluates a provenance expression bottom-up with tensor algebra. Shared
/// subexpressions are computed once.
template <class Ring>
class ExprEvaluator {
 public:
  ExprEvaluator(const Graph& g, int k, const Ring& ring, std::size_t cap = kDefaultTensorCap)
      : g_(g), k_(k), ring_(ring), cap_(cap) {}

  const HomTensor<Ring>& operator()(const ExprPtr& e) {
    if (!e) throw TensorError("cannot evaluate an empty expression");
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    HomTensor<Ring> t;
    switch (e->op) {
      case Expr::Op::Generator:
      case Expr::Op::Minor: {
        const BilabelledGraph f = materialize(e, k_);
        t = f.is_atomic() ? atomic_tensor_fast(f, g_, ring_, cap_) : hom_tensor(f, g_, ring_, cap_);
        break;
      }
      case Expr::Op::Series: {
        const auto& a = (*this)(e->lhs);
        t = matmul(ring_, a, (*this)(e->rhs));
        break;
      }
      case Expr::Op::Parallel: {
        const auto& a = (*this)(e->lhs);
        t = schur(ring_, a, (*this)(e->rhs));
        break;
      }
      case Expr::Op::Sigma: t = sigma_act_tensor((*this)(e->lhs), CyclicPerm(k_, e->power)); break;
      case Expr::Op::Swap: t = transpose((*this)(e->lhs)); break;
    }
    keep_.push_back(e);
    return memo_.emplace(e.get(), std::move(t)).first->second;
  }

 private:
  const Graph& g_;
  int k_;
  Ring ring_;
  std::size_t cap_;
  std::unordered_map<const Expr*, HomTensor<Ring>> memo_;
  std::vector<ExprPtr> keep_;
};

}  // namespace npaiso
