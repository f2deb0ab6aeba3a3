#pragma once

#include <cstddef>
#include <vector>

#include "npaiso/rings.hpp"

// Dense kernels over a ring. Each parallel kernel has a plain serial twin that
// the tests and the benchmark compare against.

namespace npaiso::kernels {

template <class Ring>
using Vec = std::vector<typename Ring::Elem>;

/// C = A * B for n x n row-major matrices.
template <class Ring>
Vec<Ring> matmul_reference(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b, std::size_t n) {
  Vec<Ring> c(n * n, ring.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const auto& x = a[i * n + l];
      if (ring.is_zero(x)) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = ring.add(c[i * n + j], ring.mul(x, b[l * n + j]));
    }
  return c;
}

template <class Ring>
Vec<Ring> matmul(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b, std::size_t n) {
  if (n < 32) return matmul_reference(ring, a, b, n);
  Vec<Ring> c(n * n, ring.zero());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t l = 0; l < n; ++l) {
      const auto& x = a[i * n + l];
      if (ring.is_zero(x)) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = ring.add(c[i * n + j], ring.mul(x, b[l * n + j]));
    }
  }
  return c;
}

template <class Ring>
Vec<Ring> schur_reference(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b) {
  Vec<Ring> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = ring.mul(a[i], b[i]);
  return c;
}

template <class Ring>
Vec<Ring> schur(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b) {
  if (a.size() < 4096) return schur_reference(ring, a, b);
  Vec<Ring> c(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.size()); ++i) c[i] = ring.mul(a[i], b[i]);
  return c;
}

/// y -= c * x over the index range [from, x.size()).
template <class Ring>
void sub_scaled_reference(const Ring& ring, Vec<Ring>& y, const typename Ring::Elem& c, const Vec<Ring>& x,
                          std::size_t from = 0) {
  for (std::size_t i = from; i < x.size(); ++i) y[i] = ring.sub(y[i], ring.mul(c, x[i]));
}

template <class Ring>
void sub_scaled(const Ring& ring, Vec<Ring>& y, const typename Ring::Elem& c, const Vec<Ring>& x,
                std::size_t from = 0) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (x.size() - from < (1 << 14)) {
    sub_scaled_reference(ring, y, c, x, from);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from); i < n; ++i) y[i] = ring.sub(y[i], ring.mul(c, x[i]));
}

/// y -= c[0] x[0] + ... + c[m-1] x[m-1] over [from, y.size()), for m <= 4.
template <class Ring>
void sub_combination_reference(const Ring& ring, Vec<Ring>& y, const typename Ring::Elem* c,
                               const Vec<Ring>* const* x, std::size_t m, std::size_t from = 0) {
  for (std::size_t i = from; i < y.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) y[i] = ring.sub(y[i], ring.mul(c[j], (*x[j])[i]));
}

template <class Ring>
void sub_combination(const Ring& ring, Vec<Ring>& y, const typename Ring::Elem* c, const Vec<Ring>* const* x,
                     std::size_t m, std::size_t from = 0) {
  sub_combination_reference(ring, y, c, x, m, from);
}

// Lazy-reduction specializations, defined in kernels.cpp. Four raw products
// are summed before one Montgomery reduction.
void sub_combination(const PrimeField32& f, std::vector<std::uint32_t>& y, const std::uint32_t* c,
                     const std::vector<std::uint32_t>* const* x, std::size_t m, std::size_t from = 0);
void sub_combination(const PrimeField64& f, std::vector<std::uint64_t>& y, const std::uint64_t* c,
                     const std::vector<std::uint64_t>* const* x, std::size_t m, std::size_t from = 0);
std::uint32_t dot(const PrimeField32& f, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
std::vector<std::uint32_t> matmul(const PrimeField32& f, const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b, std::size_t n);

template <class Ring>
typename Ring::Elem dot_reference(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b) {
  auto s = ring.zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = ring.add(s, ring.mul(a[i], b[i]));
  return s;
}

template <class Ring>
typename Ring::Elem dot(const Ring& ring, const Vec<Ring>& a, const Vec<Ring>& b) {
  return dot_reference(ring, a, b);
}

/// Prime-field dot product: raw 128-bit products are summed four at a time
/// (each is below p^2 < 2^124) and folded with one Montgomery reduction.
inline std::uint64_t dot(const PrimeField64& f, const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) {
  const std::uint64_t p = f.modulus();
  if (p >> 62) return dot_reference(f, a, b);
  std::uint64_t s = 0;
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    unsigned __int128 t = static_cast<unsigned __int128>(a[i]) * b[i];
    t += static_cast<unsigned __int128>(a[i + 1]) * b[i + 1];
    t += static_cast<unsigned __int128>(a[i + 2]) * b[i + 2];
    t += static_cast<unsigned __int128>(a[i + 3]) * b[i + 3];
    s = f.add(s, f.reduce(t));
  }
  for (; i < n; ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace npaiso::kernels
