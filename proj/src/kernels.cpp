#include "npaiso/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

#ifdef _OPENMP
#include <omp.h>
#endif

namespace npaiso::kernels {

namespace {

// Portable loops. They are also the fallback when AVX-512 is missing.

void combo32_portable(std::uint32_t* y, const std::uint32_t* const* x, const std::uint32_t* c, std::uint32_t p,
                      std::uint32_t pneg, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t t = std::uint64_t{c[0]} * x[0][i] + std::uint64_t{c[1]} * x[1][i] +
                            std::uint64_t{c[2]} * x[2][i] + std::uint64_t{c[3]} * x[3][i];
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pneg;
    std::uint32_t r = static_cast<std::uint32_t>((t + std::uint64_t{m} * p) >> 32);
    r = r >= p ? r - p : r;
    const std::uint32_t v = y[i];
    y[i] = v >= r ? v - r : v + p - r;
  }
}

// Each reduced product is below 2p < 2^31, so the sum cannot overflow for any
// vector that fits in memory.
std::uint64_t dot32_portable(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t p, std::uint32_t pneg,
                             std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t t = std::uint64_t{a[i]} * b[i];
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pneg;
    acc += (t + std::uint64_t{m} * p) >> 32;
  }
  return acc;
}

void axpy32_portable(std::uint64_t* acc, const std::uint32_t* row, std::uint32_t c, std::uint32_t p,
                     std::uint32_t pneg, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t t = std::uint64_t{c} * row[j];
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pneg;
    acc[j] += (t + std::uint64_t{m} * p) >> 32;
  }
}

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define NPAISO_HAVE_AVX512 1

// Eight elements per step in 64-bit lanes. _mm512_mul_epu32 only reads the
// low 32 bits of each lane, which is exactly the Montgomery step m = t * p'.

__attribute__((target("avx512f"))) inline __m512i redc8(__m512i t, __m512i p, __m512i pneg) {
  const __m512i m = _mm512_mul_epu32(t, pneg);
  const __m512i r = _mm512_srli_epi64(_mm512_add_epi64(t, _mm512_mul_epu32(m, p)), 32);
  return _mm512_min_epu64(r, _mm512_sub_epi64(r, p));
}

__attribute__((target("avx512f"))) inline __m512i load8(const std::uint32_t* a) {
  return _mm512_cvtepu32_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a)));
}

__attribute__((target("avx512f"))) void combo32_avx512(std::uint32_t* y, const std::uint32_t* const* x,
                                                       const std::uint32_t* c, std::uint32_t p, std::uint32_t pneg,
                                                       std::size_t n) {
  const __m512i vp = _mm512_set1_epi64(p), vn = _mm512_set1_epi64(pneg);
  const __m512i c0 = _mm512_set1_epi64(c[0]), c1 = _mm512_set1_epi64(c[1]), c2 = _mm512_set1_epi64(c[2]),
                c3 = _mm512_set1_epi64(c[3]);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m512i t = _mm512_mul_epu32(load8(x[0] + i), c0);
    t = _mm512_add_epi64(t, _mm512_mul_epu32(load8(x[1] + i), c1));
    t = _mm512_add_epi64(t, _mm512_mul_epu32(load8(x[2] + i), c2));
    t = _mm512_add_epi64(t, _mm512_mul_epu32(load8(x[3] + i), c3));
    const __m512i r = redc8(t, vp, vn);
    __m512i d = _mm512_sub_epi64(load8(y + i), r);
    d = _mm512_min_epu64(d, _mm512_add_epi64(d, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm512_cvtepi64_epi32(d));
  }
  const std::uint32_t* tail[4] = {x[0] + i, x[1] + i, x[2] + i, x[3] + i};
  combo32_portable(y + i, tail, c, p, pneg, n - i);
}

__attribute__((target("avx512f"))) std::uint64_t dot32_avx512(const std::uint32_t* a, const std::uint32_t* b,
                                                              std::uint32_t p, std::uint32_t pneg, std::size_t n) {
  const __m512i vp = _mm512_set1_epi64(p), vn = _mm512_set1_epi64(pneg);
  __m512i acc = _mm512_setzero_si512();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) acc = _mm512_add_epi64(acc, redc8(_mm512_mul_epu32(load8(a + i), load8(b + i)), vp, vn));
  return static_cast<std::uint64_t>(_mm512_reduce_add_epi64(acc)) + dot32_portable(a + i, b + i, p, pneg, n - i);
}

__attribute__((target("avx512f"))) void axpy32_avx512(std::uint64_t* acc, const std::uint32_t* row, std::uint32_t c,
                                                      std::uint32_t p, std::uint32_t pneg, std::size_t n) {
  const __m512i vp = _mm512_set1_epi64(p), vn = _mm512_set1_epi64(pneg), vc = _mm512_set1_epi64(c);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m512i r = redc8(_mm512_mul_epu32(load8(row + j), vc), vp, vn);
    _mm512_storeu_si512(acc + j, _mm512_add_epi64(_mm512_loadu_si512(acc + j), r));
  }
  axpy32_portable(acc + j, row + j, c, p, pneg, n - j);
}

bool use_avx512() {
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx512f") != 0;
  }();
  return ok;
}
#endif

void combo32(std::uint32_t* y, const std::uint32_t* const* x, const std::uint32_t* c, std::uint32_t p,
             std::uint32_t pneg, std::size_t n) {
#ifdef NPAISO_HAVE_AVX512
  if (use_avx512()) return combo32_avx512(y, x, c, p, pneg, n);
#endif
  combo32_portable(y, x, c, p, pneg, n);
}

std::uint64_t dot32(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t p, std::uint32_t pneg,
                    std::size_t n) {
#ifdef NPAISO_HAVE_AVX512
  if (use_avx512()) return dot32_avx512(a, b, p, pneg, n);
#endif
  return dot32_portable(a, b, p, pneg, n);
}

void axpy32(std::uint64_t* acc, const std::uint32_t* row, std::uint32_t c, std::uint32_t p, std::uint32_t pneg,
            std::size_t n) {
#ifdef NPAISO_HAVE_AVX512
  if (use_avx512()) return axpy32_avx512(acc, row, c, p, pneg, n);
#endif
  axpy32_portable(acc, row, c, p, pneg, n);
}

constexpr std::size_t kParallelLength = 1 << 14;

}  // namespace

void sub_combination(const PrimeField32& f, std::vector<std::uint32_t>& y, const std::uint32_t* c,
                     const std::vector<std::uint32_t>* const* x, std::size_t m, std::size_t from) {
  if (m > 4) throw std::invalid_argument("sub_combination: at most four rows");
  if (from >= y.size()) return;
  // Missing rows are padded with a zero coefficient against the first row.
  std::uint32_t cc[4] = {0, 0, 0, 0};
  const std::uint32_t* xs[4];
  for (std::size_t j = 0; j < 4; ++j) {
    cc[j] = j < m ? c[j] : 0;
    xs[j] = (j < m ? x[j] : x[0])->data();
  }
  const std::size_t n = y.size() - from;
  auto run = [&](std::size_t lo, std::size_t hi) {
    const std::uint32_t* at[4] = {xs[0] + from + lo, xs[1] + from + lo, xs[2] + from + lo, xs[3] + from + lo};
    combo32(y.data() + from + lo, at, cc, f.modulus(), f.neg_inverse(), hi - lo);
  };
  if (n < kParallelLength) {
    run(0, n);
    return;
  }
#pragma omp parallel
  {
#ifdef _OPENMP
    const std::size_t t = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
#else
    const std::size_t t = 0, nt = 1;
#endif
    run(n * t / nt, n * (t + 1) / nt);
  }
}

void sub_combination(const PrimeField64& f, std::vector<std::uint64_t>& y, const std::uint64_t* c,
                     const std::vector<std::uint64_t>* const* x, std::size_t m, std::size_t from) {
  if (m > 4) throw std::invalid_argument("sub_combination: at most four rows");
  // Four products stay below p * 2^64 only when p < 2^62.
  if (f.modulus() >> 62) {
    sub_combination_reference(f, y, c, x, m, from);
    return;
  }
  if (from >= y.size()) return;
  std::uint64_t cc[4];
  const std::uint64_t* xs[4];
  for (std::size_t j = 0; j < 4; ++j) {
    cc[j] = j < m ? c[j] : 0;
    xs[j] = (j < m ? x[j] : x[0])->data();
  }
  auto run = [&](std::size_t lo, std::size_t hi) {
    std::uint64_t* out = y.data();
    for (std::size_t i = lo; i < hi; ++i) {
      unsigned __int128 t = static_cast<unsigned __int128>(cc[0]) * xs[0][i];
      t += static_cast<unsigned __int128>(cc[1]) * xs[1][i];
      t += static_cast<unsigned __int128>(cc[2]) * xs[2][i];
      t += static_cast<unsigned __int128>(cc[3]) * xs[3][i];
      out[i] = f.sub(out[i], f.reduce(t));
    }
  };
  const std::size_t n = y.size();
  if (n - from < kParallelLength) {
    run(from, n);
    return;
  }
#pragma omp parallel
  {
#ifdef _OPENMP
    const std::size_t t = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
#else
    const std::size_t t = 0, nt = 1;
#endif
    run(from + (n - from) * t / nt, from + (n - from) * (t + 1) / nt);
  }
}

std::uint32_t dot(const PrimeField32& f, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  return static_cast<std::uint32_t>(dot32(a.data(), b.data(), f.modulus(), f.neg_inverse(), a.size()) %
                                    f.modulus());
}

std::vector<std::uint32_t> matmul(const PrimeField32& f, const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b, std::size_t n) {
  std::vector<std::uint32_t> c(n * n);
#pragma omp parallel for schedule(static) if (n >= 32)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i * n + l] != 0) axpy32(acc.data(), b.data() + l * n, a[i * n + l], f.modulus(), f.neg_inverse(), n);
    }
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = static_cast<std::uint32_t>(acc[j] % f.modulus());
  }
  return c;
}

}  // namespace npaiso::kernels
