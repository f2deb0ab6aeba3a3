#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace npaiso {

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integers.
struct IntegerRing {
  using Elem = mpz_class;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_count(std::uint64_t c) const { return Elem(static_cast<unsigned long>(c)); }
  Elem from_integer(const mpz_class& z) const { return z; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  mpz_class to_integer(const Elem& a) const { return a; }
  std::string name() const { return "Z"; }
};

/// F_p for an odd prime p < 2^63, elements kept in Montgomery form with R = 2^64.
/// The caller is responsible for p being prime; see make_prime_field.
class PrimeField64 {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField64(std::uint64_t p) : p_(p) {
    if (p < 3 || (p & 1) == 0 || p >> 63) throw FieldError("PrimeField64 needs an odd modulus below 2^63");
    // -p^{-1} mod 2^64 by Newton iteration.
    std::uint64_t inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    pneg_inv_ = ~inv + 1;
    const unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
    r1_ = static_cast<std::uint64_t>(r);
    r2_ = static_cast<std::uint64_t>((r * r) % p);
  }

  std::uint64_t modulus() const { return p_; }
  mpz_class modulus_mpz() const { return to_mpz(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return r1_; }
  Elem from_count(std::uint64_t c) const { return mul(c % p_, r2_); }
  Elem from_integer(const mpz_class& z) const {
    mpz_class r = z % modulus_mpz();
    if (r < 0) r += modulus_mpz();
    return from_count(to_u64(r));
  }

  Elem add(Elem a, Elem b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return reduce(static_cast<unsigned __int128>(a) * b); }
  /// Montgomery reduction of t < p * 2^64.
  Elem reduce(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * pneg_inv_;
    const unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    const auto r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }
  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("inverse of zero");
    // a = xR, so r = x^{-1} R^{-1}; each product with R^2 adds one factor of R.
    mpz_class x = to_mpz(a), m = modulus_mpz(), r;
    mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return mul(mul(to_u64(r), r2_), r2_);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  std::uint64_t canonical(Elem a) const { return reduce(a); }
  mpz_class to_integer(Elem a) const { return to_mpz(canonical(a)); }
  std::string name() const { return "F_" + std::to_string(p_); }

  static mpz_class to_mpz(std::uint64_t v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
  }
  static std::uint64_t to_u64(const mpz_class& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
  }

 private:
  std::uint64_t p_;
  std::uint64_t pneg_inv_ = 0;
  std::uint64_t r1_ = 0;
  std::uint64_t r2_ = 0;
};

/// F_p for arbitrary p (including 2 and moduli beyond 63 bits).
/// F_p for odd p < 2^30 in Montgomery form with R = 2^32. The bound leaves
/// room to sum four raw products before a reduction, which the vectorized
/// kernels rely on.
class PrimeField32 {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxModulus = 1ULL << 30;

  explicit PrimeField32(std::uint32_t p) : p_(p) {
    if (p < 3 || (p & 1) == 0 || p >= kMaxModulus) throw FieldError("PrimeField32 needs an odd modulus below 2^30");
    std::uint32_t inv = p;
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    pneg_inv_ = ~inv + 1;
    r1_ = static_cast<std::uint32_t>((1ULL << 32) % p);
    r2_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r1_) * r1_) % p);
  }

  std::uint32_t modulus() const { return p_; }
  std::uint32_t neg_inverse() const { return pneg_inv_; }
  mpz_class modulus_mpz() const { return mpz_class(static_cast<unsigned long>(p_)); }

  Elem zero() const { return 0; }
  Elem one() const { return r1_; }
  Elem from_count(std::uint64_t c) const { return mul(static_cast<Elem>(c % p_), r2_); }
  Elem from_integer(const mpz_class& z) const {
    mpz_class r = z % modulus_mpz();
    if (r < 0) r += modulus_mpz();
    return from_count(r.get_ui());
  }

  Elem add(Elem a, Elem b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    const Elem r = reduce_lazy(static_cast<std::uint64_t>(a) * b);
    return r >= p_ ? r - p_ : r;
  }
  /// Montgomery reduction of t < p * 2^32 into [0, 2p).
  Elem reduce_lazy(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pneg_inv_;
    return static_cast<Elem>((t + static_cast<std::uint64_t>(m) * p_) >> 32);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("inverse of zero");
    mpz_class x(static_cast<unsigned long>(a)), r;
    const mpz_class m = modulus_mpz();
    mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return mul(mul(static_cast<Elem>(r.get_ui()), r2_), r2_);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  std::uint32_t canonical(Elem a) const {
    const Elem r = reduce_lazy(a);
    return r >= p_ ? r - p_ : r;
  }
  mpz_class to_integer(Elem a) const { return mpz_class(static_cast<unsigned long>(canonical(a))); }
  std::string name() const { return "F_" + std::to_string(p_); }

 private:
  std::uint32_t p_;
  std::uint32_t pneg_inv_ = 0;
  std::uint32_t r1_ = 0;
  std::uint32_t r2_ = 0;
};

class PrimeFieldBig {
 public:
  using Elem = mpz_class;

  explicit PrimeFieldBig(mpz_class p) : p_(std::move(p)) {
    if (p_ < 2) throw FieldError("modulus must be at least 2");
  }
  const mpz_class& modulus() const { return p_; }
  const mpz_class& modulus_mpz() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return p_ == 1 ? 0 : 1; }
  Elem from_count(std::uint64_t c) const { return from_integer(PrimeField64::to_mpz(c)); }
  Elem from_integer(const mpz_class& z) const {
    Elem r;
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= p_) s -= p_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (sgn(s) < 0) s += p_;
    return s;
  }
  Elem neg(const Elem& a) const { return sgn(a) == 0 ? Elem(0) : Elem(p_ - a); }
  Elem mul(const Elem& a, const Elem& b) const { return from_integer(a * b); }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw FieldError("inverse of zero");
    Elem r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0) throw FieldError("element not invertible");
    return r;
  }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  mpz_class to_integer(const Elem& a) const { return a; }
  std::string name() const { return "F_" + p_.get_str(); }

 private:
  mpz_class p_;
};

}  // namespace npaiso
