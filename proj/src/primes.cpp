#include "npaiso/primes.hpp"

#include <array>
#include <stdexcept>

namespace npaiso {

namespace {

constexpr std::array<unsigned, 13> kDeterministicBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Bases 2..41 are exact below this bound (Sorenson and Webster).
const mpz_class& deterministic_limit() {
  static const mpz_class limit("3317044064679887385961981");
  return limit;
}

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> out;
    std::vector<bool> composite(1000, false);
    for (unsigned i = 2; i < 1000; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j < 1000; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// n odd, n > 3, n - 1 = d * 2^s.
bool strong_probable_prime(const mpz_class& n, const mpz_class& d, unsigned long s, const mpz_class& base) {
  const mpz_class n1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const mpz_class& n, int rounds, CounterRng* rng) {
  if (n < 2) return false;
  for (unsigned p : small_primes()) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 1000000) return true;  // no factor below 1000

  mpz_class d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  if (n < deterministic_limit()) {
    for (unsigned b : kDeterministicBases) {
      if (!strong_probable_prime(n, d, s, mpz_class(b))) return false;
    }
    return true;
  }
  CounterRng fallback(0x5eedba5eULL);
  CounterRng& source = rng ? *rng : fallback;
  const mpz_class span = n - 3;
  for (int i = 0; i < rounds; ++i) {
    if (!strong_probable_prime(n, d, s, source.below(span) + 2)) return false;
  }
  return true;
}

std::optional<mpz_class> sample_prime_in(const mpz_class& lo, const mpz_class& hi, CounterRng& rng,
                                         std::size_t budget) {
  if (!(lo < hi)) throw std::invalid_argument("sample_prime_in: need lo < hi");
  if (budget == 0) budget = 64 * mpz_sizeinbase(hi.get_mpz_t(), 2);
  const mpz_class width = hi - lo;
  for (std::size_t i = 0; i < budget; ++i) {
    mpz_class candidate = lo + 1 + rng.below(width);
    if (is_probable_prime(candidate, 64, &rng)) return candidate;
  }
  return std::nullopt;
}

mpz_class random_prime_bits(unsigned bits, CounterRng& rng) {
  if (bits < 2) throw std::invalid_argument("random_prime_bits: need at least 2 bits");
  mpz_class lo, hi;
  mpz_ui_pow_ui(lo.get_mpz_t(), 2, bits - 1);
  hi = 2 * lo - 1;
  // (2^{b-1} - 1, 2^b - 1] always contains a prime (Bertrand); keep drawing.
  for (;;) {
    if (auto p = sample_prime_in(lo - 1, hi, rng)) return *p;
  }
}

}  // namespace npaiso
