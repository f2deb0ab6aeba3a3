#pragma once

#include <optional>

#include <gmpxx.h>

#include "npaiso/rng.hpp"

namespace npaiso {

/// Miller-Rabin after trial division by small primes. Below 3.3e24 the fixed
/// base set {2, 3, ..., 41} makes the answer exact; above it `rounds` bases
/// are drawn from `rng` (a fixed internal stream when none is given).
bool is_probable_prime(const mpz_class& n, int rounds = 64, CounterRng* rng = nullptr);

/// Uniform draws from (lo, hi] until one passes is_probable_prime or the
/// budget (default 64 * bitlen(hi)) runs out. Throws std::invalid_argument
/// unless lo < hi.
std::optional<mpz_class> sample_prime_in(const mpz_class& lo, const mpz_class& hi, CounterRng& rng,
                                         std::size_t budget = 0);

/// A prime with exactly `bits` bits (2 <= bits), drawn uniformly among
/// candidates of that length.
mpz_class random_prime_bits(unsigned bits, CounterRng& rng);

}  // namespace npaiso
