#include <doctest.h>

#include "npaiso/basis.hpp"
#include "npaiso/hom_tensor.hpp"
#include "npaiso/kernels.hpp"
#include "npaiso/primes.hpp"
#include "npaiso/rings.hpp"

using namespace npaiso;

namespace {

template <class F>
std::vector<typename F::Elem> random_vec(const F& f, std::size_t n, CounterRng& rng) {
	std::vector<typename F::Elem> v(n);
	for (auto& e : v) e = f.from_integer(rng.below(f.modulus_mpz()));
	return v;
}

template <class F>
std::vector<mpz_class> lift(const F& f, const std::vector<typename F::Elem>& v) {
	std::vector<mpz_class> out;
	for (const auto& e : v) out.push_back(f.to_integer(e));
	return out;
}

template <class F>
void field_laws(const F& f) {
	const mpz_class p = f.modulus_mpz();
	CounterRng rng(77);
	for (int i = 0; i < 100; ++i) {
		const mpz_class a = rng.below(p - 1) + 1, b = rng.below(p);
		const auto x = f.from_integer(a), y = f.from_integer(b);
		CHECK(f.to_integer(f.mul(x, f.inv(x))) == 1);
		CHECK(f.to_integer(f.add(x, y)) == (a + b) % p);
		CHECK(f.to_integer(f.mul(x, y)) == (a * b) % p);
		CHECK(f.to_integer(f.sub(x, y)) == ((a - b) % p + p) % p);
		CHECK(f.to_integer(f.add(x, f.neg(x))) == 0);
	}
	CHECK(f.to_integer(f.from_integer(-1)) == p - 1);
	CHECK(f.to_integer(f.from_count(12345)) == mpz_class(12345) % p);
}

}  // namespace

TEST_CASE("small_field_examples") {
	const PrimeField64 f(7);
	CHECK(f.to_integer(f.inv(f.from_integer(2))) == 4);
	CHECK(f.to_integer(f.add(f.from_integer(6), f.from_integer(6))) == 5);
	const PrimeField32 g(7);
	CHECK(g.to_integer(g.inv(g.from_integer(2))) == 4);
	const PrimeFieldBig b(7);
	CHECK(b.to_integer(b.inv(b.from_integer(2))) == 4);
	CHECK_THROWS_AS(f.inv(f.zero()), FieldError);
}

TEST_CASE("field_laws") {
	field_laws(PrimeField32(101));
	field_laws(PrimeField32(1073741789));
	field_laws(PrimeField64(101));
	field_laws(PrimeField64(2305843009213693951ULL));
	field_laws(PrimeField64(9223372036854775783ULL));
	field_laws(PrimeFieldBig(mpz_class("170141183460469231731687303715884105727")));
	CHECK_THROWS_AS(PrimeField32(1u << 30 | 1u), FieldError);
	CHECK_THROWS_AS(PrimeField64(10), FieldError);
}

TEST_CASE("primality") {
	mpz_class m61 = 1;
	m61 <<= 61;
	m61 -= 1;
	CHECK(is_probable_prime(m61));
	CHECK(mpz_probab_prime_p(m61.get_mpz_t(), 30) > 0);
	CHECK_FALSE(is_probable_prime(561));
	CHECK_FALSE(is_probable_prime(4));
	CHECK_FALSE(is_probable_prime(1));
	CHECK(is_probable_prime(2));
	CHECK(is_probable_prime(1000003));
	CHECK_FALSE(is_probable_prime(mpz_class("3825123056546413051")));  // strong pseudoprime to bases 2..23
	mpz_class m127 = 1;
	m127 <<= 127;
	CHECK(is_probable_prime(m127 - 1));
	CHECK_FALSE(is_probable_prime((m127 - 1) * (m61)));

	CounterRng rng(5);
	for (unsigned n = 2; n < 3000; ++n) CHECK(is_probable_prime(n) == (mpz_probab_prime_p(mpz_class(n).get_mpz_t(), 30) > 0));
}

TEST_CASE("prime_sampling") {
	CounterRng rng(9);
	for (int i = 0; i < 50; ++i) {
		const auto p = sample_prime_in(10, 100, rng);
		REQUIRE(p);
		CHECK(*p > 10);
		CHECK(*p <= 100);
		CHECK(mpz_probab_prime_p(p->get_mpz_t(), 30) > 0);
	}
	const auto three = sample_prime_in(2, 3, rng);
	REQUIRE(three);
	CHECK(*three == 3);
	CHECK_FALSE(sample_prime_in(24, 28, rng, 50));
	CHECK_THROWS_AS(sample_prime_in(5, 5, rng), std::invalid_argument);

	const mpz_class lo = 829079, hi = mpz_class(829079) * 829079;
	for (int i = 0; i < 20; ++i) {
		const auto p = sample_prime_in(lo, hi, rng);
		REQUIRE(p);
		CHECK(*p > lo);
		CHECK(*p <= hi);
		CHECK(mpz_probab_prime_p(p->get_mpz_t(), 30) > 0);
	}
	for (unsigned bits : {2u, 30u, 62u, 200u}) {
		const mpz_class p = random_prime_bits(bits, rng);
		CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) == bits);
		CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
	}
}

TEST_CASE("rng_reproducible") {
	CounterRng a(42), b(42), c(43);
	for (int i = 0; i < 10; ++i) {
		const auto x = a.next();
		CHECK(x == b.next());
		CHECK(x != c.next());
	}
	CounterRng d(1);
	for (int i = 0; i < 1000; ++i) CHECK(d.below(std::uint64_t{7}) < 7);
	const mpz_class big("1000000000000000000000000000");
	for (int i = 0; i < 100; ++i) CHECK(d.below(big) < big);
}

TEST_CASE("basis_examples") {
	const PrimeField64 f(101);
	IncrementalBasis<PrimeField64> b(f, 3);
	const auto one = f.one(), zero = f.zero();
	CHECK_FALSE(b.insert_if_independent({zero, zero, zero}, nullptr));
	CHECK(b.insert_if_independent({one, zero, zero}, nullptr));
	CHECK(b.insert_if_independent({one, one, zero}, nullptr));
	CHECK_FALSE(b.insert_if_independent({zero, one, zero}, nullptr));
	CHECK(b.rank() == 2);
	CHECK_THROWS_AS(b.insert_if_independent({one}, nullptr), std::invalid_argument);

	const Graph c3 = cycle_graph(3);
	IncrementalBasis<PrimeField64> t(f, 18);
	CHECK(t.insert_if_independent(flatten(tensor_pair(J_atomic(1), c3, c3, f)), J_atomic(1).provenance()));
	CHECK(t.insert_if_independent(flatten(tensor_pair(I_atomic(1), c3, c3, f)), I_atomic(1).provenance()));
	CHECK(expr_to_string(t.provenance(1)) == "I");
}

TEST_CASE("basis_rank_and_idempotence") {
	const PrimeField64 f(13);
	CounterRng rng(61);
	for (int rep = 0; rep < 30; ++rep) {
		const std::size_t dim = 1 + rng.below(12);
		IncrementalBasis<PrimeField64> b(f, dim);
		std::vector<std::vector<std::uint64_t>> all;
		const std::size_t count = rng.below(16);
		for (std::size_t i = 0; i < count; ++i) {
			std::vector<std::uint64_t> v = random_vec(f, dim, rng);
			// Mix in dependent vectors.
			if (!all.empty() && rng.below(3) == 0) {
				const auto& u = all[rng.below(all.size())];
				const auto c = f.from_integer(rng.below(std::uint64_t{13}));
				for (std::size_t j = 0; j < dim; ++j) v[j] = f.mul(c, u[j]);
			}
			all.push_back(v);
			b.insert_if_independent(v, nullptr);
			CHECK(b.rank() == rank_of(f, all));
		}
		for (std::size_t i = 0; i < b.rank(); ++i) {
			CHECK_FALSE(b.insert_if_independent(b.original(i), nullptr));
			CHECK(b.contains(b.original(i)));
		}
		for (std::size_t i = 0; i < b.pivots().size(); ++i) {
			CHECK(f.to_integer(b.echelon_rows()[i][b.pivots()[i]]) == 1);
			if (i > 0) CHECK(b.pivots()[i - 1] < b.pivots()[i]);
		}
	}
}

TEST_CASE("basis_batch_matches_sequential") {
	const PrimeField32 f(11);
	CounterRng rng(3);
	for (int rep = 0; rep < 30; ++rep) {
		const std::size_t dim = 2 + rng.below(10);
		IncrementalBasis<PrimeField32> seq(f, dim), bat(f, dim);
		for (int warm = 0; warm < 2; ++warm) {
			const auto v = random_vec(f, dim, rng);
			seq.insert_if_independent(v, nullptr);
			bat.insert_if_independent(v, nullptr);
		}
		std::vector<std::vector<std::uint32_t>> batch;
		for (std::size_t i = 0; i < 8; ++i) {
			auto v = random_vec(f, dim, rng);
			if (i > 0 && rng.below(2) == 0) v = batch[rng.below(i)];
			batch.push_back(v);
		}
		std::vector<bool> expected;
		for (const auto& v : batch) expected.push_back(seq.insert_if_independent(v, nullptr));
		const auto status = bat.insert_batch(batch, std::vector<ExprPtr>(batch.size()));
		for (std::size_t i = 0; i < batch.size(); ++i)
			CHECK((status[i] == IncrementalBasis<PrimeField32>::BatchStatus::Inserted) == expected[i]);
		CHECK(bat.pivots() == seq.pivots());
		for (std::size_t i = 0; i < seq.rank(); ++i) CHECK(lift(f, bat.echelon_rows()[i]) == lift(f, seq.echelon_rows()[i]));
	}

	IncrementalBasis<PrimeField32> b(f, 3);
	const auto one = f.one(), zero = f.zero();
	const auto st = b.insert_batch({{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}, std::vector<ExprPtr>(3),
	                               {false, true, false});
	CHECK(st[1] == IncrementalBasis<PrimeField32>::BatchStatus::Inserted);
	CHECK(st[2] == IncrementalBasis<PrimeField32>::BatchStatus::Skipped);
	CHECK(b.rank() == 2);
}

TEST_CASE("annihilator") {
	const PrimeField64 f(10007);
	CounterRng rng(8);
	IncrementalBasis<PrimeField64> b(f, 9);
	for (int i = 0; i < 5; ++i) b.insert_if_independent(random_vec(f, 9, rng), nullptr);
	for (int rep = 0; rep < 10; ++rep) {
		const auto y = b.sample_annihilator(rng);
		for (std::size_t i = 0; i < b.rank(); ++i) CHECK(f.to_integer(kernels::dot(f, y, b.original(i))) == 0);
	}
}

TEST_CASE("kernels_match_reference") {
	CounterRng rng(1);
	const PrimeField64 f64(4611686018427387847ULL);
	const PrimeField32 f32(1073741789);
	for (std::size_t n : {3u, 31u, 40u, 81u}) {
		const auto a = random_vec(f64, n * n, rng), b = random_vec(f64, n * n, rng);
		CHECK(kernels::matmul(f64, a, b, n) == kernels::matmul_reference(f64, a, b, n));
		CHECK(kernels::schur(f64, a, b) == kernels::schur_reference(f64, a, b));
		CHECK(f64.to_integer(kernels::dot(f64, a, b)) == f64.to_integer(kernels::dot_reference(f64, a, b)));

		const auto c = random_vec(f32, n * n, rng), d = random_vec(f32, n * n, rng);
		CHECK(lift(f32, kernels::matmul(f32, c, d, n)) == lift(f32, kernels::matmul_reference(f32, c, d, n)));
		CHECK(f32.to_integer(kernels::dot(f32, c, d)) == f32.to_integer(kernels::dot_reference(f32, c, d)));
	}
	for (std::size_t len : {1u, 7u, 17u, 100u, 5000u, 40000u}) {
		const auto x0 = random_vec(f32, len, rng), x1 = random_vec(f32, len, rng), x2 = random_vec(f32, len, rng);
		const auto y0 = random_vec(f32, len, rng);
		const std::vector<std::uint32_t>* xs[4] = {&x0, &x1, &x2, &x0};
		const std::uint32_t cs[4] = {f32.from_integer(5), f32.from_integer(f32.modulus() - 1), f32.from_integer(123456),
		                             f32.from_integer(77)};
		for (std::size_t m = 1; m <= 4; ++m) {
			const std::size_t from = len / 3;
			auto y = y0, z = y0;
			kernels::sub_combination(f32, y, cs, xs, m, from);
			kernels::sub_combination_reference(f32, z, cs, xs, m, from);
			CHECK(lift(f32, y) == lift(f32, z));
		}

		const auto u0 = random_vec(f64, len, rng), u1 = random_vec(f64, len, rng), v0 = random_vec(f64, len, rng);
		const std::vector<std::uint64_t>* us[4] = {&u0, &u1, &u0, &u1};
		const std::uint64_t ds[4] = {f64.from_integer(3), f64.from_integer(f64.modulus() - 2), f64.from_integer(9),
		                             f64.from_integer(1)};
		for (std::size_t m = 1; m <= 4; ++m) {
			auto y = v0, z = v0;
			kernels::sub_combination(f64, y, ds, us, m, 1);
			kernels::sub_combination_reference(f64, z, ds, us, m, 1);
			CHECK(lift(f64, y) == lift(f64, z));
		}
		auto y = v0, z = v0;
		kernels::sub_scaled(f64, y, ds[1], u0, 2);
		kernels::sub_scaled_reference(f64, z, ds[1], u0, 2);
		CHECK(y == z);
	}
}

TEST_CASE("field_widths_agree") {
	const std::uint32_t p = 1000003;
	const PrimeField32 a(p);
	const PrimeField64 b(p);
	CounterRng rng(6);
	const std::size_t n = 37;
	std::vector<mpz_class> x(n * n), y(n * n);
	for (auto& e : x) e = rng.below(mpz_class(p));
	for (auto& e : y) e = rng.below(mpz_class(p));
	auto conv = [](const auto& f, const std::vector<mpz_class>& v) {
		std::vector<std::decay_t<decltype(f.zero())>> out;
		for (const auto& e : v) out.push_back(f.from_integer(e));
		return out;
	};
	CHECK(lift(a, kernels::matmul(a, conv(a, x), conv(a, y), n)) == lift(b, kernels::matmul(b, conv(b, x), conv(b, y), n)));
	CHECK(a.to_integer(kernels::dot(a, conv(a, x), conv(a, y))) == b.to_integer(kernels::dot(b, conv(b, x), conv(b, y))));
}
