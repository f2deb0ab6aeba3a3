#include <doctest.h>

#include "npaiso/enumerate.hpp"
#include "npaiso/hom_tensor.hpp"
#include "npaiso/oracle.hpp"
#include "support.hpp"

using namespace npaiso;

namespace {

const IntegerRing Z;

HomTensor<IntegerRing> T(const BilabelledGraph& f, const Graph& g) { return hom_tensor(f, g, Z); }

HomTensor<IntegerRing> from_rows(int k, std::size_t n, const std::vector<long>& v) {
	std::vector<std::uint64_t> c(v.begin(), v.end());
	return tensor_from_counts(Z, k, n, c);
}

}  // namespace

TEST_CASE("tensor_examples") {
	const Graph c3 = cycle_graph(3);
	const BilabelledGraph a = matching_atomic(1);
	CHECK(T(a, c3) == from_rows(1, 3, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
	CHECK(T(J_atomic(1), c3) == from_rows(1, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1}));
	CHECK(T(I_atomic(1), c3) == from_rows(1, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));

	const auto i2 = T(I_atomic(2), c3);
	for (std::size_t r = 0; r < 9; ++r)
		for (std::size_t c = 0; c < 9; ++c) CHECK(i2.at(r, c) == (r == c ? 1 : 0));

	const auto looped = T(parallel(a, I_atomic(1)), c3);
	for (const auto& e : looped.entries) CHECK(e == 0);

	CHECK(matmul(Z, T(a, c3), T(a, c3)) == from_rows(1, 3, {2, 1, 1, 1, 2, 1, 1, 1, 2}));

	CounterRng rng(2);
	const auto x = T(testing_support::random_bilabelled(2, rng), c3);
	CHECK(sigma_act_tensor(x, CyclicPerm(2, 0)) == x);
}

TEST_CASE("atomic_fast_examples") {
	const Graph c5 = cycle_graph(5);
	const auto eq = atomic_tensor_fast(generator_by_name("C=2", 2), c5, Z);
	// C=2 ties slot 1 (in_2) to its cyclic successor, slot 3 (out_2).
	for (std::size_t r = 0; r < 25; ++r)
		for (std::size_t c = 0; c < 25; ++c) CHECK(eq.at(r, c) == (r % 5 == c % 5 ? 1 : 0));

	CHECK(atomic_tensor_fast(generator_by_name("M~1", 1), c5, Z) == T(matching_atomic(1), c5));
	CHECK_THROWS_AS(atomic_tensor_fast(series(matching_atomic(1), matching_atomic(1)), c5, Z), TensorError);
}

TEST_CASE("atomic_fast_matches_generic_on_q2") {
	const Graph c5 = cycle_graph(5);
	const AtomicClasses q = enumerate_Qk(2);
	for (const auto* cls : {&q.parallel, &q.series})
		for (const auto& f : *cls) CHECK(atomic_tensor_fast(f, c5, Z) == T(f, c5));
	CounterRng rng(8);
	const Graph g = testing_support::random_graph(4, rng);
	for (const auto& f : q.parallel) CHECK(atomic_tensor_fast(f, g, Z) == T(f, g));
}

TEST_CASE("soe_pair_examples") {
	const Graph c3 = cycle_graph(3);
	const auto j = soe_pair(Z, tensor_pair(J_atomic(1), c3, c3, Z));
	CHECK(j.first == 9);
	CHECK(j.second == 9);

	const Graph star = star_graph(4);
	const Graph c4k1 = disjoint_union(cycle_graph(4), Graph(1));
	const BilabelledGraph a = matching_atomic(1);
	const auto e = soe_pair(Z, tensor_pair(a, star, c4k1, Z));
	CHECK(e.first == 8);
	CHECK(e.second == 8);
	const auto p3 = soe_pair(Z, tensor_pair(series(a, a), star, c4k1, Z));
	CHECK(p3.first == 20);
	CHECK(p3.second == 16);
}

TEST_CASE("functoriality") {
	CounterRng rng(2024);
	for (int rep = 0; rep < 200; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const std::size_t n = 1 + rng.below(k == 1 ? 5 : 4);
		const Graph g = testing_support::random_graph(n, rng);
		const BilabelledGraph f = testing_support::random_bilabelled(k, rng);
		const BilabelledGraph h = testing_support::random_bilabelled(k, rng);
		const CyclicPerm s(k, static_cast<int>(rng.below(2 * k)));

		const auto fg = T(f, g), hg = T(h, g);
		CHECK(T(series(f, h), g) == matmul(Z, fg, hg));
		CHECK(T(parallel(f, h), g) == schur(Z, fg, hg));
		CHECK(T(sigma_act(f, s), g) == sigma_act_tensor(fg, s));
		CHECK(soe(Z, fg) == oracle::hom_count(soe_graph(f), g));
		CHECK(trace(Z, fg) == oracle::hom_count(tr_graph(f), g));
		CHECK(T(swap(f), g) == transpose(fg));
	}
}

TEST_CASE("trace_of_products") {
	CounterRng rng(99);
	for (int rep = 0; rep < 30; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const Graph g = testing_support::random_graph(1 + rng.below(4), rng);
		const auto r = testing_support::random_bilabelled(k, rng, 3, 5);
		const auto s = testing_support::random_bilabelled(k, rng, 3, 5);
		const auto lhs = trace(Z, matmul(Z, transpose(T(r, g)), T(s, g)));
		CHECK(lhs == oracle::hom_count(tr_graph(series(swap(r), s)), g));
	}
}

TEST_CASE("pair_flattening") {
	CounterRng rng(4);
	const Graph g = testing_support::random_graph(3, rng);
	const Graph h = testing_support::random_graph(4, rng);
	const auto p = tensor_pair(series(matching_atomic(1), matching_atomic(1)), g, h, Z);
	const auto flat = flatten(p);
	REQUIRE(flat.size() == 9 + 16);
	CHECK(flat[0] == p.g.entries[0]);
	CHECK(flat[9] == p.h.entries[0]);
	const auto back = unflatten<IntegerRing>(flat, 1, 3, 4);
	CHECK(back.g == p.g);
	CHECK(back.h == p.h);
}

TEST_CASE("tensor_cap") {
	CHECK(checked_power(7, 4, kDefaultTensorCap) == 2401);
	CHECK_THROWS_AS(checked_power(8, 4, kDefaultTensorCap), TensorError);
	CHECK_THROWS_AS(T(J_atomic(2), complete_graph(8)), TensorError);
	CHECK(T(J_atomic(2), complete_graph(5)).dim == 25);
	CHECK_THROWS_AS(hom_tensor(J_atomic(1), complete_graph(5), Z, 25), TensorError);
	CHECK_THROWS_AS(matmul(Z, T(J_atomic(1), complete_graph(3)), T(J_atomic(1), complete_graph(4))), TensorError);
}

TEST_CASE("expr_evaluator") {
	CounterRng rng(12);
	const Graph g = testing_support::random_graph(4, rng);
	for (int rep = 0; rep < 20; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const BilabelledGraph f = testing_support::random_bilabelled(k, rng);
		ExprEvaluator<IntegerRing> eval(g, k, Z);
		CHECK(eval(f.provenance()) == T(f, g));
	}
}
