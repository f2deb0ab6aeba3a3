#include <benchmark/benchmark.h>

#include "npaiso/kernels.hpp"
#include "npaiso/rng.hpp"

using namespace npaiso;

namespace {

const PrimeField32 F32(1073741789u);
const PrimeField64 F64(4611686018427387847ull);

template <class Field>
kernels::Vec<Field> random_vec(const Field& f, std::size_t n, std::uint64_t seed) {
	CounterRng rng(seed);
	kernels::Vec<Field> v(n);
	for (auto& x : v) x = f.from_count(rng.next());
	return v;
}

template <class Field>
const Field& field();
template <>
const PrimeField32& field<PrimeField32>() { return F32; }
template <>
const PrimeField64& field<PrimeField64>() { return F64; }

template <class Field>
void bm_matmul(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n * n, 1), b = random_vec(f, n * n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul(f, a, b, n));
}

template <class Field>
void bm_matmul_reference(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n * n, 1), b = random_vec(f, n * n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_reference(f, a, b, n));
}

template <class Field>
void bm_schur(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n, 1), b = random_vec(f, n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::schur(f, a, b));
}

template <class Field>
void bm_schur_reference(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n, 1), b = random_vec(f, n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::schur_reference(f, a, b));
}

template <class Field>
void bm_sub_combination(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	auto y = random_vec(f, n, 1);
	const auto x0 = random_vec(f, n, 2), x1 = random_vec(f, n, 3), x2 = random_vec(f, n, 4), x3 = random_vec(f, n, 5);
	const kernels::Vec<Field>* xs[4] = {&x0, &x1, &x2, &x3};
	const auto c = random_vec(f, 4, 6);
	for (auto _ : state) {
		kernels::sub_combination(f, y, c.data(), xs, 4);
		benchmark::ClobberMemory();
	}
}

template <class Field>
void bm_sub_combination_reference(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	auto y = random_vec(f, n, 1);
	const auto x0 = random_vec(f, n, 2), x1 = random_vec(f, n, 3), x2 = random_vec(f, n, 4), x3 = random_vec(f, n, 5);
	const kernels::Vec<Field>* xs[4] = {&x0, &x1, &x2, &x3};
	const auto c = random_vec(f, 4, 6);
	for (auto _ : state) {
		kernels::sub_combination_reference(f, y, c.data(), xs, 4);
		benchmark::ClobberMemory();
	}
}

template <class Field>
void bm_dot(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n, 1), b = random_vec(f, n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::dot(f, a, b));
}

template <class Field>
void bm_dot_reference(benchmark::State& state) {
	const Field& f = field<Field>();
	const auto n = static_cast<std::size_t>(state.range(0));
	const auto a = random_vec(f, n, 1), b = random_vec(f, n, 2);
	for (auto _ : state) benchmark::DoNotOptimize(kernels::dot_reference(f, a, b));
}

}  // namespace

// Matrix sides match the tensor shapes n^k x n^k met at k = 2.
BENCHMARK(bm_matmul<PrimeField32>)->Arg(16)->Arg(49)->Arg(64);
BENCHMARK(bm_matmul_reference<PrimeField32>)->Arg(16)->Arg(49)->Arg(64);
BENCHMARK(bm_matmul<PrimeField64>)->Arg(16)->Arg(49)->Arg(64);
BENCHMARK(bm_matmul_reference<PrimeField64>)->Arg(16)->Arg(49)->Arg(64);

BENCHMARK(bm_schur<PrimeField64>)->Arg(2401)->Arg(1 << 14);
BENCHMARK(bm_schur_reference<PrimeField64>)->Arg(2401)->Arg(1 << 14);

BENCHMARK(bm_sub_combination<PrimeField32>)->Arg(4802)->Arg(1 << 15);
BENCHMARK(bm_sub_combination_reference<PrimeField32>)->Arg(4802)->Arg(1 << 15);
BENCHMARK(bm_sub_combination<PrimeField64>)->Arg(4802)->Arg(1 << 15);
BENCHMARK(bm_sub_combination_reference<PrimeField64>)->Arg(4802)->Arg(1 << 15);

BENCHMARK(bm_dot<PrimeField32>)->Arg(4802);
BENCHMARK(bm_dot_reference<PrimeField32>)->Arg(4802);
BENCHMARK(bm_dot<PrimeField64>)->Arg(4802);
BENCHMARK(bm_dot_reference<PrimeField64>)->Arg(4802);

BENCHMARK_MAIN();
