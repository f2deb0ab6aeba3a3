#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "npaiso/bilabelled.hpp"
#include "npaiso/graph.hpp"
#include "npaiso/rng.hpp"

namespace testing_support {

using namespace npaiso;

inline Graph random_graph(std::size_t n, CounterRng& rng, std::uint64_t percent = 50) {
	std::vector<Edge> edges;
	for (Vertex u = 0; u < n; ++u)
		for (Vertex v = u + 1; v < n; ++v)
			if (rng.below(100) < percent) edges.push_back({u, v});
	return Graph(n, edges);
}

inline std::vector<Vertex> random_permutation(std::size_t n, CounterRng& rng) {
	std::vector<Vertex> p(n);
	std::iota(p.begin(), p.end(), Vertex{0});
	for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
	return p;
}

// Random member of P_k: a few operations over the basal generators, never
// letting the graph grow past max_vertices.
inline BilabelledGraph random_bilabelled(int k, CounterRng& rng, int steps = 4, std::size_t max_vertices = 7) {
	const BasalGenerators gens = basal_generators(k);
	auto pick = [&]() -> BilabelledGraph {
		if (rng.below(2) == 0) return gens.parallel[rng.below(gens.parallel.size())];
		return gens.series[rng.below(gens.series.size())];
	};
	BilabelledGraph f = pick();
	for (int i = 0; i < steps; ++i) {
		const BilabelledGraph g = pick();
		BilabelledGraph next = f;
		switch (rng.below(4)) {
		case 0: next = series(f, g); break;
		case 1: next = series(g, f); break;
		case 2: next = parallel(f, g); break;
		default: next = sigma_act(f, CyclicPerm(k, static_cast<int>(rng.below(2 * k)))); break;
		}
		if (next.vertex_count() <= max_vertices) f = next;
	}
	return f;
}

}  // namespace testing_support
