#include <doctest.h>

#include <string>

#include "npaiso/graph.hpp"
#include "npaiso/graph_io.hpp"
#include "support.hpp"

using namespace npaiso;

namespace {

// Written out bit by bit from the format description, separate from the library encoder.
std::string reference_graph6(const Graph& g) {
	const std::size_t n = g.vertex_count();
	std::string out;
	if (n < 63) {
		out.push_back(static_cast<char>(n + 63));
	} else {
		out.push_back(126);
		for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
	}
	std::vector<int> bits;
	for (std::size_t j = 1; j < n; ++j)
		for (std::size_t i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j) ? 1 : 0);
	while (bits.size() % 6) bits.push_back(0);
	for (std::size_t i = 0; i < bits.size(); i += 6) {
		int v = 0;
		for (int b = 0; b < 6; ++b) v = (v << 1) | bits[i + b];
		out.push_back(static_cast<char>(v + 63));
	}
	return out;
}

}  // namespace

TEST_CASE("graph6_examples") {
	const Graph k2 = parse_graph6("A_");
	CHECK(k2.vertex_count() == 2);
	CHECK(k2.edge_count() == 1);
	CHECK(reference_graph6(k2) == "A_");

	const Graph e2 = parse_graph6("A?");
	CHECK(e2.vertex_count() == 2);
	CHECK(e2.edge_count() == 0);

	CHECK_THROWS_AS(parse_graph6(""), ParseError);
	CHECK_THROWS_AS(parse_graph6("A"), ParseError);
	CHECK(parse_graph6(">>graph6<<A_\n") == k2);
	const Graph star = parse_graph6("D?{");
	CHECK(star.degree_sequence() == star_graph(4).degree_sequence());
	CHECK(star.degree(4) == 4);
}

TEST_CASE("graph6_round_trip") {
	CounterRng rng(11);
	for (std::size_t n = 0; n <= 10; ++n) {
		for (int rep = 0; rep < 8; ++rep) {
			const Graph g = testing_support::random_graph(n, rng);
			const std::string text = encode_graph6(g);
			CHECK(text == reference_graph6(g));
			CHECK(parse_graph6(text) == g);
		}
	}
	const Graph big = testing_support::random_graph(70, rng, 10);
	CHECK(parse_graph6(encode_graph6(big)) == big);
	CHECK(encode_graph6(big) == reference_graph6(big));
}

TEST_CASE("edge_list") {
	const Graph tri = parse_edge_list(R"({"n":3,"edges":[[0,1],[1,2],[0,2]]})");
	CHECK(tri == complete_graph(3));

	const Graph loop = parse_edge_list(R"({"n":1,"edges":[[0,0]]})");
	CHECK(loop.has_loop(0));
	CHECK_FALSE(loop.is_simple());
	CHECK_THROWS_AS(encode_graph6(loop), GraphError);

	const Graph k2 = parse_edge_list(R"({"n":2,"edges":[[0,1],[1,0]]})");
	CHECK(k2.edge_count() == 1);

	CHECK_THROWS(parse_edge_list(R"({"n":2,"edges":[[0,2]]})"));
	CHECK_THROWS(parse_edge_list("{\"n\":2"));
	CHECK(parse_graph_auto("  {\"n\":2,\"edges\":[[0,1]]}") == parse_graph_auto("A_"));
	CHECK(edge_list_from_json(edge_list_to_json(tri)) == tri);
}

TEST_CASE("rel") {
	const Graph tri = complete_graph(3);
	CHECK(rel(tri, 0, 0) == Rel::Equal);
	CHECK(rel(tri, 0, 1) == Rel::Adjacent);
	CHECK(rel(path_graph(3), 0, 2) == Rel::DistinctNonAdjacent);

	CounterRng rng(3);
	const Graph g = testing_support::random_graph(6, rng);
	for (Vertex a = 0; a < 6; ++a)
		for (Vertex b = 0; b < 6; ++b) CHECK(rel(g, a, b) == rel(g, b, a));
	CHECK_THROWS_AS(rel(tri, 0, 3), GraphError);
}

TEST_CASE("generators") {
	CHECK(grid_graph(2, 2).edge_count() == 4);
	CHECK(grid_graph(2, 2).degree_sequence() == cycle_graph(4).degree_sequence());

	const Graph s = star_graph(4);
	CHECK(s.degree_sequence() == std::vector<std::size_t>{4, 1, 1, 1, 1});

	const Graph u = disjoint_union(cycle_graph(3), cycle_graph(3));
	std::size_t comps = 0;
	u.components(&comps);
	CHECK(u.vertex_count() == 6);
	CHECK(u.edge_count() == 6);
	CHECK(comps == 2);

	for (std::size_t k = 1; k <= 6; ++k) {
		const Graph g = grid_graph(k, k);
		CHECK(g.vertex_count() == k * k);
		CHECK(g.edge_count() == 2 * k * (k - 1));
	}
	CHECK(complete_graph(5).edge_count() == 10);
	CHECK(path_graph(1).edge_count() == 0);
}

TEST_CASE("graph_invariants") {
	CHECK_THROWS_AS(Graph(2, {{0, 2}}), GraphError);
	const Graph g(3, {{0, 1}, {1, 0}, {1, 2}});
	CHECK(g.edge_count() == 2);
	const Graph r = g.relabel({2, 1, 0});
	CHECK(r.adjacent(2, 1));
	CHECK(r.adjacent(1, 0));
	CHECK_FALSE(r.adjacent(0, 2));
}
