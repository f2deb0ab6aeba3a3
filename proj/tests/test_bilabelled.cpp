#include <doctest.h>

#include "npaiso/bilabelled.hpp"
#include "npaiso/enumerate.hpp"
#include "npaiso/oracle.hpp"
#include "support.hpp"

using namespace npaiso;

namespace {

BilabelledGraph edge_A() { return matching_atomic(1); }

bool iso(const BilabelledGraph& a, const BilabelledGraph& b) { return labelled_isomorphic(a, b); }

}  // namespace

TEST_CASE("series_examples") {
	const BilabelledGraph aa = series(edge_A(), edge_A());
	CHECK(aa.vertex_count() == 3);
	CHECK(aa.graph().edge_count() == 2);
	CHECK(aa.graph().degree_sequence() == std::vector<std::size_t>{2, 1, 1});
	CHECK(aa.graph().degree(aa.in_labels()[0]) == 1);
	CHECK(aa.graph().degree(aa.out_labels()[0]) == 1);
	CHECK(aa.in_labels()[0] != aa.out_labels()[0]);
	CHECK(aa.depth() == 2);

	const BilabelledGraph jj = series(J_atomic(1), J_atomic(1));
	CHECK(jj.vertex_count() == 3);
	CHECK(jj.graph().edge_count() == 0);
	CHECK(jj.in_labels()[0] != jj.out_labels()[0]);
}

TEST_CASE("parallel_examples") {
	CHECK(iso(parallel(edge_A(), J_atomic(1)), edge_A()));

	const Graph v2 = soe_graph(parallel(matching_atomic(2), cycle_atomic(2)));
	CHECK(oracle::is_isomorphic(v2, cycle_graph(4)).has_value());

	const BilabelledGraph looped = parallel(edge_A(), I_atomic(1));
	CHECK(looped.vertex_count() == 1);
	CHECK(looped.graph().has_loop(0));
	CHECK(looped.in_labels()[0] == 0);
	CHECK(looped.out_labels()[0] == 0);

	CHECK_THROWS_AS(parallel(edge_A(), J_atomic(2)), BilabelledError);
}

TEST_CASE("sigma_examples") {
	CounterRng rng(5);
	for (int k = 1; k <= 2; ++k) {
		const BilabelledGraph f = testing_support::random_bilabelled(k, rng);
		CHECK(iso(sigma_act(f, CyclicPerm(k, 0)), f));
		CHECK(iso(sigma_act(f, CyclicPerm(k, 2 * k)), f));
	}
	const BilabelledGraph m = series(edge_A(), parallel(edge_A(), edge_A()));
	const BilabelledGraph s = sigma_act(m, CyclicPerm(1, 1));
	CHECK(s.in_labels() == m.out_labels());
	CHECK(s.out_labels() == m.in_labels());
	CHECK(iso(s, swap(m)));
}

TEST_CASE("cyclic_perm") {
	CHECK(CyclicPerm::slot_order(2) == std::vector<int>{0, 1, 3, 2});
	CHECK(CyclicPerm::slot_order(3) == std::vector<int>{0, 1, 2, 5, 4, 3});
	CHECK(CyclicPerm::successor(2, 1) == 3);
	CHECK(CyclicPerm::successor(2, 2) == 0);
	const CyclicPerm a(3, 2), b(3, 5);
	CHECK(a.compose(b).power() == 1);
	CHECK(a.compose(a.inverse()).power() == 0);
	for (int s = 0; s < 6; ++s) CHECK(b.apply(a.apply(s)) == a.compose(b).apply(s));
}

TEST_CASE("sigma_group_action") {
	CounterRng rng(17);
	for (int rep = 0; rep < 30; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const BilabelledGraph f = testing_support::random_bilabelled(k, rng);
		const CyclicPerm a(k, static_cast<int>(rng.below(2 * k)));
		const CyclicPerm b(k, static_cast<int>(rng.below(2 * k)));
		CHECK(iso(sigma_act(sigma_act(f, a), b), sigma_act(f, a.compose(b))));
	}
}

TEST_CASE("swap_examples") {
	CHECK(iso(swap(edge_A()), edge_A()));
	CHECK(iso(swap(J_atomic(2)), J_atomic(2)));
	CounterRng rng(23);
	for (int rep = 0; rep < 10; ++rep) {
		const BilabelledGraph f = testing_support::random_bilabelled(2, rng);
		CHECK(iso(swap(swap(f)), f));
	}
}

TEST_CASE("soe_and_tr") {
	CHECK(oracle::is_isomorphic(soe_graph(grid_bilabelled(2).vertical), cycle_graph(4)).has_value());

	const Graph t = tr_graph(edge_A());
	CHECK(t.vertex_count() == 1);
	CHECK(t.has_loop(0));

	const Graph tj = tr_graph(J_atomic(1));
	CHECK(tj.vertex_count() == 1);
	CHECK(tj.edge_count() == 0);
}

TEST_CASE("minor_examples") {
	const BilabelledGraph m1 = matching_atomic(1);
	const BilabelledGraph c = contract_edges(m1, {m1.graph().edges()[0]});
	CHECK(iso(c, I_atomic(1)));
	CHECK(c.graph().is_simple());

	const BilabelledGraph c2 = cycle_atomic(2);
	const auto& e = c2.graph().edges();
	const BilabelledGraph q = contract_edges(c2, {e[0], e[1], e[2]});
	CHECK(q.vertex_count() == 1);
	CHECK(q.graph().has_loop(0));
	CHECK(q.slots() == std::vector<Vertex>{0, 0, 0, 0});

	for (int k = 1; k <= 3; ++k) {
		BilabelledGraph m = matching_atomic(k);
		while (m.graph().edge_count() > 0) m = delete_edge(m, m.graph().edges().front());
		CHECK(iso(m, J_atomic(k)));
	}

	const BilabelledGraph p = series(edge_A(), edge_A());
	Vertex middle = 0;
	while (p.is_labelled(middle)) ++middle;
	CHECK_THROWS_AS(delete_unlabelled_vertex(p, p.in_labels()[0]), BilabelledError);
	const BilabelledGraph d = delete_unlabelled_vertex(delete_edge(delete_edge(p, p.graph().edges()[0]),
	                                                              p.graph().edges()[1]),
	                                                   middle);
	CHECK(iso(d, J_atomic(1)));
}

TEST_CASE("atomic_constructors") {
	const BilabelledGraph c2 = cycle_atomic(2);
	CHECK(c2.graph() == Graph(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}}));
	CHECK(c2.is_atomic());

	const BilabelledGraph m1 = matching_atomic(1);
	CHECK(m1.graph() == Graph(2, {{0, 1}}));
	CHECK(m1.in_labels() == std::vector<Vertex>{0});
	CHECK(m1.out_labels() == std::vector<Vertex>{1});

	const BilabelledGraph i2 = I_atomic(2);
	CHECK(i2.vertex_count() == 2);
	CHECK(i2.graph().edge_count() == 0);
	CHECK(i2.in_labels() == std::vector<Vertex>{0, 1});
	CHECK(i2.out_labels() == std::vector<Vertex>{0, 1});
}

TEST_CASE("basal_generators") {
	const BasalGenerators b1 = basal_generators(1);
	REQUIRE(b1.parallel.size() == 5);
	LabelledIsoStore store;
	for (const auto& f : b1.parallel) store.insert(f);
	CHECK(store.size() == 3);
	CHECK(store.contains(J_atomic(1)));
	CHECK(store.contains(I_atomic(1)));
	CHECK(store.contains(edge_A()));

	const BasalGenerators b2 = basal_generators(2);
	CHECK(b2.parallel.size() == 9);
	CHECK(b2.series.size() == 5);
	const BilabelledGraph c1 = generator_by_name("C~1", 2);
	CHECK(c1.graph().edge_count() == 1);
	CHECK(c1.graph().adjacent(c1.slots()[0], c1.slots()[1]));

	const BilabelledGraph m1 = generator_by_name("M~1", 2);
	CHECK(m1.vertex_count() == 3);
	CHECK(m1.in_labels() == std::vector<Vertex>{0, 1});
	CHECK(m1.out_labels() == std::vector<Vertex>{2, 1});
	CHECK(m1.graph() == Graph(3, {{0, 2}}));

	CHECK_THROWS_AS(generator_by_name("C=5", 2), BilabelledError);
	CHECK_THROWS_AS(generator_by_name("Q", 1), BilabelledError);
}

TEST_CASE("labelled_isomorphic_examples") {
	CounterRng rng(29);
	const BilabelledGraph f = testing_support::random_bilabelled(2, rng);
	CHECK(iso(f, f));
	CHECK_FALSE(iso(edge_A(), J_atomic(1)));
	CHECK(iso(generator_by_name("C=1", 1), I_atomic(1)));
}

TEST_CASE("composition_associative") {
	CounterRng rng(31);
	for (int rep = 0; rep < 20; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const auto a = testing_support::random_bilabelled(k, rng, 2, 4);
		const auto b = testing_support::random_bilabelled(k, rng, 2, 4);
		const auto c = testing_support::random_bilabelled(k, rng, 2, 4);
		CHECK(iso(series(series(a, b), c), series(a, series(b, c))));
		CHECK(iso(parallel(parallel(a, b), c), parallel(a, parallel(b, c))));
	}
}

TEST_CASE("provenance_round_trip") {
	CounterRng rng(37);
	for (int rep = 0; rep < 20; ++rep) {
		const int k = 1 + static_cast<int>(rng.below(2));
		const BilabelledGraph f = testing_support::random_bilabelled(k, rng);
		CHECK(iso(materialize(f.provenance(), k), f));
		const ExprPtr back = expr_from_json(expr_to_json(f.provenance()));
		CHECK(expr_to_string(back) == expr_to_string(f.provenance()));
		const BilabelledGraph g = bilabelled_from_json(to_json(f));
		CHECK(g.graph() == f.graph());
		CHECK(g.slots() == f.slots());
	}
	const ExprPtr m = Expr::minor("C_k", "kcdk");
	CHECK(iso(materialize(m, 2), minor_of_atom("C_k", "kcdk", 2)));
}

TEST_CASE("grid_gadgets") {
	for (int k = 2; k <= 4; ++k) {
		const Graph g = soe_graph(grid_bilabelled(k).grid);
		const Graph want = grid_graph(k, k);
		CHECK(g.vertex_count() == want.vertex_count());
		CHECK(g.edge_count() == want.edge_count());
		CHECK(oracle::is_isomorphic(g, want, 16).has_value());
	}
}
