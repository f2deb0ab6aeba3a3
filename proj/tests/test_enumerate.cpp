#include <doctest.h>

#include <deque>

#include "npaiso/enumerate.hpp"
#include "npaiso/oracle.hpp"

using namespace npaiso;

namespace {

// Closure of a generating set under one composition, keeping atomic results only.
// Non-atomic graphs stay non-atomic under both compositions, so this is finite.
LabelledIsoStore atomic_closure(const std::vector<BilabelledGraph>& gens, bool use_series) {
	LabelledIsoStore store;
	std::deque<BilabelledGraph> work;
	for (const auto& g : gens)
		if (store.insert(g)) work.push_back(g);
	while (!work.empty()) {
		const BilabelledGraph f = work.front();
		work.pop_front();
		for (const auto& g : gens) {
			const BilabelledGraph c = use_series ? series(f, g) : parallel(f, g);
			if (c.is_atomic() && store.insert(c)) work.push_back(c);
		}
	}
	return store;
}

}  // namespace

TEST_CASE("q1") {
	const AtomicClasses q = enumerate_Qk(1);
	CHECK(q.parallel.size() == 3);
	CHECK(q.series.size() == 3);
	for (const auto* cls : {&q.parallel, &q.series}) {
		LabelledIsoStore s;
		for (const auto& f : *cls) s.insert(f);
		CHECK(s.contains(matching_atomic(1)));
		CHECK(s.contains(I_atomic(1)));
		CHECK(s.contains(J_atomic(1)));
	}
}

TEST_CASE("q2_counts") {
	const AtomicClasses q = enumerate_Qk(2);
	CHECK(q.parallel_candidates == 81);
	CHECK(q.series_candidates == 9);
	CHECK(q.parallel.size() == 62);
	CHECK(q.series.size() == 9);
	for (const auto& f : q.parallel) CHECK(f.is_atomic());
	for (const auto& f : q.series) CHECK(f.is_atomic());

	// In C_2 each in-label is adjacent to its out-label, so I_2 is a minor.
	LabelledIsoStore p;
	for (const auto& f : q.parallel) p.insert(f);
	CHECK(p.contains(I_atomic(2)));
	LabelledIsoStore p3;
	for (const auto& f : enumerate_Qk(3).parallel) p3.insert(f);
	CHECK_FALSE(p3.contains(I_atomic(3)));
	LabelledIsoStore s;
	for (const auto& f : q.series) s.insert(f);
	CHECK(s.contains(I_atomic(2)));

	bool looped = false;
	for (const auto& f : q.parallel) looped = looped || f.has_loop();
	CHECK(looped);
}

// Loops are where the two descriptions part: a loop can come from a parallel
// composition but not from a minor of the simple graph C_k. Looped graphs have
// zero tensors on simple targets, so only the loopless parts are compared.
TEST_CASE("q_generated_by_basal_sets") {
	for (int k = 1; k <= 3; ++k) {
		const AtomicClasses q = enumerate_Qk(k);
		const BasalGenerators b = basal_generators(k);
		const LabelledIsoStore p = atomic_closure(b.parallel, false);
		const LabelledIsoStore s = atomic_closure(b.series, true);

		LabelledIsoStore qp, gp;
		for (const auto& f : q.parallel)
			if (!f.has_loop()) qp.insert(f);
		for (const auto& f : p.members())
			if (!f.has_loop()) gp.insert(f);
		CHECK(qp.size() == gp.size());
		for (const auto& f : qp.members()) CHECK(gp.contains(f));

		CHECK(s.size() == q.series.size());
		for (const auto& f : q.series) CHECK(s.contains(f));
	}
}

TEST_CASE("parallel_with_qp_keeps_vertex_count") {
	const AtomicClasses q = enumerate_Qk(2);
	PkBounds b;
	b.max_depth = 2;
	b.max_vertices = 6;
	const PkEnumeration e = enumerate_Pk_bounded(2, b);
	for (std::size_t i = 0; i < e.members.size(); i += 7)
		for (const auto& a : q.parallel) CHECK(parallel(e.members[i], a).vertex_count() <= e.members[i].vertex_count());
}

TEST_CASE("pk_depth_one") {
	PkBounds b;
	b.max_depth = 1;
	const PkEnumeration e = enumerate_Pk_bounded(1, b);
	CHECK(e.members.size() == 3);
	CHECK_FALSE(e.truncated);
}

TEST_CASE("pk_structure") {
	PkBounds b;
	b.max_depth = 3;
	const PkEnumeration e1 = enumerate_Pk_bounded(1, b);
	CHECK_FALSE(e1.truncated);
	for (const auto& f : e1.members) {
		const Graph g = soe_graph(f);
		CHECK(g.vertex_count() <= 2u * (1u << f.depth()));
		CHECK(oracle::is_outerplanar_small(g));
		CHECK(oracle::treewidth_at_most(g, 2));
	}

	b.max_depth = 2;
	b.max_vertices = 6;
	const PkEnumeration e2 = enumerate_Pk_bounded(2, b);
	for (const auto& f : e2.members) {
		const Graph g = soe_graph(f);
		CHECK(g.vertex_count() <= 4u * (1u << f.depth()));
		CHECK(oracle::is_planar_small(g));
		CHECK(oracle::treewidth_at_most(g, 5));
	}
}

TEST_CASE("pk_truncation_flag") {
	PkBounds b;
	b.max_depth = 2;
	b.max_members = 10;
	const PkEnumeration e = enumerate_Pk_bounded(2, b);
	CHECK(e.truncated);
	CHECK(e.members.size() == 10);
}
