#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>

#include "npaiso/certificate.hpp"
#include "npaiso/oracle.hpp"
#include "support.hpp"

using namespace npaiso;

namespace {

bool has_tag(const std::vector<Violation>& vs, const std::string& tag) {
	return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.condition == tag; });
}

void set_symmetric(NpaCertificate& r, const Word& s, const Word& t, const mpq_class& value) {
	r.entry(s, t) = value;
	r.entry(t, s) = value;
}

// Explores the class by the moves themselves: rotate, drop one of two equal
// neighbours, double a letter. Words stay within max_len + 2 letters.
Word closure_minimum(const Word& w, std::size_t max_len) {
	auto better = [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; };
	std::set<Word> seen{w};
	std::deque<Word> queue{w};
	Word best = w;
	auto visit = [&](Word x) {
		if (!seen.insert(x).second) return;
		if (better(x, best)) best = x;
		queue.push_back(std::move(x));
	};
	while (!queue.empty()) {
		const Word x = queue.front();
		queue.pop_front();
		for (std::size_t r = 1; r < x.size(); ++r) {
			Word y(x.begin() + r, x.end());
			y.insert(y.end(), x.begin(), x.begin() + r);
			visit(y);
		}
		for (std::size_t i = 0; i + 1 < x.size(); ++i) {
			if (x[i] != x[i + 1]) continue;
			Word y = x;
			y.erase(y.begin() + i);
			visit(y);
		}
		if (x.size() < max_len + 2) {
			for (std::size_t i = 0; i < x.size(); ++i) {
				Word y = x;
				y.insert(y.begin() + i, x[i]);
				visit(y);
			}
		}
	}
	return best;
}

}  // namespace

TEST_CASE("word_canonical_matches_closure_search") {
	CounterRng rng(31);
	for (int rep = 0; rep < 400; ++rep) {
		const std::size_t len = rng.below(5);
		Word w;
		for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint32_t>(rng.below(3)));
		CHECK(word_canonical(w, 4) == closure_minimum(w, 4));
	}
}

TEST_CASE("word_canonical_examples") {
	CHECK(word_canonical({3, 3}, 2) == Word{3});
	CHECK(word_canonical({1, 2}, 2) == word_canonical({2, 1}, 2));
	CHECK(word_canonical({}, 2).empty());
	CHECK(word_canonical({1, 2, 1}, 3) == word_canonical({1, 1, 2}, 3));
	CHECK(word_canonical({1, 2, 1}, 3) == Word{1, 2});
	CHECK(word_canonical({1, 2}, 2) != word_canonical({1, 3}, 2));
}

TEST_CASE("words_listing") {
	const auto w = words_up_to(3, 2);
	CHECK(w.size() == 1 + 3 + 9);
	CHECK(w[0].empty());
	CHECK(w[1] == Word{0});
	CHECK(w[4] == Word{0, 0});
	CHECK(w.back() == Word{2, 2});
}

TEST_CASE("certificate_from_identity_k2") {
	const Graph k2 = complete_graph(2);
	const NpaCertificate r = certificate_from_isomorphism({0, 1}, k2, k2, 1);
	CHECK(r.size() == 5);
	CHECK(r.entry({}, {}) == 1);
	CHECK(r.entry({r.letter(0, 0)}, {r.letter(1, 1)}) == 1);
	CHECK(r.entry({r.letter(0, 1)}, {r.letter(1, 1)}) == 0);
	CHECK(validate_certificate(r, k2, k2, 1).empty());
	CHECK_THROWS_AS(certificate_from_isomorphism({0, 0}, k2, k2, 1), CertificateError);
	CHECK_THROWS_AS(certificate_from_isomorphism({0, 1}, path_graph(3), cycle_graph(3), 1), CertificateError);
}

TEST_CASE("isomorphism_certificates_validate") {
	CounterRng rng(10);
	for (int rep = 0; rep < 8; ++rep) {
		const std::size_t n = 1 + rng.below(3);
		const int k = 1 + rep % 2;
		const Graph g = testing_support::random_graph(n, rng);
		const auto perm = testing_support::random_permutation(n, rng);
		const Graph h = g.relabel(perm);
		const NpaCertificate r = certificate_from_isomorphism(perm, g, h, k);
		const auto vs = validate_certificate(r, g, h, k);
		CHECK(vs.empty());
	}
}

TEST_CASE("tamper_detection") {
	const Graph k2 = complete_graph(2);
	const NpaCertificate good = certificate_from_isomorphism({0, 1}, k2, k2, 1);

	NpaCertificate scaled = good;
	scaled.entry({}, {}) = 2;
	CHECK(has_tag(validate_certificate(scaled, k2, k2, 1), "i"));

	// rel_G(0, 1) is adjacent while rel_H(0, 0) is equal.
	NpaCertificate sync = good;
	set_symmetric(sync, {sync.letter(0, 0)}, {sync.letter(1, 0)}, 1);
	CHECK(has_tag(validate_certificate(sync, k2, k2, 1), "iv"));

	NpaCertificate sums = good;
	set_symmetric(sums, {}, {sums.letter(0, 1)}, mpq_class(1, 2));
	CHECK(has_tag(validate_certificate(sums, k2, k2, 1), "iii"));

	NpaCertificate asym = good;
	asym.entry({}, {asym.letter(0, 0)}) = 0;
	CHECK(has_tag(validate_certificate(asym, k2, k2, 1), "symmetry"));

	ValidationOptions one;
	one.max_violations = 1;
	CHECK(validate_certificate(sums, k2, k2, 1, one).size() == 1);
}

TEST_CASE("psd_exact") {
	CHECK(is_psd_exact({1, 0, 0, 1}, 2));
	CHECK(is_psd_exact({1, 1, 1, 1}, 2));
	CHECK(is_psd_exact({0, 0, 0, 0}, 2));
	CHECK_FALSE(is_psd_exact({1, 2, 2, 1}, 2));
	CHECK_FALSE(is_psd_exact({0, 1, 1, 0}, 2));
	std::size_t bad = 99;
	CHECK_FALSE(is_psd_exact({1, 0, 0, 0, -1, 0, 0, 0, 1}, 3, &bad));
	CHECK(bad == 1);
	CHECK(is_psd_exact({2, -1, 0, -1, 2, -1, 0, -1, 2}, 3));
	CHECK_FALSE(is_psd_exact({1, 1, 0, 1, 1, 1, 0, 1, 1}, 3));
}

TEST_CASE("certificate_json") {
	const Graph g = path_graph(3);
	const NpaCertificate r = certificate_from_isomorphism({2, 1, 0}, g, g, 2);
	const NpaCertificate back = certificate_from_json(certificate_to_json(r));
	CHECK(back.k() == 2);
	CHECK(back.words() == r.words());
	for (std::size_t i = 0; i < r.size(); ++i)
		for (std::size_t j = 0; j < r.size(); ++j) CHECK(back.at(i, j) == r.at(i, j));

	NpaCertificate t = r;
	t.at(0, 0) = mpq_class(3, 7);
	const auto vs = validate_certificate(t, g, g, 2);
	REQUIRE_FALSE(vs.empty());
	const auto j = violation_to_json(t, vs.front());
	CHECK(j["condition"] == "i");
	CHECK(certificate_to_json(t)["entries"].dump().find("3/7") != std::string::npos);
}
