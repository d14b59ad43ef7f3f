#include "doctest.h"

#include "hcfasp/oracle.hpp"
#include "hcfasp/semantics.hpp"
#include "support/generators.hpp"

using namespace hcfasp;

namespace {

Interpretation interp(const Program& p, std::initializer_list<const char*> names) {
	Interpretation i(p.atom_count());
	for (const char* n : names) i.insert(p.id(n));
	return i;
}

LevelMapping levels(const Program& p, std::initializer_list<std::pair<const char*, Level>> entries) {
	LevelMapping m(p.atom_count());
	for (auto [n, l] : entries) m.set(p.id(n), l);
	return m;
}

} // namespace

TEST_CASE("classification") {
	Classification c = classify(parse_program(testing::kRunningProgram));
	CHECK_FALSE(c.is_tight);
	CHECK_FALSE(c.is_normal);
	CHECK(c.is_hcf);

	Classification empty = classify(Program{});
	CHECK(empty.is_tight);
	CHECK(empty.is_normal);
	CHECK(empty.is_hcf);

	CHECK_FALSE(classify(parse_program("a | b :- c. c :- a. c :- b.")).is_hcf);
	CHECK_FALSE(classify(parse_program("a :- a.")).is_tight);
	CHECK(classify(parse_program("a | b. c :- a, not b.")).is_tight);
}

TEST_CASE("reduct of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	Program r = gl_reduct(p, interp(p, {"a", "b", "c", "d", "e"}));
	REQUIRE(r.rule_count() == 7);
	CHECK(r.render(r.rules()[3]) == "b :- e.");
	CHECK(r.rules()[6] == p.rules()[6]);
	for (std::size_t k : {0, 1, 2, 4, 5}) CHECK(r.rules()[k] == p.rules()[k]);
}

TEST_CASE("reduct removes blocked rules and strips negation") {
	Program p = parse_program("a :- not b. c :- d, not e.");
	Program empty_i = gl_reduct(p, Interpretation(p.atom_count()));
	REQUIRE(empty_i.rule_count() == 2);
	for (const Rule& r : empty_i.rules()) CHECK(r.neg.empty());

	Program q = parse_program("a :- not b.");
	CHECK(gl_reduct(q, interp(q, {"b"})).rule_count() == 0);
}

TEST_CASE("satisfaction") {
	Program p = parse_program(testing::kRunningProgram);
	CHECK(satisfies(interp(p, {"f"}), p));
	CHECK_FALSE(satisfies(Interpretation(p.atom_count()), p.rules()[6]));
	CHECK_FALSE(satisfies(interp(p, {"d"}), p.rules()[0]));
	CHECK(satisfies(interp(p, {"a", "d"}), p.rules()[0]));
}

TEST_CASE("proving with levels") {
	Program p = parse_program(testing::kRunningProgram);
	SccInfo scc = scc_info(p);
	Interpretation i = interp(p, {"a", "b", "c", "d", "e"});
	CHECK(proves(p.rules()[5], p.id("d"), i, levels(p, {{"b", 0}, {"c", 1}, {"d", 2}}), scc));
	CHECK(proves(p.rules()[0], p.id("a"), i, levels(p, {{"d", 2}, {"a", 3}}), scc));
	CHECK_FALSE(proves(p.rules()[1], p.id("b"), i, levels(p, {{"a", 3}, {"b", 0}}), scc));
	// Body atoms outside the SCC of the head are not compared.
	CHECK(proves(p.rules()[3], p.id("b"), i, levels(p, {{"b", 0}, {"e", 0}}), scc));
	// Another head atom is true.
	CHECK_FALSE(proves(p.rules()[6], p.id("e"), interp(p, {"e", "f"}), levels(p, {{"e", 0}}), scc));
}

TEST_CASE("answer sets of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	CHECK(is_answer_set(p, interp(p, {"a", "b", "c", "d", "e"})));
	CHECK(is_answer_set(p, interp(p, {"f"})));
	CHECK(is_answer_set(p, interp(p, {"g"})));
	CHECK_FALSE(is_answer_set(p, interp(p, {"e"})));
	CHECK_FALSE(is_answer_set(p, interp(p, {"a", "b", "c", "d", "f"})));

	auto m = minimal_level_mapping(p, interp(p, {"a", "b", "c", "d", "e"}), scc_info(p));
	REQUIRE(m.has_value());
	CHECK(m->at(p.id("b")) == 0);
	CHECK(m->at(p.id("c")) == 1);
	CHECK(m->at(p.id("d")) == 2);
	CHECK(m->at(p.id("a")) == 3);
	CHECK(m->at(p.id("e")) == 0);
}

TEST_CASE("self-supporting atom is not an answer set") {
	Program p = parse_program("a :- a.");
	CHECK_FALSE(is_answer_set(p, interp(p, {"a"})));
	CHECK(is_answer_set(p, Interpretation(1)));
}

TEST_CASE("answer-set test rejects head cycles") {
	Program p = parse_program("a | b :- c. c :- a. c :- b.");
	CHECK_THROWS_AS(is_answer_set(p, Interpretation(p.atom_count())), ContractError);
}

TEST_CASE("satisfaction agrees with the set conditions on random rules") {
	std::mt19937_64 rng(11);
	for (int round = 0; round < 2000; ++round) {
		const std::size_t n = testing::uniform(rng, 1, 8);
		Rule r = testing::random_rule(rng, n, false);
		Interpretation i(n);
		for (AtomId a = 0; a < n; ++a)
			if (testing::uniform(rng, 0, 1)) i.insert(a);
		bool head_hit = false, neg_hit = false, pos_miss = false;
		for (AtomId a : r.head) head_hit |= i.contains(a);
		for (AtomId a : r.neg) neg_hit |= i.contains(a);
		for (AtomId a : r.pos) pos_miss |= !i.contains(a);
		CHECK(satisfies(i, r) == (head_hit || neg_hit || pos_miss));
	}
}

TEST_CASE("reduct shape on random programs") {
	std::mt19937_64 rng(12);
	for (int round = 0; round < 300; ++round) {
		Program p = testing::random_hcf_program(rng);
		Interpretation i(p.atom_count());
		for (AtomId a = 0; a < p.atom_count(); ++a)
			if (testing::uniform(rng, 0, 1)) i.insert(a);
		Program r = gl_reduct(p, i);
		CHECK(r.rule_count() <= p.rule_count());
		for (const Rule& rule : r.rules()) CHECK(rule.neg.empty());
	}
}

TEST_CASE("level-mapping test agrees with the reduct definition exhaustively") {
	std::mt19937_64 rng(13);
	for (int round = 0; round < 150; ++round) {
		Program p = testing::random_hcf_program(rng, 8, 12);
		const auto answers = brute_answer_sets(p);
		const std::size_t n = p.atom_count();
		for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
			Interpretation i(n);
			for (AtomId a = 0; a < n; ++a)
				if (bits >> a & 1u) i.insert(a);
			const bool expected = std::binary_search(answers.begin(), answers.end(), i);
			REQUIRE(is_answer_set(p, i) == expected);
			if (expected) CHECK(satisfies(i, p));
		}
	}
}
