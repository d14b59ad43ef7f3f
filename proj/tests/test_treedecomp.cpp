#include "doctest.h"

#include "hcfasp/treedecomp.hpp"
#include "support/generators.hpp"

using namespace hcfasp;

namespace {

PrimalGraph path(std::size_t n) {
	PrimalGraph g(n);
	for (AtomId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
	return g;
}

PrimalGraph clique(std::size_t n) {
	PrimalGraph g(n);
	g.add_clique(testing::range(0, n));
	return g;
}

} // namespace

TEST_CASE("running program has a width-2 decomposition") {
	Program p = parse_program(testing::kRunningProgram);
	PrimalGraph g = primal_graph(p);
	for (Heuristic h : {Heuristic::MinFill, Heuristic::MinDegree}) {
		TreeDecomposition td = decompose(g, h);
		CHECK_FALSE(validate_td(g, td));
		CHECK(td.width() == 2);
	}
}

TEST_CASE("cliques and paths") {
	for (std::size_t n = 1; n <= 8; ++n) CHECK(decompose(clique(n)).width() == static_cast<int>(n) - 1);
	CHECK(decompose(path(4)).width() == 1);
	CHECK(decompose(path(30), Heuristic::MinDegree).width() == 1);
	TreeDecomposition empty = decompose(PrimalGraph{});
	CHECK(empty.node_count() == 1);
	CHECK_FALSE(validate_td(PrimalGraph{}, empty));
}

TEST_CASE("seeded tie-breaking stays valid and deterministic") {
	Program p = parse_program(testing::kRunningProgram);
	PrimalGraph g = primal_graph(p);
	for (std::uint64_t seed = 1; seed < 20; ++seed) {
		TreeDecomposition a = decompose(g, Heuristic::MinFill, seed);
		TreeDecomposition b = decompose(g, Heuristic::MinFill, seed);
		CHECK_FALSE(validate_td(g, a));
		CHECK(write_td(a) == write_td(b));
	}
}

TEST_CASE("validation reports the violated condition") {
	PrimalGraph g = path(3); // a - b - c
	TreeDecomposition missing_edge(3);
	NodeId r = missing_edge.add_node({0, 1});
	NodeId c = missing_edge.add_node({2});
	missing_edge.link(r, c);
	missing_edge.set_root(r);
	auto v = validate_td(g, missing_edge);
	REQUIRE(v);
	CHECK(v->kind == TdViolation::Kind::EdgeCoverage);
	CHECK(v->vertices == std::vector<AtomId>{1, 2});

	TreeDecomposition uncovered(3);
	uncovered.set_root(uncovered.add_node({0, 1}));
	v = validate_td(g, uncovered);
	REQUIRE(v);
	CHECK(v->kind == TdViolation::Kind::VertexCoverage);

	// b occurs in two subtrees separated by a node without it.
	TreeDecomposition split(3);
	NodeId top = split.add_node({0, 1});
	NodeId mid = split.add_node({0});
	NodeId low = split.add_node({1, 2});
	split.link(top, mid);
	split.link(mid, low);
	split.set_root(top);
	v = validate_td(g, split);
	REQUIRE(v);
	CHECK(v->kind == TdViolation::Kind::Connectedness);
	CHECK(v->vertices == std::vector<AtomId>{1});
	CHECK(v->node == mid);

	TreeDecomposition detached(3);
	detached.set_root(detached.add_node({0, 1, 2}));
	detached.add_node({1});
	v = validate_td(g, detached);
	REQUIRE(v);
	CHECK(v->kind == TdViolation::Kind::Structure);
}

TEST_CASE("nice decomposition of a single bag") {
	TreeDecomposition td(2);
	td.set_root(td.add_node({0, 1}));
	NiceTD n = make_nice(td);
	CHECK_FALSE(check_nice(n));
	CHECK_FALSE(validate_td(clique(2), n.td));
	CHECK(n.td.width() == 1);
	// leaf, two introduces, two forgets
	CHECK(n.td.node_count() == 5);
	CHECK(n.type[0] == NodeType::Leaf);
	CHECK(n.type[1] == NodeType::Introduce);
	CHECK(n.type[2] == NodeType::Introduce);
	CHECK(n.type[3] == NodeType::Forget);
	CHECK(n.type[4] == NodeType::Forget);
	CHECK(n.td.root() == 4);
}

TEST_CASE("nice decomposition of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	PrimalGraph g = primal_graph(p);
	NiceTD n = make_nice(decompose(g));
	CHECK_FALSE(check_nice(n));
	CHECK_FALSE(validate_td(g, n.td));
	CHECK(n.td.width() == 2);
	CHECK(n.td.bag(n.td.root()).empty());
	for (NodeId t = 0; t < n.td.node_count(); ++t) {
		for (NodeId c : n.td.children(t)) CHECK(c < t);
		if (n.type[t] == NodeType::Leaf) CHECK(n.td.bag(t).empty());
	}
}

TEST_CASE("nice conditions are checked") {
	TreeDecomposition td(2);
	td.set_root(td.add_node({0, 1}));
	NiceTD n = make_nice(td);
	n.type[1] = NodeType::Forget;
	CHECK(check_nice(n));
}

TEST_CASE("binarize splits wide joins") {
	TreeDecomposition star(5);
	NodeId hub = star.add_node({0});
	for (AtomId v = 1; v < 5; ++v) star.link(hub, star.add_node({0, v}));
	star.set_root(hub);
	PrimalGraph g(5);
	for (AtomId v = 1; v < 5; ++v) g.add_edge(0, v);
	REQUIRE_FALSE(validate_td(g, star));
	CHECK_FALSE(is_binary_join_form(star));
	TreeDecomposition b = binarize(star);
	CHECK(is_binary_join_form(b));
	CHECK_FALSE(validate_td(g, b));
	CHECK(b.width() == star.width());
}

TEST_CASE("bag programs") {
	Program p = parse_program(testing::kRunningProgram);
	auto bag = [&](std::initializer_list<const char*> names) {
		AtomSet s;
		for (const char* n : names) s.push_back(p.id(n));
		normalize(s);
		return s;
	};
	CHECK(bag_program(p, bag({"a", "b", "d"})) == std::vector<std::size_t>{0, 1, 2});
	CHECK(bag_program(p, bag({"b", "c", "d"})) == std::vector<std::size_t>{2, 4, 5});
	CHECK(bag_program(p, {}).empty());
	Program q = parse_program(":- a. :- not b.");
	CHECK(bag_program(q, {}).empty());

	BagProgramIndex index(p);
	std::mt19937_64 rng(31);
	for (int round = 0; round < 200; ++round) {
		AtomSet s = testing::pick(rng, testing::range(0, 7), testing::uniform(rng, 0, 7));
		CHECK(index(s) == bag_program(p, s));
	}
}

TEST_CASE("PACE round trip") {
	Program p = parse_program(testing::kRunningProgram);
	PrimalGraph g = primal_graph(p);
	TreeDecomposition td = decompose(g);
	const std::string text = write_td(td);
	CHECK(text.rfind("s td 7 3 7\n", 0) == 0);
	TreeDecomposition back = read_td(text);
	CHECK_FALSE(validate_td(g, back));
	CHECK(back.width() == td.width());
	CHECK(back.node_count() == td.node_count());
	for (NodeId t = 0; t < td.node_count(); ++t) CHECK(back.bag(t) == td.bag(t));
	CHECK(back.root() == 0);

	TreeDecomposition small = read_td("c comment\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
	CHECK_FALSE(validate_td(path(3), small));
	CHECK_THROWS_AS(read_td("s td 2 2 3\nb 1 1 2\n"), ParseError);
	CHECK_THROWS_AS(read_td("s td 1 1 1\nb 1 4\n"), ParseError);
	CHECK_THROWS_AS(read_td("b 1 1\n"), ParseError);
}

TEST_CASE("decomposition properties on random graphs") {
	std::mt19937_64 rng(32);
	for (int round = 0; round < 300; ++round) {
		PrimalGraph g = testing::random_graph(rng);
		const auto h = testing::uniform(rng, 0, 1) ? Heuristic::MinFill : Heuristic::MinDegree;
		TreeDecomposition td = decompose(g, h, testing::uniform(rng, 0, 3));
		REQUIRE_FALSE(validate_td(g, td));
		CHECK(td.node_count() == std::max<std::size_t>(1, g.vertex_count()));
		NiceTD n = make_nice(td);
		CHECK_FALSE(check_nice(n));
		CHECK_FALSE(validate_td(g, n.td));
		CHECK(n.td.width() == td.width());
		CHECK(n.td.node_count() <= 4 * (g.vertex_count() + td.node_count()) * static_cast<std::size_t>(td.width() + 2));
		TreeDecomposition b = binarize(td);
		CHECK(is_binary_join_form(b));
		CHECK_FALSE(validate_td(g, b));
		CHECK(b.width() == td.width());
		CHECK_FALSE(validate_td(g, read_td(write_td(td))));
	}
}

TEST_CASE("every rule lies in some bag") {
	std::mt19937_64 rng(33);
	for (int round = 0; round < 200; ++round) {
		Program p = testing::random_hcf_program(rng, 9, 14);
		TreeDecomposition td = decompose(primal_graph(p));
		std::vector<bool> seen(p.rule_count(), false);
		for (NodeId t = 0; t < td.node_count(); ++t)
			for (std::size_t r : bag_program(p, td.bag(t))) seen[r] = true;
		for (std::size_t r = 0; r < p.rule_count(); ++r) CHECK(seen[r]);
	}
}
