#include "doctest.h"

#include "hcfasp/graphs.hpp"
#include "hcfasp/semantics.hpp"
#include "support/generators.hpp"

using namespace hcfasp;

TEST_CASE("primal graph of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	PrimalGraph g = primal_graph(p);
	auto edge = [&](const char* a, const char* b) { return g.has_edge(p.id(a), p.id(b)); };
	CHECK(g.edge_count() == 10);
	CHECK(edge("a", "d"));
	CHECK(edge("b", "c"));
	CHECK(edge("c", "d"));
	CHECK(edge("b", "f"));
	CHECK(edge("e", "f"));
	CHECK(edge("f", "g"));
	CHECK_FALSE(edge("a", "c"));
	CHECK_FALSE(edge("a", "e"));
}

TEST_CASE("primal graph corner cases") {
	CHECK(primal_graph(Program{}).vertex_count() == 0);
	Program p = parse_program("a :- b, not c.");
	PrimalGraph g = primal_graph(p);
	CHECK(g.edge_count() == 3);
	CHECK(primal_graph(parse_program("a :- a.")).edge_count() == 0);
}

TEST_CASE("dependency digraph of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	DependencyDigraph d = dependency_digraph(p);
	auto edge = [&](const char* a, const char* b) { return d.has_edge(p.id(a), p.id(b)); };
	CHECK(d.edge_count() == 7);
	for (auto [a, b] : {std::pair{"d", "a"}, {"a", "b"}, {"d", "b"}, {"e", "b"}, {"b", "c"}, {"b", "d"}, {"c", "d"}})
		CHECK(edge(a, b));
	CHECK_FALSE(d.has_edge(p.id("f"), p.id("b")));
}

TEST_CASE("negative literals induce no dependency") {
	Program p = parse_program("b :- not a.");
	DependencyDigraph d = dependency_digraph(p);
	CHECK(d.is_vertex(p.id("b")));
	CHECK_FALSE(d.is_vertex(p.id("a")));
	CHECK(d.edge_count() == 0);

	Program loop = parse_program("a :- a.");
	CHECK(dependency_digraph(loop).has_edge(0, 0));
	SccInfo scc = scc_info(loop);
	CHECK(scc.ell_scc(0) == 1);
	CHECK(scc.self_loop[scc.component[0]]);
}

TEST_CASE("SCC sizes of the running program") {
	Program p = parse_program(testing::kRunningProgram);
	SccInfo scc = scc_info(p);
	for (const char* a : {"a", "b", "c", "d"}) CHECK(scc.ell_scc(p.id(a)) == 4);
	for (const char* a : {"e", "f", "g"}) CHECK(scc.ell_scc(p.id(a)) == 1);
	CHECK(scc.ell == 5);
	CHECK(scc.members(p.id("c")).size() == 4);
	CHECK(scc.same_scc(p.id("a"), p.id("d")));
	CHECK_FALSE(scc.same_scc(p.id("a"), p.id("e")));
}

TEST_CASE("single cycle and tight programs") {
	for (std::size_t n = 1; n <= 9; ++n) {
		std::string src;
		for (std::size_t k = 0; k < n; ++k) src += "a" + std::to_string(k) + " :- a" + std::to_string((k + 1) % n) + ". ";
		SccInfo scc = scc_info(parse_program(src));
		CHECK(scc.component_count() == 1);
		CHECK(scc.ell == n + 1);
	}
	SccInfo tight = scc_info(parse_program("a. b :- a. c :- a, b, not d."));
	for (AtomId a = 0; a < 4; ++a) CHECK(tight.ell_scc(a) == 1);
	CHECK(tight.ell == 2);
	CHECK(scc_info(Program{}).ell == 1);
}

TEST_CASE("graph properties on random programs") {
	std::mt19937_64 rng(21);
	for (int round = 0; round < 400; ++round) {
		Program p = testing::random_hcf_program(rng, 9, 14);
		PrimalGraph g = primal_graph(p);
		for (AtomId u = 0; u < g.vertex_count(); ++u) {
			CHECK_FALSE(g.has_edge(u, u));
			for (AtomId v : g.neighbors(u)) CHECK(g.has_edge(v, u));
		}
		// Edge iff some rule mentions both endpoints.
		for (auto [u, v] : g.edges()) {
			bool found = false;
			for (const Rule& r : p.rules()) found |= contains(r.atoms(), u) && contains(r.atoms(), v);
			CHECK(found);
		}

		DependencyDigraph d = dependency_digraph(p);
		SccInfo scc = scc_info(p, d);
		std::vector<std::size_t> sizes(scc.component_count(), 0);
		for (AtomId a = 0; a < p.atom_count(); ++a) ++sizes[scc.component[a]];
		CHECK(sizes == std::vector<std::size_t>(scc.component_size.begin(), scc.component_size.end()));
		// Condensation is acyclic: edges only run to components numbered no higher.
		for (AtomId a = 0; a < p.atom_count(); ++a)
			for (AtomId b : d.successors(a)) CHECK(scc.component[b] <= scc.component[a]);
		std::uint32_t biggest = 0;
		for (auto s : scc.component_size) biggest = std::max(biggest, s);
		CHECK(scc.ell == biggest + 1);

		if (classify(p, d).is_tight)
			for (std::size_t c = 0; c < scc.component_count(); ++c) {
				CHECK(scc.component_size[c] == 1);
				CHECK_FALSE(scc.self_loop[c]);
			}
	}
}
