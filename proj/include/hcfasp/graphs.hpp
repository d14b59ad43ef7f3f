#ifndef HCFASP_GRAPHS_HPP_INCLUDED
#define HCFASP_GRAPHS_HPP_INCLUDED

#include <utility>
#include <vector>

#include "hcfasp/program.hpp"

namespace hcfasp {

/// Undirected, loop-free graph over vertices 0..n-1 with sorted adjacency.
class PrimalGraph {
public:
	PrimalGraph() = default;
	explicit PrimalGraph(std::size_t n) : adj_(n) {}

	std::size_t vertex_count() const { return adj_.size(); }
	std::size_t edge_count() const;
	const AtomSet& neighbors(AtomId v) const { return adj_[v]; }
	bool has_edge(AtomId u, AtomId v) const { return contains(adj_[u], v); }
	/// Ignores self-loops and duplicates.
	void add_edge(AtomId u, AtomId v);
	/// Adds all pairs of `vertices`.
	void add_clique(const AtomSet& vertices);
	std::vector<std::pair<AtomId, AtomId>> edges() const;
private:
	std::vector<AtomSet> adj_;
};

/// Edge {a,b} iff some rule mentions both a and b.
PrimalGraph primal_graph(const Program& p);

/// Positive dependency digraph: a -> b iff a in B+(r) and b in H(r) for some r.
/// Vertices are the atoms occurring in some head or positive body.
class DependencyDigraph {
public:
	DependencyDigraph() = default;
	explicit DependencyDigraph(std::size_t atom_count) : member_(atom_count, false), succ_(atom_count) {}

	std::size_t universe() const { return succ_.size(); }
	bool is_vertex(AtomId a) const { return member_[a]; }
	const AtomSet& successors(AtomId a) const { return succ_[a]; }
	bool has_edge(AtomId a, AtomId b) const { return contains(succ_[a], b); }
	std::size_t edge_count() const;

	void add_vertex(AtomId a) { member_[a] = true; }
	void add_edge(AtomId from, AtomId to);
private:
	std::vector<bool> member_;
	std::vector<AtomSet> succ_;
};

DependencyDigraph dependency_digraph(const Program& p);

/// SCC partition of the dependency digraph. Atoms outside the digraph form
/// singleton components.
struct SccInfo {
	std::vector<std::uint32_t> component;      // atom -> component index
	std::vector<std::uint32_t> component_size; // component -> |C|
	std::vector<bool> self_loop;               // component -> has an internal edge (size 1 only)
	std::uint32_t ell = 1;                     // max component size + 1

	std::uint32_t ell_scc(AtomId a) const { return component_size[component[a]]; }
	bool same_scc(AtomId a, AtomId b) const { return component[a] == component[b]; }
	std::size_t component_count() const { return component_size.size(); }
	/// Members of the component of `a`, sorted.
	AtomSet members(AtomId a) const;
};

/// Tarjan's algorithm; components are numbered in reverse topological order
/// of the condensation (sinks first).
SccInfo scc_info(const Program& p, const DependencyDigraph& d);
SccInfo scc_info(const Program& p);

} // namespace hcfasp

#endif
