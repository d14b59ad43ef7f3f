#include "hcfasp/graphs.hpp"

#include <algorithm>

namespace hcfasp {

std::size_t PrimalGraph::edge_count() const {
	std::size_t n = 0;
	for (const auto& a : adj_) n += a.size();
	return n / 2;
}

void PrimalGraph::add_edge(AtomId u, AtomId v) {
	if (u == v) return;
	auto ins = [](AtomSet& s, AtomId x) {
		auto it = std::lower_bound(s.begin(), s.end(), x);
		if (it == s.end() || *it != x) s.insert(it, x);
	};
	ins(adj_[u], v);
	ins(adj_[v], u);
}

void PrimalGraph::add_clique(const AtomSet& vertices) {
	for (std::size_t i = 0; i < vertices.size(); ++i)
		for (std::size_t j = i + 1; j < vertices.size(); ++j) add_edge(vertices[i], vertices[j]);
}

std::vector<std::pair<AtomId, AtomId>> PrimalGraph::edges() const {
	std::vector<std::pair<AtomId, AtomId>> out;
	for (AtomId u = 0; u < adj_.size(); ++u)
		for (AtomId v : adj_[u])
			if (u < v) out.emplace_back(u, v);
	return out;
}

PrimalGraph primal_graph(const Program& p) {
	PrimalGraph g(p.atom_count());
	for (const Rule& r : p.rules()) g.add_clique(r.atoms());
	return g;
}

std::size_t DependencyDigraph::edge_count() const {
	std::size_t n = 0;
	for (const auto& s : succ_) n += s.size();
	return n;
}

void DependencyDigraph::add_edge(AtomId from, AtomId to) {
	member_[from] = member_[to] = true;
	auto& s = succ_[from];
	auto it = std::lower_bound(s.begin(), s.end(), to);
	if (it == s.end() || *it != to) s.insert(it, to);
}

DependencyDigraph dependency_digraph(const Program& p) {
	DependencyDigraph d(p.atom_count());
	for (const Rule& r : p.rules()) {
		for (AtomId h : r.head) d.add_vertex(h);
		for (AtomId b : r.pos) {
			d.add_vertex(b);
			for (AtomId h : r.head) d.add_edge(b, h);
		}
	}
	return d;
}

AtomSet SccInfo::members(AtomId a) const {
	AtomSet out;
	for (AtomId x = 0; x < component.size(); ++x)
		if (component[x] == component[a]) out.push_back(x);
	return out;
}

SccInfo scc_info(const Program& p, const DependencyDigraph& d) {
	const std::size_t n = p.atom_count();
	constexpr std::uint32_t kNone = ~0u;
	SccInfo info;
	info.component.assign(n, kNone);

	// Iterative Tarjan.
	std::vector<std::uint32_t> index(n, kNone), low(n, 0);
	std::vector<bool> on_stack(n, false);
	std::vector<AtomId> stack;
	std::vector<std::pair<AtomId, std::size_t>> call; // vertex, next successor position
	std::uint32_t counter = 0;

	for (AtomId root = 0; root < n; ++root) {
		if (index[root] != kNone) continue;
		call.emplace_back(root, 0);
		index[root] = low[root] = counter++;
		stack.push_back(root);
		on_stack[root] = true;
		while (!call.empty()) {
			auto& [v, pos] = call.back();
			const AtomSet& succ = d.successors(v);
			if (pos < succ.size()) {
				AtomId w = succ[pos++];
				if (index[w] == kNone) {
					index[w] = low[w] = counter++;
					stack.push_back(w);
					on_stack[w] = true;
					call.emplace_back(w, 0);
				} else if (on_stack[w]) {
					low[v] = std::min(low[v], index[w]);
				}
				continue;
			}
			if (low[v] == index[v]) {
				auto id = static_cast<std::uint32_t>(info.component_size.size());
				std::uint32_t size = 0;
				AtomId w;
				do {
					w = stack.back();
					stack.pop_back();
					on_stack[w] = false;
					info.component[w] = id;
					++size;
				} while (w != v);
				info.component_size.push_back(size);
				info.self_loop.push_back(size == 1 && d.has_edge(v, v));
			}
			AtomId finished = v;
			call.pop_back();
			if (!call.empty()) {
				AtomId parent = call.back().first;
				low[parent] = std::min(low[parent], low[finished]);
			}
		}
	}

	std::uint32_t largest = 0;
	for (auto s : info.component_size) largest = std::max(largest, s);
	info.ell = largest + 1;
	return info;
}

SccInfo scc_info(const Program& p) { return scc_info(p, dependency_digraph(p)); }

} // namespace hcfasp
