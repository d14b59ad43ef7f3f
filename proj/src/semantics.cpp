#include "hcfasp/semantics.hpp"

#include <algorithm>

namespace hcfasp {

Classification classify(const Program& p, const DependencyDigraph& d) {
	const SccInfo scc = scc_info(p, d);
	Classification c;
	for (std::size_t k = 0; k < scc.component_count(); ++k)
		if (scc.component_size[k] > 1 || scc.self_loop[k]) c.is_tight = false;
	for (const Rule& r : p.rules()) {
		if (r.head.size() > 1) c.is_normal = false;
		for (std::size_t i = 0; i < r.head.size() && c.is_hcf; ++i)
			for (std::size_t j = i + 1; j < r.head.size(); ++j)
				if (scc.same_scc(r.head[i], r.head[j])) {
					c.is_hcf = false;
					break;
				}
	}
	return c;
}

Classification classify(const Program& p) { return classify(p, dependency_digraph(p)); }

Program gl_reduct(const Program& p, const Interpretation& i) {
	Program out;
	for (AtomId a = 0; a < p.atom_count(); ++a) out.add_atom(p.name(a));
	for (const Rule& r : p.rules()) {
		if (i.intersects(r.neg)) continue;
		out.add_rule(Rule{r.head, r.pos, {}});
	}
	return out;
}

bool satisfies(const Interpretation& i, const Rule& r) {
	return i.intersects(r.head) || i.intersects(r.neg) || !i.includes(r.pos);
}

bool satisfies(const Interpretation& i, const Program& p) {
	return std::all_of(p.rules().begin(), p.rules().end(), [&](const Rule& r) { return satisfies(i, r); });
}

bool proves(const Rule& r, AtomId a, const Interpretation& i, const LevelMapping& sigma, const SccInfo& scc) {
	if (!contains(r.head, a)) throw ContractError("proves: atom is not in the rule head");
	if (!i.includes(r.pos) || i.intersects(r.neg)) return false;
	for (AtomId h : r.head)
		if (h != a && i.contains(h)) return false;
	for (AtomId b : r.pos) {
		if (!scc.same_scc(a, b)) continue;
		if (sigma.at(b) >= sigma.at(a)) return false;
	}
	return true;
}

std::optional<LevelMapping> minimal_level_mapping(const Program& p, const Interpretation& i, const SccInfo& scc) {
	const std::size_t n = p.atom_count();
	LevelMapping sigma(n);
	std::vector<bool> leveled(n, false);
	std::size_t remaining = i.count();

	// Rules that could ever prove something under i.
	std::vector<const Rule*> active;
	for (const Rule& r : p.rules())
		if (i.includes(r.pos) && !i.intersects(r.neg) && i.intersects(r.head)) active.push_back(&r);

	for (Level stage = 0; remaining > 0; ++stage) {
		std::vector<AtomId> fresh;
		for (const Rule* r : active) {
			// Unique true head atom required.
			AtomId a = 0;
			std::size_t true_heads = 0;
			for (AtomId h : r->head)
				if (i.contains(h)) {
					a = h;
					++true_heads;
				}
			if (true_heads != 1 || leveled[a]) continue;
			bool ok = std::all_of(r->pos.begin(), r->pos.end(),
			                      [&](AtomId b) { return !scc.same_scc(a, b) || leveled[b]; });
			if (ok) fresh.push_back(a);
		}
		if (fresh.empty()) return std::nullopt;
		for (AtomId a : fresh) {
			if (leveled[a]) continue;
			leveled[a] = true;
			sigma.set(a, stage);
			--remaining;
		}
	}
	return sigma;
}

bool is_answer_set(const Program& p, const Interpretation& i, const SccInfo& scc) {
	if (!classify(p).is_hcf) throw ContractError("is_answer_set requires a head-cycle-free program");
	return satisfies(i, p) && minimal_level_mapping(p, i, scc).has_value();
}

bool is_answer_set(const Program& p, const Interpretation& i) { return is_answer_set(p, i, scc_info(p)); }

} // namespace hcfasp
