#include "hcfasp/oracle.hpp"

#include <algorithm>

#include "hcfasp/semantics.hpp"

namespace hcfasp {

std::vector<Interpretation> brute_answer_sets(const Program& p) {
	const std::size_t n = p.atom_count();
	if (n > kOracleGuard) throw SizeGuardError("brute_answer_sets: more than 24 atoms");
	struct Masks {
		std::uint32_t head = 0, pos = 0, neg = 0;
	};
	std::vector<Masks> rules;
	for (const Rule& r : p.rules()) {
		Masks m;
		for (AtomId a : r.head) m.head |= 1u << a;
		for (AtomId a : r.pos) m.pos |= 1u << a;
		for (AtomId a : r.neg) m.neg |= 1u << a;
		rules.push_back(m);
	}
	auto model_of_reduct = [&](std::uint32_t j, std::uint32_t i) {
		for (const Masks& r : rules) {
			if (r.neg & i) continue;
			if ((r.pos & j) == r.pos && !(r.head & j)) return false;
		}
		return true;
	};

	std::vector<Interpretation> out;
	const std::uint64_t total = std::uint64_t{1} << n;
	for (std::uint64_t bits = 0; bits < total; ++bits) {
		const auto i = static_cast<std::uint32_t>(bits);
		if (!model_of_reduct(i, i)) continue;
		bool minimal = true;
		// Proper subsets of i, largest first.
		for (std::uint32_t j = (i - 1) & i; minimal && j != i; j = (j - 1) & i) {
			if (model_of_reduct(j, i)) minimal = false;
			if (j == 0) break;
		}
		if (!minimal) continue;
		Interpretation interp(n);
		for (AtomId a = 0; a < n; ++a)
			if (i >> a & 1u) interp.insert(a);
		out.push_back(std::move(interp));
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<Assignment> brute_models(const CnfFormula& f) {
	const std::size_t n = f.var_count();
	if (n > kOracleGuard) throw SizeGuardError("brute_models: more than 24 variables");
	std::vector<Assignment> out;
	for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
		Assignment a(n);
		for (std::size_t v = 0; v < n; ++v) a[v] = bits >> v & 1u;
		if (satisfies(a, f)) out.push_back(std::move(a));
	}
	return out;
}

CnfFormula clark_completion(const Program& p) {
	CnfFormula f;
	for (AtomId a = 0; a < p.atom_count(); ++a) f.var(p.name(a));
	auto v = [](AtomId a) { return static_cast<Lit>(a + 1); };
	std::vector<std::vector<Lit>> support(p.atom_count());
	for (std::size_t ri = 0; ri < p.rule_count(); ++ri) {
		const Rule& r = p.rules()[ri];
		std::vector<Lit> clause;
		for (AtomId a : r.pos) clause.push_back(-v(a));
		for (AtomId a : set_union(r.neg, r.head)) clause.push_back(v(a));
		f.add_clause(clause);
		for (AtomId x : r.head) {
			const Lit body = f.var("__body(" + std::to_string(ri) + "," + p.name(x) + ")");
			std::vector<Lit> back{body};
			for (AtomId a : r.pos) {
				f.add_clause({-body, v(a)});
				back.push_back(-v(a));
			}
			for (AtomId b : set_union(r.neg, set_difference(r.head, {x}))) {
				f.add_clause({-body, -v(b)});
				back.push_back(v(b));
			}
			f.add_clause(std::move(back));
			support[x].push_back(body);
		}
	}
	for (AtomId x = 0; x < p.atom_count(); ++x) {
		std::vector<Lit> clause{-v(x)};
		clause.insert(clause.end(), support[x].begin(), support[x].end());
		f.add_clause(std::move(clause));
	}
	return f;
}

std::vector<Interpretation> supported_models(const Program& p) {
	const CnfFormula f = clark_completion(p);
	std::vector<Interpretation> out;
	enumerate_models(f, [&](const Assignment& a) {
		Interpretation i(p.atom_count());
		for (AtomId x = 0; x < p.atom_count(); ++x)
			if (a[x]) i.insert(x);
		out.push_back(std::move(i));
		return true;
	});
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

bool is_answer_set_by_reduct(const Program& p, const Interpretation& i) {
	if (!classify(p).is_hcf) throw ContractError("is_answer_set_by_reduct requires a head-cycle-free program");
	if (!satisfies(i, p)) return false;
	// Reduct of the shifted program: x :- B+ for each surviving head atom.
	std::vector<std::pair<AtomId, const AtomSet*>> definite;
	for (const Rule& r : p.rules()) {
		if (i.intersects(r.neg)) continue;
		for (AtomId x : r.head) {
			bool blocked = false;
			for (AtomId h : r.head)
				if (h != x && i.contains(h)) blocked = true;
			if (!blocked) definite.emplace_back(x, &r.pos);
		}
	}
	Interpretation least(p.atom_count());
	for (bool changed = true; changed;) {
		changed = false;
		for (auto [x, pos] : definite)
			if (!least.contains(x) && least.includes(*pos)) {
				least.insert(x);
				changed = true;
			}
	}
	return least == i;
}

} // namespace hcfasp
