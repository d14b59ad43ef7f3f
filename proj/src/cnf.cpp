#include "hcfasp/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/functional/hash.hpp>

namespace hcfasp {

std::int32_t CnfFormula::var(std::string_view name) {
	auto it = index_.find(std::string(name));
	if (it != index_.end()) return it->second;
	names_.emplace_back(name);
	auto v = static_cast<std::int32_t>(names_.size());
	index_.emplace(names_.back(), v);
	return v;
}

std::optional<std::int32_t> CnfFormula::find(std::string_view name) const {
	auto it = index_.find(std::string(name));
	if (it == index_.end()) return std::nullopt;
	return it->second;
}

bool CnfFormula::add_clause(std::vector<Lit> clause) {
	for (Lit l : clause)
		if (l == 0 || static_cast<std::size_t>(std::abs(l)) > names_.size())
			throw ContractError("clause literal refers to an unknown variable");
	std::sort(clause.begin(), clause.end(), [](Lit a, Lit b) {
		return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
	});
	clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
	for (std::size_t i = 1; i < clause.size(); ++i)
		if (clause[i] == -clause[i - 1]) return false;
	clauses_.push_back(std::move(clause));
	return true;
}

std::string CnfFormula::to_dimacs() const {
	std::ostringstream os;
	for (std::size_t v = 0; v < names_.size(); ++v) os << "c var " << v + 1 << " = " << names_[v] << '\n';
	os << "p cnf " << names_.size() << ' ' << clauses_.size() << '\n';
	for (const auto& c : clauses_) {
		for (Lit l : c) os << l << ' ';
		os << "0\n";
	}
	return os.str();
}

PrimalGraph primal_graph(const CnfFormula& f) {
	PrimalGraph g(f.var_count());
	for (const auto& c : f.clauses()) {
		AtomSet vs;
		for (Lit l : c) vs.push_back(static_cast<AtomId>(std::abs(l) - 1));
		normalize(vs);
		g.add_clique(vs);
	}
	return g;
}

bool satisfies(const Assignment& a, const CnfFormula& f) {
	if (a.size() != f.var_count()) return false;
	return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const std::vector<Lit>& c) {
		return std::any_of(c.begin(), c.end(), [&](Lit l) { return a[std::abs(l) - 1] == (l > 0); });
	});
}

namespace {

// Assignment with trail and occurrence-list unit propagation.
class Propagator {
public:
	explicit Propagator(const CnfFormula& f) : f_(f), value_(f.var_count() + 1, -1), occ_(f.var_count() + 1) {
		for (std::size_t c = 0; c < f.clauses().size(); ++c)
			for (Lit l : f.clauses()[c]) occ_[std::abs(l)].push_back(static_cast<std::uint32_t>(c));
	}

	int value(Lit l) const {
		int v = value_[std::abs(l)];
		return v < 0 ? -1 : (l > 0 ? v : 1 - v);
	}
	bool assigned(std::int32_t v) const { return value_[v] >= 0; }
	bool satisfied(std::uint32_t c) const {
		const auto& cl = f_.clauses()[c];
		return std::any_of(cl.begin(), cl.end(), [&](Lit l) { return value(l) == 1; });
	}
	std::size_t mark() const { return trail_.size(); }
	void undo(std::size_t mark) {
		while (trail_.size() > mark) {
			value_[trail_.back()] = -1;
			trail_.pop_back();
		}
		head_ = std::min(head_, mark);
	}
	void assign(Lit l) {
		value_[std::abs(l)] = l > 0 ? 1 : 0;
		trail_.push_back(std::abs(l));
	}

	// Initial units and empty clauses.
	bool start() {
		for (const auto& c : f_.clauses()) {
			if (c.empty()) return false;
			if (c.size() == 1) {
				int v = value(c[0]);
				if (v == 0) return false;
				if (v < 0) assign(c[0]);
			}
		}
		return propagate();
	}

	bool propagate() {
		while (head_ < trail_.size()) {
			std::int32_t v = trail_[head_++];
			for (std::uint32_t c : occ_[v]) {
				Lit unit = 0;
				std::size_t open = 0;
				bool sat = false;
				for (Lit l : f_.clauses()[c]) {
					int val = value(l);
					if (val == 1) {
						sat = true;
						break;
					}
					if (val < 0) {
						++open;
						unit = l;
					}
				}
				if (sat) continue;
				if (open == 0) return false;
				if (open == 1) assign(unit);
			}
		}
		return true;
	}

	const CnfFormula& formula() const { return f_; }
	const std::vector<std::uint32_t>& occurrences(std::int32_t v) const { return occ_[v]; }
private:
	const CnfFormula& f_;
	std::vector<int> value_;
	std::vector<std::vector<std::uint32_t>> occ_;
	std::vector<std::int32_t> trail_;
	std::size_t head_ = 0;
};

class ModelCounter {
public:
	explicit ModelCounter(const CnfFormula& f)
		: prop_(f), parent_(f.var_count() + 1), comp_of_(f.var_count() + 1), used_(f.var_count() + 1) {}

	BigInt run() {
		if (!prop_.start()) return 0;
		std::vector<std::uint32_t> clauses(prop_.formula().clause_count());
		std::iota(clauses.begin(), clauses.end(), 0);
		std::vector<std::int32_t> vars(prop_.formula().var_count());
		std::iota(vars.begin(), vars.end(), 1);
		return residual(clauses, vars);
	}
private:
	using Key = std::vector<std::uint32_t>;
	struct KeyHash {
		std::size_t operator()(const Key& k) const { return boost::hash_range(k.begin(), k.end()); }
	};

	// Counts the models over `vars` of the open part of `clauses` under the
	// current (propagated) assignment.
	BigInt residual(const std::vector<std::uint32_t>& clauses, const std::vector<std::int32_t>& vars) {
		// Union-find over the unassigned variables of open clauses; roots are
		// reset before use, so the scratch arrays need no clearing.
		for (std::int32_t v : vars) parent_[v] = v, used_[v] = false;
		auto find = [&](std::int32_t v) {
			while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
			return v;
		};
		std::vector<std::uint32_t> open;
		for (std::uint32_t c : clauses) {
			if (prop_.satisfied(c)) continue;
			open.push_back(c);
			std::int32_t first = 0;
			for (Lit l : prop_.formula().clauses()[c]) {
				std::int32_t v = std::abs(l);
				if (prop_.assigned(v)) continue;
				used_[v] = true;
				if (first == 0) first = find(v);
				else parent_[find(v)] = first;
			}
		}
		std::size_t unconstrained = 0;
		std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::int32_t>>> comps;
		for (std::int32_t v : vars) {
			if (prop_.assigned(v)) continue;
			if (!used_[v]) {
				++unconstrained;
				continue;
			}
			std::int32_t root = find(v);
			if (root == v) {
				comp_of_[v] = static_cast<std::int32_t>(comps.size());
				comps.emplace_back();
			}
		}
		for (std::int32_t v : vars)
			if (!prop_.assigned(v) && used_[v]) comps[comp_of_[find(v)]].second.push_back(v);
		for (std::uint32_t c : open)
			for (Lit l : prop_.formula().clauses()[c]) {
				std::int32_t v = std::abs(l);
				if (prop_.assigned(v)) continue;
				comps[comp_of_[find(v)]].first.push_back(c);
				break;
			}
		BigInt result = 1;
		result <<= unconstrained;
		for (auto& [cs, vs] : comps) {
			BigInt n = component(cs, vs);
			if (n == 0) return 0;
			result *= n;
		}
		return result;
	}

	BigInt component(const std::vector<std::uint32_t>& clauses, const std::vector<std::int32_t>& vars) {
		Key key(clauses.begin(), clauses.end());
		key.push_back(~0u);
		key.insert(key.end(), vars.begin(), vars.end());
		if (auto it = cache_.find(key); it != cache_.end()) return it->second;

		// Lowest variable first: original atoms come first and follow the
		// structure of the input, which keeps residual components aligned.
		const std::int32_t branch = vars.front();
		BigInt total = 0;
		for (Lit l : {branch, -branch}) {
			std::size_t m = prop_.mark();
			prop_.assign(l);
			if (prop_.propagate()) total += residual(clauses, vars);
			prop_.undo(m);
		}
		cache_.emplace(std::move(key), total);
		return total;
	}

	Propagator prop_;
	std::vector<std::int32_t> parent_, comp_of_;
	std::vector<bool> used_;
	std::unordered_map<Key, BigInt, KeyHash> cache_;
};

} // namespace

BigInt count_models(const CnfFormula& f) { return ModelCounter(f).run(); }

void enumerate_models(const CnfFormula& f, const std::function<bool(const Assignment&)>& visit) {
	Propagator prop(f);
	if (!prop.start()) return;
	const auto n = static_cast<std::int32_t>(f.var_count());
	bool stop = false;
	std::function<void(std::int32_t)> search = [&](std::int32_t from) {
		std::int32_t v = from;
		while (v <= n && prop.assigned(v)) ++v;
		if (v > n) {
			Assignment a(n);
			for (std::int32_t u = 1; u <= n; ++u) a[u - 1] = prop.value(u) == 1;
			if (!visit(a)) stop = true;
			return;
		}
		for (Lit l : {-v, v}) {
			std::size_t m = prop.mark();
			prop.assign(l);
			if (prop.propagate()) search(v + 1);
			prop.undo(m);
			if (stop) return;
		}
	};
	search(1);
}

std::vector<Assignment> all_models(const CnfFormula& f, std::size_t limit) {
	std::vector<Assignment> out;
	if (limit == 0) return out;
	enumerate_models(f, [&](const Assignment& a) {
		out.push_back(a);
		return out.size() < limit;
	});
	return out;
}

bool is_satisfiable(const CnfFormula& f) { return !all_models(f, 1).empty(); }

} // namespace hcfasp
