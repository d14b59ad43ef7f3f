#ifndef HCFASP_CNF_HPP_INCLUDED
#define HCFASP_CNF_HPP_INCLUDED

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcfasp/dp_solver.hpp"
#include "hcfasp/graphs.hpp"

namespace hcfasp {

using Lit = std::int32_t; // DIMACS style: +v / -v, v >= 1

/// Named variables (1-based) and clauses. Tautologies are dropped and
/// duplicate literals merged on insertion.
class CnfFormula {
public:
	/// Returns the index of `name`, creating it if needed.
	std::int32_t var(std::string_view name);
	std::optional<std::int32_t> find(std::string_view name) const;
	const std::string& name(std::int32_t v) const { return names_.at(v - 1); }
	std::size_t var_count() const { return names_.size(); }

	/// False when the clause was a tautology and got dropped.
	bool add_clause(std::vector<Lit> clause);
	const std::vector<std::vector<Lit>>& clauses() const { return clauses_; }
	std::size_t clause_count() const { return clauses_.size(); }

	/// `p cnf V C` followed by clauses; one `c var <idx> = <name>` line per variable.
	std::string to_dimacs() const;
private:
	std::vector<std::string> names_;
	std::unordered_map<std::string, std::int32_t> index_;
	std::vector<std::vector<Lit>> clauses_;
};

/// Vertex v-1 for variable v; one clique per clause.
PrimalGraph primal_graph(const CnfFormula& f);

/// Bit v-1 of a model is variable v.
using Assignment = std::vector<bool>;

bool satisfies(const Assignment& a, const CnfFormula& f);

/// DPLL enumeration of all models; stops early when `visit` returns false.
void enumerate_models(const CnfFormula& f, const std::function<bool(const Assignment&)>& visit);
std::vector<Assignment> all_models(const CnfFormula& f, std::size_t limit = std::numeric_limits<std::size_t>::max());
bool is_satisfiable(const CnfFormula& f);

/// Exact model count: unit propagation, component decomposition and a
/// component cache.
BigInt count_models(const CnfFormula& f);

} // namespace hcfasp

#endif
