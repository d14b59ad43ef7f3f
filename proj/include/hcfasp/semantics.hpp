#ifndef HCFASP_SEMANTICS_HPP_INCLUDED
#define HCFASP_SEMANTICS_HPP_INCLUDED

#include <optional>

#include "hcfasp/graphs.hpp"
#include "hcfasp/program.hpp"

namespace hcfasp {

struct Classification {
	bool is_tight = true;
	bool is_normal = true;
	bool is_hcf = true;
};

/// `d` must be the dependency digraph of `p`.
Classification classify(const Program& p, const DependencyDigraph& d);
Classification classify(const Program& p);

/// Gelfond-Lifschitz reduct: drops rules blocked by `i`, strips negation
/// from the rest. Shares the atom table of `p`.
Program gl_reduct(const Program& p, const Interpretation& i);

/// (H ∪ B-) ∩ I ≠ ∅ or B+ \ I ≠ ∅.
bool satisfies(const Interpretation& i, const Rule& r);
bool satisfies(const Interpretation& i, const Program& p);

/// Does `r` prove `a` under `i` and `sigma`? Only positive body atoms in the
/// SCC of `a` are compared against sigma(a).
bool proves(const Rule& r, AtomId a, const Interpretation& i, const LevelMapping& sigma, const SccInfo& scc);

/// Least level mapping proving every atom of `i`, built stage by stage:
/// an atom gets level k once some rule proves it using same-SCC atoms of
/// levels < k. Returns nullopt when some atom of `i` is never proven.
/// Does not check i ⊨ p.
std::optional<LevelMapping> minimal_level_mapping(const Program& p, const Interpretation& i, const SccInfo& scc);

/// Answer-set test for HCF programs via the level-mapping characterization.
/// Throws ContractError for programs with a head cycle.
bool is_answer_set(const Program& p, const Interpretation& i, const SccInfo& scc);
bool is_answer_set(const Program& p, const Interpretation& i);

} // namespace hcfasp

#endif
