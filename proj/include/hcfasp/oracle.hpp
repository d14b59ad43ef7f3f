#ifndef HCFASP_ORACLE_HPP_INCLUDED
#define HCFASP_ORACLE_HPP_INCLUDED

#include <stdexcept>
#include <vector>

#include "hcfasp/cnf.hpp"
#include "hcfasp/program.hpp"

namespace hcfasp {

/// Input exceeds an oracle's size guard.
class SizeGuardError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleGuard = 24;

/// Minimal models of the reduct, by scanning all subsets. Sorted.
std::vector<Interpretation> brute_answer_sets(const Program& p);

/// Every satisfying assignment, by scanning all assignments.
std::vector<Assignment> brute_models(const CnfFormula& f);

/// Completion of the shifted program: atom x becomes variable x+1, one
/// auxiliary variable per (rule, head atom) body follows. Models restricted
/// to the atoms are the supported models.
CnfFormula clark_completion(const Program& p);

/// Supported models; for tight HCF programs these are the answer sets. Sorted.
std::vector<Interpretation> supported_models(const Program& p);

/// Answer-set test for HCF programs without level mappings: the least
/// model of the reduct of the shifted program must equal `i`.
bool is_answer_set_by_reduct(const Program& p, const Interpretation& i);

} // namespace hcfasp

#endif
