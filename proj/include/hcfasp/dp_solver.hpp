#ifndef HCFASP_DP_SOLVER_HPP_INCLUDED
#define HCFASP_DP_SOLVER_HPP_INCLUDED

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hcfasp/graphs.hpp"
#include "hcfasp/program.hpp"
#include "hcfasp/treedecomp.hpp"

namespace hcfasp {

using BigInt = boost::multiprecision::cpp_int;

/// Atoms of `i` proven by some rule of `rules` under `sigma`.
AtomSet gatherproof(const Interpretation& i, const LevelMapping& sigma, const std::vector<Rule>& rules,
                    const SccInfo& scc);

/// All extensions of `sigma` assigning each new atom a level below its ell_scc.
std::vector<LevelMapping> possord(const LevelMapping& sigma, const AtomSet& new_atoms, const SccInfo& scc);

/// False when some a in `i` with sigma(a) > 0 is still proven by a rule of
/// `rules` after lowering its level by one.
bool isminimal(const LevelMapping& sigma, const Interpretation& i, const std::vector<Rule>& rules,
               const SccInfo& scc);

struct DpOptions {
	/// Dropping the minimality filter keeps consistency exact but makes
	/// counts and enumeration overcount.
	bool check_minimality = true;
	/// Predecessor links, needed for enumerate() and extensions().
	bool record_links = true;
};

/// Row over the bag of its node. Bit k of `I`/`P` and `sigma[k]` refer to
/// the k-th smallest bag atom.
struct DpRow {
	std::uint64_t I = 0;
	std::uint64_t P = 0;
	std::vector<Level> sigma;
	BigInt count;
	/// (row in first child, row in second child or kNoRow), one per origin.
	std::vector<std::pair<std::size_t, std::size_t>> preds;
};

inline constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

struct DpTable {
	AtomSet bag;
	std::vector<DpRow> rows;
};

/// Runs the table algorithm bottom-up over a nice decomposition of the
/// primal graph of an HCF program. Rejects non-HCF programs, invalid
/// decompositions and bags with more than 64 atoms (ContractError).
class DpSolver {
public:
	DpSolver(const Program& p, const NiceTD& ntd, DpOptions opts = {});

	bool consistent() const { return !root_table().rows.empty(); }
	BigInt count() const;
	/// Calls `visit` once per answer set; stops early when it returns false.
	void enumerate(const std::function<bool(const Interpretation&)>& visit) const;
	std::vector<Interpretation> answer_sets(std::size_t limit = std::numeric_limits<std::size_t>::max()) const;

	const DpTable& table(NodeId t) const { return tables_[t]; }
	const DpTable& root_table() const { return tables_[ntd_.td.root()]; }
	/// Rule indices of the bag program of `t`.
	const std::vector<std::size_t>& bag_rules(NodeId t) const { return bag_rules_[t]; }
	/// Every assignment of the atoms below `t` (with levels) that the row
	/// summarizes. Atoms outside the subtree are false and unset.
	void extensions(NodeId t, std::size_t row,
	                const std::function<void(const Interpretation&, const LevelMapping&)>& visit) const;
	const SccInfo& scc() const { return scc_; }
private:
	void solve_node(NodeId t);
	void walk(std::vector<std::pair<NodeId, std::size_t>>& pending, Interpretation& i, LevelMapping& sigma,
	          const std::function<bool(const Interpretation&, const LevelMapping&)>& visit, bool& stop) const;

	Program p_;
	NiceTD ntd_;
	DpOptions opts_;
	SccInfo scc_;
	std::vector<std::vector<std::size_t>> bag_rules_;
	std::vector<DpTable> tables_;
};

bool dp_consistent(const Program& p, const NiceTD& ntd);
BigInt dp_count(const Program& p, const NiceTD& ntd);
std::vector<Interpretation> dp_answer_sets(const Program& p, const NiceTD& ntd);

} // namespace hcfasp

#endif
