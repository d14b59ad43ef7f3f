#ifndef HCFASP_REDUCTIONS_HPP_INCLUDED
#define HCFASP_REDUCTIONS_HPP_INCLUDED

#include <string>
#include <string_view>
#include <vector>

#include "hcfasp/cnf.hpp"
#include "hcfasp/graphs.hpp"
#include "hcfasp/program.hpp"
#include "hcfasp/treedecomp.hpp"

namespace hcfasp {

// Auxiliary atom names. The double-underscore prefix is reserved.
std::string level_bit_name(std::string_view x, unsigned j);
std::string prec_name(NodeId t, std::string_view x, Level i);
std::string prov_at_name(NodeId t, std::string_view x);
std::string prov_below_name(NodeId t, std::string_view x);
std::string fire_name(NodeId t, std::size_t rule, std::string_view x);
// CNF-stage provability variables; distinct from the tight-stage atoms so
// the two compilers can be chained.
std::string cnf_prov_at_name(NodeId t, std::string_view x);
std::string cnf_prov_below_name(NodeId t, std::string_view x);

/// ceil(log2 ell_scc): 0 for ell_scc = 1.
unsigned level_bit_count(Level ell_scc);

struct BitLiteral {
	unsigned j; // 1 = least significant
	bool positive;
	bool operator==(const BitLiteral&) const = default;
};

/// Signed level-bit literals representing level i of an atom whose SCC has
/// size ell_scc. Throws ContractError unless i < ell_scc.
std::vector<BitLiteral> encode_bits(Level ell_scc, Level i);
std::vector<BitLiteral> encode_bits(AtomId x, Level i, const SccInfo& scc);

/// Bodies of the rules defining x≺i, each a set of bit positions that must
/// be false. Requires 1 <= i < ell_scc.
std::vector<std::vector<unsigned>> prec_rule_bodies(Level ell_scc, Level i);

/// HCF to tight. Atom ids of `p` are kept; auxiliary atoms follow. With
/// `preserve` the answer sets project bijectively onto those of `p`,
/// otherwise only consistency is preserved. Accepts any decomposition of
/// the primal graph of `p`; throws ContractError for non-HCF input.
Program hcf_to_tight(const Program& p, const TreeDecomposition& td, const SccInfo& scc, bool preserve = true);

struct WitnessTd {
	TreeDecomposition td;
	std::vector<NodeId> origin; // input node each witness node was built for
};

/// Decomposition of the primal graph of `tight` = hcf_to_tight(p, td, scc, ..).
WitnessTd witness_td_tight(const Program& p, const TreeDecomposition& td, const SccInfo& scc,
                           const Program& tight);
/// |bag| · (4 + ceil(log2(ell - 1))).
std::size_t tight_bag_bound(std::size_t bag, Level ell);

/// Tight to CNF. `td` must decompose the primal graph of `p` and have at
/// most two children per node, with joins over equal bags (see binarize).
/// Original atoms become variables 1..n in id order. With `weak` the
/// provability definitions are one-directional.
CnfFormula tight_to_cnf(const Program& p, const TreeDecomposition& td, bool weak = false);

/// Decomposition of the primal graph of `cnf` = tight_to_cnf(p, td, ..).
WitnessTd witness_td_cnf(const Program& p, const TreeDecomposition& td, const CnfFormula& cnf);
/// Sum of head sizes over the bag program of `bag`.
std::size_t head_occurrences(const Program& p, const AtomSet& bag);
/// 4·|bag| + occ.
std::size_t cnf_bag_bound(std::size_t bag, std::size_t occ);

} // namespace hcfasp

#endif
