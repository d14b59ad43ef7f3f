#include "hcfasp/dp_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hcfasp/semantics.hpp"

namespace hcfasp {

AtomSet gatherproof(const Interpretation& i, const LevelMapping& sigma, const std::vector<Rule>& rules,
                    const SccInfo& scc) {
	AtomSet out;
	for (const Rule& r : rules)
		for (AtomId a : r.head)
			if (i.contains(a) && proves(r, a, i, sigma, scc)) out.push_back(a);
	normalize(out);
	return out;
}

std::vector<LevelMapping> possord(const LevelMapping& sigma, const AtomSet& new_atoms, const SccInfo& scc) {
	std::vector<LevelMapping> out{sigma};
	for (AtomId a : new_atoms) {
		if (sigma.defined(a)) throw ContractError("possord: atom already has a level");
		std::vector<LevelMapping> next;
		for (const LevelMapping& m : out)
			for (Level l = 0; l < scc.ell_scc(a); ++l) {
				LevelMapping e = m;
				e.set(a, l);
				next.push_back(std::move(e));
			}
		out = std::move(next);
	}
	return out;
}

bool isminimal(const LevelMapping& sigma, const Interpretation& i, const std::vector<Rule>& rules,
               const SccInfo& scc) {
	for (const Rule& r : rules)
		for (AtomId a : r.head) {
			if (!i.contains(a) || !sigma.defined(a) || sigma.at(a) == 0) continue;
			LevelMapping rho = sigma;
			rho.set(a, sigma.at(a) - 1);
			if (proves(r, a, i, rho, scc)) return false;
		}
	return true;
}

namespace {

// Rule over bag positions.
struct LocalRule {
	std::uint64_t head = 0, pos = 0, neg = 0;
	// For each head position: positive body positions in the same SCC.
	std::vector<std::pair<unsigned, std::uint64_t>> scc_pos;
};

inline std::uint64_t bit(unsigned k) { return std::uint64_t{1} << k; }

bool satisfied(std::uint64_t I, const LocalRule& r) {
	return (r.head & I) || (r.neg & I) || (r.pos & ~I);
}

// Does r prove the atom at position k when it has level `level`?
bool proves_local(std::uint64_t I, const std::vector<Level>& sigma, const LocalRule& r, unsigned k, Level level) {
	if ((r.pos & ~I) || (r.neg & I) || (r.head & I) != bit(k)) return false;
	for (auto [h, mask] : r.scc_pos) {
		if (h != k) continue;
		for (std::uint64_t m = mask; m; m &= m - 1)
			if (sigma[std::countr_zero(m)] >= level) return false;
		return true;
	}
	return false;
}

struct RowKey {
	std::uint64_t I, P;
	std::vector<Level> sigma;
	bool operator==(const RowKey&) const = default;
};

struct RowKeyHash {
	std::size_t operator()(const RowKey& k) const {
		std::size_t h = std::hash<std::uint64_t>{}(k.I) * 31 + std::hash<std::uint64_t>{}(k.P);
		for (Level l : k.sigma) h = h * 1000003u ^ l;
		return h;
	}
};

class TableBuilder {
public:
	explicit TableBuilder(bool links) : links_(links) {}

	void add(std::uint64_t I, std::uint64_t P, std::vector<Level> sigma, const BigInt& count, std::size_t from1,
	         std::size_t from2) {
		RowKey key{I, P, sigma};
		auto [it, fresh] = index_.try_emplace(std::move(key), rows_.size());
		if (fresh) {
			DpRow row;
			row.I = I;
			row.P = P;
			row.sigma = std::move(sigma);
			rows_.push_back(std::move(row));
		}
		DpRow& row = rows_[it->second];
		row.count += count;
		if (links_) row.preds.emplace_back(from1, from2);
	}
	std::vector<DpRow> take() { return std::move(rows_); }
private:
	bool links_;
	std::vector<DpRow> rows_;
	std::unordered_map<RowKey, std::size_t, RowKeyHash> index_;
};

// Inserts a zero bit at position k.
inline std::uint64_t expand(std::uint64_t x, unsigned k) {
	std::uint64_t low = bit(k) - 1;
	return (x & low) | ((x & ~low) << 1);
}

// Removes bit k.
inline std::uint64_t compress(std::uint64_t x, unsigned k) {
	std::uint64_t low = bit(k) - 1;
	return (x & low) | ((x >> (k + 1)) << k);
}

} // namespace

DpSolver::DpSolver(const Program& p, const NiceTD& ntd, DpOptions opts) : p_(p), ntd_(ntd), opts_(opts) {
	if (!classify(p).is_hcf) throw ContractError("program is not head-cycle-free");
	if (ntd.td.vertex_count() != p.atom_count())
		throw ContractError("decomposition vertex count differs from atom count");
	if (auto v = validate_td(primal_graph(p), ntd.td)) throw ContractError("invalid tree decomposition: " + v->message);
	if (auto why = check_nice(ntd)) throw ContractError("not a nice tree decomposition: " + *why);
	if (ntd.td.max_bag_size() > 64) throw ContractError("bags with more than 64 atoms are not supported");
	scc_ = scc_info(p);

	const std::size_t n = ntd.td.node_count();
	std::vector<std::vector<std::size_t>> rules_of(p.atom_count());
	std::vector<std::size_t> empty_rules;
	std::vector<AtomSet> rule_atoms;
	for (std::size_t r = 0; r < p.rule_count(); ++r) {
		rule_atoms.push_back(p.rules()[r].atoms());
		if (rule_atoms.back().empty()) empty_rules.push_back(r);
		for (AtomId a : rule_atoms.back()) rules_of[a].push_back(r);
	}
	bag_rules_.assign(n, {});
	tables_.assign(n, {});
	for (NodeId t : ntd.td.post_order()) {
		const auto& ch = ntd.td.children(t);
		auto& mine = bag_rules_[t];
		switch (ntd.type[t]) {
		case NodeType::Leaf:
			mine = empty_rules;
			break;
		case NodeType::Introduce: {
			mine = bag_rules_[ch[0]];
			for (std::size_t r : rules_of[ntd.special[t]])
				if (subset_of(rule_atoms[r], ntd.td.bag(t))) mine.push_back(r);
			std::sort(mine.begin(), mine.end());
			mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
			break;
		}
		case NodeType::Forget:
			for (std::size_t r : bag_rules_[ch[0]])
				if (!contains(rule_atoms[r], ntd.special[t])) mine.push_back(r);
			break;
		case NodeType::Join:
			mine = bag_rules_[ch[0]];
			break;
		}
		solve_node(t);
	}
}

void DpSolver::solve_node(NodeId t) {
	const AtomSet& bag = ntd_.td.bag(t);
	DpTable& out = tables_[t];
	out.bag = bag;
	const auto& ch = ntd_.td.children(t);
	const NodeType type = ntd_.type[t];
	const std::size_t expected = type == NodeType::Leaf ? 0 : type == NodeType::Join ? 2 : 1;
	if (ch.size() != expected) throw ContractError("child count does not match node type");

	auto position = [&](AtomId a) {
		return static_cast<unsigned>(std::lower_bound(bag.begin(), bag.end(), a) - bag.begin());
	};
	std::vector<LocalRule> rules;
	for (std::size_t ri : bag_rules_[t]) {
		const Rule& r = p_.rules()[ri];
		LocalRule lr;
		for (AtomId a : r.head) lr.head |= bit(position(a));
		for (AtomId a : r.pos) lr.pos |= bit(position(a));
		for (AtomId a : r.neg) lr.neg |= bit(position(a));
		for (AtomId h : r.head) {
			std::uint64_t mask = 0;
			for (AtomId b : r.pos)
				if (scc_.same_scc(h, b)) mask |= bit(position(b));
			lr.scc_pos.emplace_back(position(h), mask);
		}
		rules.push_back(std::move(lr));
	}

	TableBuilder builder(opts_.record_links);
	switch (type) {
	case NodeType::Leaf:
		if (std::all_of(rules.begin(), rules.end(), [](const LocalRule& r) { return satisfied(0, r); }))
			builder.add(0, 0, {}, BigInt(1), kNoRow, kNoRow);
		break;
	case NodeType::Introduce: {
		const AtomId a = ntd_.special[t];
		const unsigned k = position(a);
		const Level ell = scc_.ell_scc(a);
		const auto& child = tables_[ch[0]].rows;
		for (std::size_t ci = 0; ci < child.size(); ++ci) {
			const DpRow& row = child[ci];
			for (int in = 0; in < 2; ++in) {
				const std::uint64_t I = expand(row.I, k) | (in ? bit(k) : 0);
				if (!std::all_of(rules.begin(), rules.end(), [&](const LocalRule& r) { return satisfied(I, r); }))
					continue;
				const Level levels = in ? ell : 1;
				for (Level l = 0; l < levels; ++l) {
					std::vector<Level> sigma = row.sigma;
					sigma.insert(sigma.begin() + k, l);
					bool minimal = true;
					std::uint64_t gathered = 0;
					for (const LocalRule& r : rules)
						for (std::uint64_t m = r.head & I; m; m &= m - 1) {
							const unsigned j = std::countr_zero(m);
							if (opts_.check_minimality && sigma[j] > 0 && proves_local(I, sigma, r, j, sigma[j] - 1))
								minimal = false;
							if (proves_local(I, sigma, r, j, sigma[j])) gathered |= bit(j);
						}
					if (!minimal) continue;
					builder.add(I, expand(row.P, k) | gathered, std::move(sigma), row.count, ci, kNoRow);
				}
			}
		}
		break;
	}
	case NodeType::Forget: {
		const AtomId a = ntd_.special[t];
		const auto& child_bag = ntd_.td.bag(ch[0]);
		const auto k = static_cast<unsigned>(std::lower_bound(child_bag.begin(), child_bag.end(), a) - child_bag.begin());
		const auto& child = tables_[ch[0]].rows;
		for (std::size_t ci = 0; ci < child.size(); ++ci) {
			const DpRow& row = child[ci];
			if ((row.I & bit(k)) && !(row.P & bit(k))) continue;
			std::vector<Level> sigma = row.sigma;
			sigma.erase(sigma.begin() + k);
			builder.add(compress(row.I, k), compress(row.P, k), std::move(sigma), row.count, ci, kNoRow);
		}
		break;
	}
	case NodeType::Join: {
		const auto& left = tables_[ch[0]].rows;
		const auto& right = tables_[ch[1]].rows;
		std::unordered_map<RowKey, std::vector<std::size_t>, RowKeyHash> by_key;
		for (std::size_t ri = 0; ri < right.size(); ++ri) by_key[RowKey{right[ri].I, 0, right[ri].sigma}].push_back(ri);
		for (std::size_t li = 0; li < left.size(); ++li) {
			auto it = by_key.find(RowKey{left[li].I, 0, left[li].sigma});
			if (it == by_key.end()) continue;
			for (std::size_t ri : it->second)
				builder.add(left[li].I, left[li].P | right[ri].P, left[li].sigma, left[li].count * right[ri].count, li,
				            ri);
		}
		break;
	}
	}
	out.rows = builder.take();

	// Rows are determined by (I, P, sigma) with P ⊆ I.
	long double bound = std::pow(3.0L, static_cast<long double>(bag.size()));
	for (AtomId a : bag) bound *= scc_.ell_scc(a);
	if (static_cast<long double>(out.rows.size()) > bound) throw std::logic_error("table size bound violated");
}

BigInt DpSolver::count() const {
	BigInt total = 0;
	for (const DpRow& r : root_table().rows) total += r.count;
	return total;
}

void DpSolver::walk(std::vector<std::pair<NodeId, std::size_t>>& pending, Interpretation& i, LevelMapping& sigma,
                    const std::function<bool(const Interpretation&, const LevelMapping&)>& visit, bool& stop) const {
	if (stop) return;
	if (pending.empty()) {
		if (!visit(i, sigma)) stop = true;
		return;
	}
	const auto [t, r] = pending.back();
	pending.pop_back();
	const DpRow& row = tables_[t].rows[r];
	const auto& ch = ntd_.td.children(t);

	bool had = false, had_level = false;
	Level old_level = 0;
	AtomId a = 0;
	if (ntd_.type[t] == NodeType::Introduce) {
		a = ntd_.special[t];
		const auto k = static_cast<std::size_t>(
		    std::lower_bound(tables_[t].bag.begin(), tables_[t].bag.end(), a) - tables_[t].bag.begin());
		had = i.contains(a);
		had_level = sigma.defined(a);
		if (had_level) old_level = sigma.at(a);
		i.assign(a, (row.I >> k) & 1);
		sigma.set(a, row.sigma[k]);
	}
	for (auto [c1, c2] : row.preds) {
		if (ch.size() >= 1) pending.emplace_back(ch[0], c1);
		if (ch.size() == 2) pending.emplace_back(ch[1], c2);
		walk(pending, i, sigma, visit, stop);
		pending.resize(pending.size() - ch.size());
		if (stop) break;
	}
	if (ntd_.type[t] == NodeType::Introduce) {
		i.assign(a, had);
		if (had_level) sigma.set(a, old_level);
		else sigma.unset(a);
	}
	pending.emplace_back(t, r);
}

void DpSolver::extensions(NodeId t, std::size_t row,
                          const std::function<void(const Interpretation&, const LevelMapping&)>& visit) const {
	if (!opts_.record_links) throw ContractError("extensions need recorded predecessor links");
	std::vector<std::pair<NodeId, std::size_t>> pending{{t, row}};
	Interpretation i(p_.atom_count());
	LevelMapping sigma(p_.atom_count());
	bool stop = false;
	walk(pending, i, sigma,
	     [&](const Interpretation& ii, const LevelMapping& ss) {
		     visit(ii, ss);
		     return true;
	     },
	     stop);
}

void DpSolver::enumerate(const std::function<bool(const Interpretation&)>& visit) const {
	if (!opts_.record_links) throw ContractError("enumeration needs recorded predecessor links");
	const NodeId root = ntd_.td.root();
	Interpretation i(p_.atom_count());
	LevelMapping sigma(p_.atom_count());
	bool stop = false;
	for (std::size_t r = 0; r < tables_[root].rows.size() && !stop; ++r) {
		std::vector<std::pair<NodeId, std::size_t>> pending{{root, r}};
		walk(pending, i, sigma, [&](const Interpretation& ii, const LevelMapping&) { return visit(ii); }, stop);
	}
}

std::vector<Interpretation> DpSolver::answer_sets(std::size_t limit) const {
	std::vector<Interpretation> out;
	if (limit == 0) return out;
	enumerate([&](const Interpretation& i) {
		out.push_back(i);
		return out.size() < limit;
	});
	return out;
}

bool dp_consistent(const Program& p, const NiceTD& ntd) {
	return DpSolver(p, ntd, DpOptions{false, false}).consistent();
}

BigInt dp_count(const Program& p, const NiceTD& ntd) { return DpSolver(p, ntd, DpOptions{true, false}).count(); }

std::vector<Interpretation> dp_answer_sets(const Program& p, const NiceTD& ntd) {
	return DpSolver(p, ntd).answer_sets();
}

} // namespace hcfasp
