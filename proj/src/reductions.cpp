#include "hcfasp/reductions.hpp"

#include <algorithm>
#include <set>

#include "hcfasp/semantics.hpp"

namespace hcfasp {

std::string level_bit_name(std::string_view x, unsigned j) {
	return "__b(" + std::string(x) + "," + std::to_string(j) + ")";
}

std::string prec_name(NodeId t, std::string_view x, Level i) {
	return "__lt(" + std::to_string(t) + "," + std::string(x) + "," + std::to_string(i) + ")";
}

std::string prov_at_name(NodeId t, std::string_view x) {
	return "__p(" + std::to_string(t) + "," + std::string(x) + ")";
}

std::string prov_below_name(NodeId t, std::string_view x) {
	return "__pb(" + std::to_string(t) + "," + std::string(x) + ")";
}

std::string fire_name(NodeId t, std::size_t rule, std::string_view x) {
	return "__f(" + std::to_string(t) + "," + std::to_string(rule) + "," + std::string(x) + ")";
}

std::string cnf_prov_at_name(NodeId t, std::string_view x) {
	return "__cp(" + std::to_string(t) + "," + std::string(x) + ")";
}

std::string cnf_prov_below_name(NodeId t, std::string_view x) {
	return "__cpb(" + std::to_string(t) + "," + std::string(x) + ")";
}

unsigned level_bit_count(Level ell_scc) {
	unsigned m = 0;
	while ((std::uint64_t{1} << m) < ell_scc) ++m;
	return m;
}

std::vector<BitLiteral> encode_bits(Level ell_scc, Level i) {
	if (i >= ell_scc) throw ContractError("level out of range for its SCC");
	std::vector<BitLiteral> out;
	for (unsigned j = 1; j <= level_bit_count(ell_scc); ++j) out.push_back({j, ((i >> (j - 1)) & 1u) != 0});
	return out;
}

std::vector<BitLiteral> encode_bits(AtomId x, Level i, const SccInfo& scc) { return encode_bits(scc.ell_scc(x), i); }

std::vector<std::vector<unsigned>> prec_rule_bodies(Level ell_scc, Level i) {
	if (i == 0 || i >= ell_scc) throw ContractError("x≺i needs 1 <= i < ell_scc");
	const unsigned m = level_bit_count(ell_scc);
	auto bit = [&](unsigned j) { return ((i >> (j - 1)) & 1u) != 0; };
	std::vector<std::vector<unsigned>> bodies;
	for (unsigned j = 1; j <= m; ++j) {
		if (!bit(j)) continue;
		std::vector<unsigned> body{j};
		for (unsigned k = j + 1; k <= m; ++k)
			if (!bit(k)) body.push_back(k);
		bodies.push_back(std::move(body));
	}
	return bodies;
}

std::size_t tight_bag_bound(std::size_t bag, Level ell) {
	const unsigned bits = ell <= 2 ? 0 : level_bit_count(ell - 1);
	return bag * (4 + bits);
}

std::size_t head_occurrences(const Program& p, const AtomSet& bag) {
	std::size_t occ = 0;
	for (std::size_t r : bag_program(p, bag)) occ += p.rules()[r].head.size();
	return occ;
}

std::size_t cnf_bag_bound(std::size_t bag, std::size_t occ) { return 4 * bag + occ; }

// HCF -> tight ---------------------------------------------------------------

namespace {

class RuleSink {
public:
	explicit RuleSink(Program& out) : out_(out) {}
	AtomId atom(const std::string& name) { return out_.add_atom(name); }
	void emit(AtomSet head, AtomSet pos, AtomSet neg) {
		normalize(head);
		normalize(pos);
		normalize(neg);
		Rule r{std::move(head), std::move(pos), std::move(neg)};
		if (seen_.insert(r).second) out_.add_rule(std::move(r));
	}
private:
	Program& out_;
	std::set<Rule> seen_;
};

void add_bits(RuleSink& sink, const std::string& x, const std::vector<BitLiteral>& lits, AtomSet& pos, AtomSet& neg) {
	for (const BitLiteral& b : lits) (b.positive ? pos : neg).push_back(sink.atom(level_bit_name(x, b.j)));
}

} // namespace

Program hcf_to_tight(const Program& p, const TreeDecomposition& td, const SccInfo& scc, bool preserve) {
	if (!classify(p).is_hcf) throw ContractError("program is not head-cycle-free");
	if (td.vertex_count() != p.atom_count()) throw ContractError("decomposition vertex count differs from atom count");
	const BagProgramIndex bag_rules(p);

	Program out;
	for (AtomId a = 0; a < p.atom_count(); ++a) out.add_atom(p.name(a));
	RuleSink sink(out);

	for (NodeId t = 0; t < td.node_count(); ++t) {
		const AtomSet& bag = td.bag(t);
		const std::vector<std::size_t> rules = bag_rules(bag);

		for (AtomId x : bag) {
			const std::string& xn = p.name(x);
			const Level ell = scc.ell_scc(x);
			const unsigned m = level_bit_count(ell);
			sink.emit({x, sink.atom(choice_copy_name(xn))}, {}, {});
			for (unsigned j = 1; j <= m; ++j) {
				const std::string b = level_bit_name(xn, j);
				sink.emit({sink.atom(b), sink.atom(choice_copy_name(b))}, {}, {});
			}
			for (Level i = 1; i < ell; ++i)
				for (const auto& body : prec_rule_bodies(ell, i)) {
					AtomSet neg;
					for (unsigned j : body) neg.push_back(sink.atom(level_bit_name(xn, j)));
					sink.emit({sink.atom(prec_name(t, xn, i))}, {}, neg);
				}
		}

		for (std::size_t ri : rules) {
			const Rule& r = p.rules()[ri];
			if (set_intersection(r.head, r.pos).empty()) sink.emit({}, r.pos, set_union(r.neg, r.head));

			for (AtomId x : r.head) {
				const AtomSet others = set_difference(r.head, {x});
				// A body needing some atom both true and false never fires.
				if (!set_intersection(others, r.pos).empty()) continue;
				const std::string& xn = p.name(x);
				const Level ell = scc.ell_scc(x);
				AtomSet in_scc;
				for (AtomId b : r.pos)
					if (scc.same_scc(x, b)) in_scc.push_back(b);
				AtomSet pos = set_union(r.pos, {x});
				const AtomSet neg = set_union(r.neg, others);
				const AtomId p_t = sink.atom(prov_at_name(t, xn));

				auto leveled = [&](Level i, Level prec_level, bool constraint) {
					AtomSet lpos = pos, lneg = neg;
					add_bits(sink, xn, encode_bits(ell, i), lpos, lneg);
					for (AtomId b : in_scc) lpos.push_back(sink.atom(prec_name(t, p.name(b), prec_level)));
					sink.emit(constraint ? AtomSet{} : AtomSet{p_t}, lpos, lneg);
				};
				if (!in_scc.empty()) {
					for (Level i = 1; i < ell; ++i) leveled(i, i, false);
					if (preserve)
						for (Level i = 2; i < ell; ++i) leveled(i, i - 1, true);
				} else {
					sink.emit({p_t}, pos, neg);
					if (preserve)
						for (Level i = 1; i < ell; ++i) {
							AtomSet lpos = pos, lneg = neg;
							add_bits(sink, xn, encode_bits(ell, i), lpos, lneg);
							sink.emit({}, lpos, lneg);
						}
				}
			}
		}

		for (AtomId x : bag) {
			const std::string& xn = p.name(x);
			const AtomId below = sink.atom(prov_below_name(t, xn));
			sink.emit({below}, {sink.atom(prov_at_name(t, xn))}, {});
			for (NodeId c : td.children(t))
				if (contains(td.bag(c), x)) sink.emit({below}, {sink.atom(prov_below_name(c, xn))}, {});
		}
		for (NodeId c : td.children(t))
			for (AtomId x : set_difference(td.bag(c), bag)) sink.emit({}, {x}, {sink.atom(prov_below_name(c, p.name(x)))});
		if (t == td.root())
			for (AtomId x : bag) sink.emit({}, {x}, {sink.atom(prov_below_name(t, p.name(x)))});

		if (!preserve) continue;
		for (AtomId x : bag) {
			const std::string& xn = p.name(x);
			const Level ell = scc.ell_scc(x);
			const unsigned m = level_bit_count(ell);
			for (unsigned j = 1; j <= m; ++j) sink.emit({}, {sink.atom(level_bit_name(xn, j))}, {x});
			// Bit patterns encoding levels >= ell.
			for (Level i = ell; i < (Level{1} << m); ++i) {
				AtomSet pos, neg;
				for (unsigned j = 1; j <= m; ++j)
					(((i >> (j - 1)) & 1u) ? pos : neg).push_back(sink.atom(level_bit_name(xn, j)));
				sink.emit({}, pos, neg);
			}
		}
	}
	return out;
}

WitnessTd witness_td_tight(const Program& p, const TreeDecomposition& td, const SccInfo& scc, const Program& tight) {
	WitnessTd w{TreeDecomposition(tight.atom_count()), {}};
	auto add = [&](AtomSet bag, NodeId origin) {
		w.origin.push_back(origin);
		return w.td.add_node(std::move(bag));
	};
	auto put = [&](AtomSet& bag, const std::string& name) {
		if (auto a = tight.find(name)) bag.push_back(*a);
	};

	std::vector<NodeId> core(td.node_count());
	for (NodeId t = 0; t < td.node_count(); ++t) {
		const AtomSet& chi = td.bag(t);
		AtomSet base = chi;
		Level levels = 1;
		for (AtomId x : chi) {
			const std::string& xn = p.name(x);
			for (unsigned j = 1; j <= level_bit_count(scc.ell_scc(x)); ++j) put(base, level_bit_name(xn, j));
			put(base, prov_at_name(t, xn));
			levels = std::max(levels, scc.ell_scc(x));
		}
		AtomSet bag = base;
		for (AtomId x : chi) put(bag, prov_below_name(t, p.name(x)));
		if (auto parent = td.parent(t))
			for (AtomId x : set_intersection(chi, td.bag(*parent))) put(bag, prov_below_name(*parent, p.name(x)));
		core[t] = add(bag, t);

		NodeId prev = core[t];
		for (Level i = 1; i < levels; ++i) {
			AtomSet level_bag = base;
			for (AtomId x : chi)
				if (i < scc.ell_scc(x)) put(level_bag, prec_name(t, p.name(x), i));
			NodeId n = add(level_bag, t);
			w.td.link(prev, n);
			prev = n;
		}
	}
	for (NodeId t = 0; t < td.node_count(); ++t)
		for (NodeId c : td.children(t)) w.td.link(core[t], core[c]);
	w.td.set_root(core[td.root()]);

	// Choice copies hang off a core holding the guessed atom.
	std::vector<std::optional<NodeId>> home(p.atom_count());
	for (NodeId t = 0; t < td.node_count(); ++t)
		for (AtomId x : td.bag(t))
			if (!home[x]) home[x] = t;
	for (AtomId x = 0; x < p.atom_count(); ++x) {
		if (!home[x]) continue;
		const NodeId t = *home[x];
		auto copy = tight.find(choice_copy_name(p.name(x)));
		if (!copy) continue;
		if (*copy < p.atom_count()) {
			// The copy is an input atom (lowered choice): it already shares a bag with x.
			bool shared = false;
			for (NodeId s = 0; s < td.node_count() && !shared; ++s)
				shared = contains(td.bag(s), x) && contains(td.bag(s), *copy);
			if (!shared) throw ContractError("choice copy of " + p.name(x) + " shares no bag with it");
			continue;
		}
		NodeId n = add({x, *copy}, t);
		w.td.link(core[t], n);
		for (unsigned j = 1; j <= level_bit_count(scc.ell_scc(x)); ++j) {
			const std::string b = level_bit_name(p.name(x), j);
			auto bit = tight.find(b);
			auto bit_copy = tight.find(choice_copy_name(b));
			if (!bit || !bit_copy) continue;
			NodeId nb = add({*bit, *bit_copy}, t);
			w.td.link(core[t], nb);
		}
	}
	return w;
}

// tight -> CNF ---------------------------------------------------------------

CnfFormula tight_to_cnf(const Program& p, const TreeDecomposition& td, bool weak) {
	if (!classify(p).is_tight) throw ContractError("program is not tight");
	if (td.vertex_count() != p.atom_count()) throw ContractError("decomposition vertex count differs from atom count");
	if (!is_binary_join_form(td)) throw ContractError("decomposition needs binary joins over equal bags");
	const BagProgramIndex bag_rules(p);

	CnfFormula f;
	for (AtomId a = 0; a < p.atom_count(); ++a) f.var(p.name(a));
	auto v = [&](AtomId a) { return static_cast<Lit>(a + 1); };

	for (NodeId t = 0; t < td.node_count(); ++t) {
		const AtomSet& bag = td.bag(t);
		const std::vector<std::size_t> rules = bag_rules(bag);

		for (std::size_t ri : rules) {
			const Rule& r = p.rules()[ri];
			std::vector<Lit> clause;
			for (AtomId a : r.pos) clause.push_back(-v(a));
			for (AtomId a : set_union(r.neg, r.head)) clause.push_back(v(a));
			f.add_clause(std::move(clause));
		}
		for (NodeId c : td.children(t))
			for (AtomId x : set_difference(td.bag(c), bag))
				f.add_clause({-v(x), f.var(cnf_prov_below_name(c, p.name(x)))});
		if (t == td.root())
			for (AtomId x : bag) f.add_clause({-v(x), f.var(cnf_prov_below_name(t, p.name(x)))});

		for (AtomId x : bag) {
			const std::string& xn = p.name(x);
			const Lit pt = f.var(cnf_prov_at_name(t, xn));
			std::vector<Lit> fires;
			for (std::size_t ri : rules) {
				const Rule& r = p.rules()[ri];
				if (!contains(r.head, x)) continue;
				const Lit fire = f.var(fire_name(t, ri, xn));
				fires.push_back(fire);
				std::vector<Lit> back{fire};
				for (AtomId a : set_union(r.pos, {x})) {
					f.add_clause({-fire, v(a)});
					back.push_back(-v(a));
				}
				for (AtomId b : set_union(r.neg, set_difference(r.head, {x}))) {
					f.add_clause({-fire, -v(b)});
					back.push_back(v(b));
				}
				if (!weak) f.add_clause(std::move(back));
			}
			std::vector<Lit> def{-pt};
			def.insert(def.end(), fires.begin(), fires.end());
			f.add_clause(std::move(def));
			if (!weak)
				for (Lit fire : fires) f.add_clause({-fire, pt});

			const Lit below = f.var(cnf_prov_below_name(t, xn));
			std::vector<Lit> up{-below, pt};
			if (!weak) f.add_clause({-pt, below});
			for (NodeId c : td.children(t)) {
				if (!contains(td.bag(c), x)) continue;
				const Lit child = f.var(cnf_prov_below_name(c, xn));
				up.push_back(child);
				if (!weak) f.add_clause({-child, below});
			}
			f.add_clause(std::move(up));
		}
	}
	return f;
}

WitnessTd witness_td_cnf(const Program& p, const TreeDecomposition& td, const CnfFormula& cnf) {
	const BagProgramIndex bag_rules(p);
	WitnessTd w{TreeDecomposition(cnf.var_count()), {}};
	auto add = [&](AtomSet bag, NodeId origin) {
		w.origin.push_back(origin);
		return w.td.add_node(std::move(bag));
	};
	auto put = [&](AtomSet& bag, const std::string& name) {
		if (auto var = cnf.find(name)) bag.push_back(static_cast<AtomId>(*var - 1));
	};

	std::vector<NodeId> top(td.node_count());
	for (NodeId t : td.post_order()) {
		const AtomSet& chi = td.bag(t);
		const auto& ch = td.children(t);
		const std::vector<std::size_t> rules = bag_rules(chi);
		auto fires_of = [&](AtomId x, AtomSet& bag) {
			std::size_t n = 0;
			for (std::size_t ri : rules)
				if (contains(p.rules()[ri].head, x)) {
					put(bag, fire_name(t, ri, p.name(x)));
					++n;
				}
			return n;
		};

		if (ch.size() <= 1) {
			AtomSet bag = chi;
			for (AtomId x : chi) {
				put(bag, cnf_prov_at_name(t, p.name(x)));
				put(bag, cnf_prov_below_name(t, p.name(x)));
				fires_of(x, bag);
				if (!ch.empty() && contains(td.bag(ch[0]), x)) put(bag, cnf_prov_below_name(ch[0], p.name(x)));
			}
			top[t] = add(bag, t);
			if (!ch.empty()) w.td.link(top[t], top[ch[0]]);
			continue;
		}

		// Join over equal bags: spread the provability clauses along a chain.
		const NodeId t1 = ch[0], t2 = ch[1];
		AtomSet head = chi;
		for (AtomId x : chi) {
			put(head, cnf_prov_below_name(t, p.name(x)));
			put(head, cnf_prov_below_name(t1, p.name(x)));
		}
		top[t] = add(head, t);
		w.td.link(top[t], top[t1]);
		NodeId prev = top[t];
		for (std::size_t k = 0; k < chi.size(); ++k) {
			const AtomId xk = chi[k];
			AtomSet fires;
			const std::size_t occ = fires_of(xk, fires);
			AtomSet link_bag = chi;
			for (std::size_t j = 0; j < chi.size(); ++j) {
				if (j >= k) {
					put(link_bag, cnf_prov_below_name(t, p.name(chi[j])));
					put(link_bag, cnf_prov_below_name(t1, p.name(chi[j])));
				}
				if (j <= k) put(link_bag, cnf_prov_below_name(t2, p.name(chi[j])));
			}
			if (occ > 0) put(link_bag, cnf_prov_at_name(t, p.name(xk)));
			NodeId s = add(link_bag, t);
			w.td.link(prev, s);
			prev = s;

			AtomSet pendant;
			if (occ > 0) {
				pendant = chi;
				put(pendant, cnf_prov_at_name(t, p.name(xk)));
				pendant.insert(pendant.end(), fires.begin(), fires.end());
			} else {
				put(pendant, cnf_prov_at_name(t, p.name(xk)));
				put(pendant, cnf_prov_below_name(t, p.name(xk)));
				put(pendant, cnf_prov_below_name(t1, p.name(xk)));
				put(pendant, cnf_prov_below_name(t2, p.name(xk)));
			}
			w.td.link(s, add(pendant, t));
		}
		w.td.link(prev, top[t2]);
	}
	w.td.set_root(top[td.root()]);
	return w;
}

} // namespace hcfasp
