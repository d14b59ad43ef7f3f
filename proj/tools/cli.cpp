#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcfasp/cnf.hpp"
#include "hcfasp/dp_solver.hpp"
#include "hcfasp/oracle.hpp"
#include "hcfasp/reductions.hpp"
#include "hcfasp/semantics.hpp"
#include "hcfasp/treedecomp.hpp"

namespace hcfasp::cli {

namespace {

class UsageError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct Common {
	std::string file;
	std::string td_file;
	std::string emit_td;
	std::string heuristic = "min-fill";
	std::uint64_t seed = 0;
	bool allow_reserved = false;
};

void add_common(CLI::App* cmd, Common& c) {
	cmd->add_option("file", c.file, "Program file ('-' for standard input)")->required();
	cmd->add_option("--td", c.td_file, "Import a decomposition (PACE .td) of the primal graph");
	cmd->add_option("--emit-td", c.emit_td, "Write the decomposition used for the input program");
	cmd->add_option("--heuristic", c.heuristic, "Elimination heuristic")
	    ->check(CLI::IsMember({"min-fill", "min-degree"}));
	cmd->add_option("--seed", c.seed, "Tie-break seed for the heuristic (0 = by atom id)");
	cmd->add_flag("--allow-reserved", c.allow_reserved, "Accept '__' atom names (compiler output)");
}

std::string slurp(const std::string& path) {
	if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
	std::ifstream in(path);
	if (!in) throw UsageError("cannot open " + path);
	return {std::istreambuf_iterator<char>(in), {}};
}

Program load(const Common& c) {
	try {
		return parse_program(slurp(c.file), ParseOptions{c.allow_reserved});
	} catch (const ParseError& e) {
		throw UsageError(c.file + ":" + e.what());
	}
}

TreeDecomposition decomposition(const Program& p, const Common& c) {
	const PrimalGraph g = primal_graph(p);
	TreeDecomposition td;
	if (!c.td_file.empty()) {
		try {
			td = read_td(slurp(c.td_file));
		} catch (const ParseError& e) {
			throw UsageError(c.td_file + ":" + e.what());
		}
		if (auto v = validate_td(g, td)) throw UsageError(c.td_file + ": invalid decomposition: " + v->message);
	} else {
		td = decompose(g, c.heuristic == "min-degree" ? Heuristic::MinDegree : Heuristic::MinFill, c.seed);
	}
	if (!c.emit_td.empty()) {
		std::ofstream out(c.emit_td);
		if (!out) throw UsageError("cannot write " + c.emit_td);
		out << write_td(td);
	}
	return td;
}

std::string show(const Program& p, const Interpretation& i, bool aux) {
	std::vector<std::string> names;
	for (AtomId a : i.atoms())
		if (aux || !is_reserved_name(p.name(a))) names.push_back(p.name(a));
	std::sort(names.begin(), names.end());
	std::string out = "{";
	for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
	return out + "}";
}

std::size_t max_witness_width(const WitnessTd& w) { return w.td.max_bag_size() == 0 ? 0 : w.td.max_bag_size() - 1; }

int analyze(const Common& c, std::ostream& out) {
	const Program p = load(c);
	const TreeDecomposition td = decomposition(p, c);
	const SccInfo scc = scc_info(p);
	const Classification cls = classify(p);
	nlohmann::ordered_json j;
	j["atoms"] = p.atom_count();
	j["rules"] = p.rule_count();
	j["is_tight"] = cls.is_tight;
	j["is_normal"] = cls.is_normal;
	j["is_hcf"] = cls.is_hcf;
	nlohmann::ordered_json ells = nlohmann::ordered_json::object();
	for (AtomId a = 0; a < p.atom_count(); ++a) ells[p.name(a)] = scc.ell_scc(a);
	j["ell_scc"] = ells;
	j["ell"] = scc.ell;
	j["width"] = td.width();
	j["lambda"] = std::min<long long>(td.width(), scc.ell);
	std::size_t max_rules = 0;
	for (NodeId t = 0; t < td.node_count(); ++t) max_rules = std::max(max_rules, bag_program(p, td.bag(t)).size());
	j["max_bag_rules"] = max_rules;
	j["td_nodes"] = td.node_count();
	if (cls.is_hcf) {
		const Program tight = hcf_to_tight(p, td, scc, true);
		const WitnessTd wt = witness_td_tight(p, td, scc, tight);
		const TreeDecomposition bt = binarize(wt.td);
		const CnfFormula cnf = tight_to_cnf(tight, bt);
		const WitnessTd wc = witness_td_cnf(tight, bt, cnf);
		j["tight_atoms"] = tight.atom_count();
		j["tight_rules"] = tight.rule_count();
		j["tight_witness_width"] = max_witness_width(wt);
		j["cnf_vars"] = cnf.var_count();
		j["cnf_clauses"] = cnf.clause_count();
		j["cnf_witness_width"] = max_witness_width(wc);
	}
	out << j.dump(2) << '\n';
	return 0;
}

int solve(const Common& c, std::ostream& out) {
	const Program p = load(c);
	const NiceTD ntd = make_nice(decomposition(p, c));
	const bool sat = DpSolver(p, ntd, DpOptions{false, false}).consistent();
	out << (sat ? "CONSISTENT" : "INCONSISTENT") << '\n';
	return sat ? 10 : 20;
}

int count(const Common& c, std::ostream& out) {
	const Program p = load(c);
	const NiceTD ntd = make_nice(decomposition(p, c));
	out << DpSolver(p, ntd, DpOptions{true, false}).count() << '\n';
	return 0;
}

int enumerate(const Common& c, std::size_t limit, bool aux, std::ostream& out) {
	const Program p = load(c);
	const NiceTD ntd = make_nice(decomposition(p, c));
	const DpSolver solver(p, ntd);
	std::size_t emitted = 0;
	if (limit == 0) return 0;
	solver.enumerate([&](const Interpretation& i) {
		out << show(p, i, aux) << '\n';
		return ++emitted < limit;
	});
	return 0;
}

int compile_tight(const Common& c, bool no_preserve, std::ostream& out) {
	const Program p = load(c);
	const TreeDecomposition td = decomposition(p, c);
	out << hcf_to_tight(p, td, scc_info(p), !no_preserve).to_text();
	return 0;
}

int compile_cnf(const Common& c, bool weak, std::ostream& out) {
	const Program p = load(c);
	const TreeDecomposition td = decomposition(p, c);
	if (classify(p).is_tight) {
		out << tight_to_cnf(p, binarize(td), weak).to_dimacs();
		return 0;
	}
	const SccInfo scc = scc_info(p);
	const Program tight = hcf_to_tight(p, td, scc, true);
	const TreeDecomposition bt = binarize(witness_td_tight(p, td, scc, tight).td);
	out << tight_to_cnf(tight, bt, weak).to_dimacs();
	return 0;
}

// Answer sets restricted to the first n atoms.
std::set<std::vector<AtomId>> project(const std::vector<Interpretation>& sets, std::size_t n) {
	std::set<std::vector<AtomId>> out;
	for (const Interpretation& i : sets) {
		std::vector<AtomId> kept;
		for (AtomId a : i.atoms())
			if (a < n) kept.push_back(a);
		out.insert(kept);
	}
	return out;
}

bool bounded(const WitnessTd& w, const std::function<std::size_t(NodeId)>& bound) {
	for (NodeId n = 0; n < w.td.node_count(); ++n)
		if (w.td.bag(n).size() > bound(w.origin[n])) return false;
	return true;
}

int verify(const Common& c, std::ostream& out, std::ostream& err) {
	const Program p = load(c);
	if (p.atom_count() > kOracleGuard) {
		err << "error: verify is limited to " << kOracleGuard << " atoms (got " << p.atom_count() << ")\n";
		return 2;
	}
	const TreeDecomposition td = decomposition(p, c);
	const SccInfo scc = scc_info(p);
	bool all_ok = true;
	auto check = [&](const std::string& what, bool ok, const std::string& detail = "") {
		out << (ok ? "ok   " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << '\n';
		all_ok = all_ok && ok;
	};

	const std::vector<Interpretation> oracle = brute_answer_sets(p);
	const std::size_t expected = oracle.size();
	check("oracle answer sets", true, std::to_string(expected));

	const NiceTD ntd = make_nice(td);
	const DpSolver dp(p, ntd);
	std::vector<Interpretation> found = dp.answer_sets();
	std::sort(found.begin(), found.end());
	check("dp enumeration matches oracle", found == oracle);
	check("dp count matches oracle", dp.count() == expected, dp.count().str());
	check("dp consistency matches oracle", dp_consistent(p, ntd) == (expected > 0));

	const Program tight = hcf_to_tight(p, td, scc, true);
	check("tight output is tight", classify(tight).is_tight);
	const std::vector<Interpretation> tight_sets = supported_models(tight);
	const bool all_stable = std::all_of(tight_sets.begin(), tight_sets.end(),
	                                    [&](const Interpretation& i) { return is_answer_set_by_reduct(tight, i); });
	check("tight answer sets project bijectively", all_stable && tight_sets.size() == expected &&
	                                                    project(tight_sets, p.atom_count()) == project(oracle, p.atom_count()));
	const Program loose = hcf_to_tight(p, td, scc, false);
	check("tight output without preservation is consistency-equivalent",
	      supported_models(loose).empty() == (expected == 0));

	const WitnessTd wt = witness_td_tight(p, td, scc, tight);
	check("tight witness decomposition is valid", !validate_td(primal_graph(tight), wt.td));
	check("tight witness bag bound", bounded(wt, [&](NodeId t) { return tight_bag_bound(td.bag(t).size(), scc.ell); }));

	const TreeDecomposition bt = binarize(wt.td);
	if (bt.max_bag_size() <= 64) {
		const BigInt n = DpSolver(tight, make_nice(bt), DpOptions{true, false}).count();
		check("dp count on tight output matches oracle", n == expected, n.str());
	} else {
		out << "skip dp on tight output: witness bag exceeds 64 atoms\n";
	}

	const CnfFormula cnf = tight_to_cnf(tight, bt, false);
	const BigInt models = count_models(cnf);
	check("cnf model count matches oracle", models == expected, models.str());
	if (cnf.var_count() <= kOracleGuard) check("cnf brute models match oracle", brute_models(cnf).size() == expected);
	check("weak cnf satisfiability matches oracle", is_satisfiable(tight_to_cnf(tight, bt, true)) == (expected > 0));
	const WitnessTd wc = witness_td_cnf(tight, bt, cnf);
	check("cnf witness decomposition is valid", !validate_td(primal_graph(cnf), wc.td));
	check("cnf witness bag bound", bounded(wc, [&](NodeId t) {
		      return cnf_bag_bound(bt.bag(t).size(), head_occurrences(tight, bt.bag(t)));
	      }));
	return all_ok ? 0 : 1;
}

} // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	CLI::App app{"Answer-set counting and compilation for head-cycle-free programs", "hcfasp"};
	app.require_subcommand(1);
	Common common;
	std::size_t limit = std::numeric_limits<std::size_t>::max();
	bool aux = false, no_preserve = false, weak = false;

	auto* analyze_cmd = app.add_subcommand("analyze", "Report program class, SCC sizes and decomposition width as JSON");
	add_common(analyze_cmd, common);
	auto* solve_cmd = app.add_subcommand("solve", "Decide consistency (exit 10 / 20)");
	add_common(solve_cmd, common);
	auto* count_cmd = app.add_subcommand("count", "Count answer sets");
	add_common(count_cmd, common);
	auto* enum_cmd = app.add_subcommand("enum", "Print answer sets, one per line");
	add_common(enum_cmd, common);
	enum_cmd->add_option("--limit", limit, "Stop after N answer sets");
	enum_cmd->add_flag("--show-aux", aux, "Also print '__' atoms");
	auto* compile_cmd = app.add_subcommand("compile", "Compile to a tight program or to CNF");
	compile_cmd->require_subcommand(1);
	auto* tight_cmd = compile_cmd->add_subcommand("tight", "Head-cycle-free to tight program");
	add_common(tight_cmd, common);
	tight_cmd->add_flag("--no-preserve", no_preserve, "Only preserve consistency");
	auto* cnf_cmd = compile_cmd->add_subcommand("cnf", "Program to DIMACS CNF");
	add_common(cnf_cmd, common);
	cnf_cmd->add_flag("--weak", weak, "One-directional provability definitions");
	auto* verify_cmd = app.add_subcommand("verify", "Cross-check solver, compilers and oracles");
	add_common(verify_cmd, common);

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		return app.exit(e, out, err) == 0 ? 0 : 1;
	}

	try {
		if (analyze_cmd->parsed()) return analyze(common, out);
		if (solve_cmd->parsed()) return solve(common, out);
		if (count_cmd->parsed()) return count(common, out);
		if (enum_cmd->parsed()) return enumerate(common, limit, aux, out);
		if (tight_cmd->parsed()) return compile_tight(common, no_preserve, out);
		if (cnf_cmd->parsed()) return compile_cnf(common, weak, out);
		if (verify_cmd->parsed()) return verify(common, out, err);
	} catch (const SizeGuardError& e) {
		err << "error: " << e.what() << '\n';
		return 2;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return 1;
	}
	return 1;
}

} // namespace hcfasp::cli
