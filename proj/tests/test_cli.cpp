#include "doctest.h"

#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "hcfasp/oracle.hpp"
#include "hcfasp/semantics.hpp"
#include "support/generators.hpp"
#include "support/temp_file.hpp"

using namespace hcfasp;
using testing::TempFile;

namespace {

struct Run {
	int code;
	std::string out, err;
};

Run run(std::vector<std::string> args) {
	std::ostringstream out, err;
	const int code = cli::execute(args, out, err);
	return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
	std::vector<std::string> out;
	std::istringstream in(text);
	for (std::string line; std::getline(in, line);) out.push_back(line);
	return out;
}

} // namespace

TEST_CASE("count and enum on the running program") {
	TempFile f(testing::kRunningProgram);
	Run c = run({"count", f.path()});
	CHECK(c.code == 0);
	CHECK(c.out == "3\n");

	Run e = run({"enum", f.path()});
	CHECK(e.code == 0);
	auto got = lines(e.out);
	std::sort(got.begin(), got.end());
	CHECK(got == std::vector<std::string>{"{a,b,c,d,e}", "{f}", "{g}"});

	CHECK(lines(run({"enum", "--limit", "1", f.path()}).out).size() == 1);
	CHECK(run({"enum", "--limit", "0", f.path()}).out.empty());
}

TEST_CASE("analyze reports parameters as JSON") {
	TempFile f(testing::kRunningProgram);
	Run a = run({"analyze", f.path()});
	REQUIRE(a.code == 0);
	auto j = nlohmann::json::parse(a.out);
	CHECK(j["atoms"] == 7);
	CHECK(j["rules"] == 7);
	CHECK(j["is_hcf"] == true);
	CHECK(j["is_tight"] == false);
	CHECK(j["is_normal"] == false);
	CHECK(j["ell"] == 5);
	CHECK(j["width"] == 2);
	CHECK(j["lambda"] == 2);
	CHECK(j["max_bag_rules"] == 3);
	CHECK(j["ell_scc"]["e"] == 1);
	for (const char* a : {"a", "b", "c", "d"}) CHECK(j["ell_scc"][a] == 4);
	CHECK(j["tight_witness_width"].get<int>() + 1 <= 18);
	CHECK(j.contains("cnf_witness_width"));
}

TEST_CASE("analyze skips the compilers for programs with head cycles") {
	TempFile f("a | b :- c. c :- a. c :- b.");
	Run a = run({"analyze", f.path()});
	REQUIRE(a.code == 0);
	auto j = nlohmann::json::parse(a.out);
	CHECK(j["is_hcf"] == false);
	CHECK_FALSE(j.contains("tight_atoms"));
	CHECK(run({"count", f.path()}).code == 1);
}

TEST_CASE("solve exit codes") {
	TempFile yes(testing::kRunningProgram);
	Run s = run({"solve", yes.path()});
	CHECK(s.code == 10);
	CHECK(s.out == "CONSISTENT\n");
	TempFile no(":- not a.");
	s = run({"solve", no.path()});
	CHECK(s.code == 20);
	CHECK(s.out == "INCONSISTENT\n");
}

TEST_CASE("compiled tight program re-parses and keeps the answer sets") {
	TempFile f(testing::kRunningProgram);
	Run c = run({"compile", "tight", f.path()});
	REQUIRE(c.code == 0);
	Program tight = parse_program(c.out, ParseOptions{true});
	CHECK(classify(tight).is_tight);
	CHECK(supported_models(tight).size() == 3);

	TempFile back(c.out);
	CHECK(run({"count", back.path()}).code == 1);
	CHECK(run({"count", "--allow-reserved", back.path()}).out == "3\n");
	Run hidden = run({"enum", "--allow-reserved", back.path()});
	auto got = lines(hidden.out);
	std::sort(got.begin(), got.end());
	CHECK(got == std::vector<std::string>{"{a,b,c,d,e}", "{f}", "{g}"});

	Run loose = run({"compile", "tight", "--no-preserve", f.path()});
	CHECK(loose.code == 0);
	CHECK(classify(parse_program(loose.out, ParseOptions{true})).is_tight);
}

TEST_CASE("compile cnf writes DIMACS") {
	TempFile f(testing::kRunningProgram);
	Run c = run({"compile", "cnf", f.path()});
	REQUIRE(c.code == 0);
	auto ls = lines(c.out);
	auto header = std::find_if(ls.begin(), ls.end(), [](const std::string& l) { return l.rfind("p cnf ", 0) == 0; });
	REQUIRE(header != ls.end());
	std::istringstream h(*header);
	std::string p, cnf;
	std::size_t vars = 0, clauses = 0;
	h >> p >> cnf >> vars >> clauses;
	CHECK(static_cast<std::size_t>(ls.end() - header - 1) == clauses);
	CHECK(ls.front() == "c var 1 = a");
	CHECK(run({"compile", "cnf", "--weak", f.path()}).code == 0);

	TempFile t("a | b. c :- a, not b.");
	CHECK(run({"compile", "cnf", t.path()}).code == 0);
}

TEST_CASE("verify passes on consistent and inconsistent programs") {
	for (const char* src : {testing::kRunningProgram, ":- not a.", "a :- a. b :- not a.", "{a}. {b}. c :- a, b."}) {
		TempFile f(src);
		Run v = run({"verify", f.path()});
		CHECK(v.code == 0);
		CHECK(v.out.find("FAIL") == std::string::npos);
	}
}

TEST_CASE("verify refuses large programs") {
	std::string src;
	for (int k = 0; k < 30; ++k) src += "a" + std::to_string(k) + ". ";
	TempFile f(src);
	CHECK(run({"verify", f.path()}).code == 2);
}

TEST_CASE("decomposition import and export") {
	TempFile f(testing::kRunningProgram);
	TempFile td("", ".td");
	CHECK(run({"count", "--emit-td", td.path(), f.path()}).out == "3\n");
	const std::string text = testing::read_file(td.path());
	CHECK(text.rfind("s td ", 0) == 0);
	CHECK(run({"count", "--td", td.path(), f.path()}).out == "3\n");

	TempFile bad("s td 1 1 7\nb 1 1\n", ".td");
	Run r = run({"count", "--td", bad.path(), f.path()});
	CHECK(r.code == 1);
	CHECK(r.err.find("invalid decomposition") != std::string::npos);

	CHECK(run({"count", "--heuristic", "min-degree", "--seed", "5", f.path()}).out == "3\n");
	CHECK(run({"count", "--heuristic", "nonsense", f.path()}).code == 1);
}

TEST_CASE("usage and input errors") {
	CHECK(run({}).code == 1);
	CHECK(run({"frobnicate"}).code == 1);
	CHECK(run({"--help"}).code == 0);
	Run missing = run({"count", "/nonexistent/x.lp"});
	CHECK(missing.code == 1);
	CHECK(missing.err.find("error:") == 0);
	TempFile broken("a :- b");
	Run parse = run({"count", broken.path()});
	CHECK(parse.code == 1);
	CHECK(parse.err.find(":1:7:") != std::string::npos);
}

TEST_CASE("verify agrees on random programs") {
	std::mt19937_64 rng(81);
	for (int round = 0; round < 40; ++round) {
		Program p = testing::random_hcf_program(rng, 6, 8);
		TempFile f(p.to_text());
		Run v = run({"verify", f.path()});
		CHECK(v.code == 0);
		if (v.code != 0) MESSAGE(p.to_text() << v.out);
	}
}
