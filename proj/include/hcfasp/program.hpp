#ifndef HCFASP_PROGRAM_HPP_INCLUDED
#define HCFASP_PROGRAM_HPP_INCLUDED

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace hcfasp {

using AtomId = std::uint32_t;
using Level = std::uint32_t;

// Sorted, duplicate-free list of atom ids.
using AtomSet = std::vector<AtomId>;

/// Raised by parse_program with a 1-based source position.
class ParseError : public std::runtime_error {
public:
	ParseError(const std::string& msg, std::size_t line, std::size_t column);
	std::size_t line() const { return line_; }
	std::size_t column() const { return column_; }
private:
	std::size_t line_, column_;
};

/// Raised when an operation's precondition does not hold (e.g. a non-HCF
/// program handed to the HCF solver).
class ContractError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

void normalize(AtomSet& s);
bool contains(const AtomSet& s, AtomId a);
bool disjoint(const AtomSet& a, const AtomSet& b);
bool subset_of(const AtomSet& sub, const AtomSet& super);
AtomSet set_union(const AtomSet& a, const AtomSet& b);
AtomSet set_intersection(const AtomSet& a, const AtomSet& b);
AtomSet set_difference(const AtomSet& a, const AtomSet& b);

// a_1 | ... | a_m :- a_{m+1}, ..., a_n, not a_{n+1}, ..., not a_o.
struct Rule {
	AtomSet head;
	AtomSet pos;
	AtomSet neg;

	/// at(r) = head ∪ pos ∪ neg.
	AtomSet atoms() const;
	bool operator==(const Rule&) const = default;
	auto operator<=>(const Rule&) const = default;
};

class Interpretation {
public:
	Interpretation() = default;
	explicit Interpretation(std::size_t atom_count) : bits_(atom_count) {}
	Interpretation(std::size_t atom_count, const AtomSet& atoms);

	std::size_t universe() const { return bits_.size(); }
	bool contains(AtomId a) const { return a < bits_.size() && bits_.test(a); }
	void insert(AtomId a) { bits_.set(a); }
	void erase(AtomId a) { bits_.reset(a); }
	void assign(AtomId a, bool value) { bits_.set(a, value); }
	std::size_t count() const { return bits_.count(); }
	bool empty() const { return bits_.none(); }
	AtomSet atoms() const;
	bool intersects(const AtomSet& s) const;
	bool includes(const AtomSet& s) const;
	bool is_subset_of(const Interpretation& other) const { return bits_.is_subset_of(other.bits_); }

	bool operator==(const Interpretation& o) const { return bits_ == o.bits_; }
	bool operator<(const Interpretation& o) const;
	std::size_t hash() const;
private:
	boost::dynamic_bitset<> bits_;
};

/// Partial map from atoms to levels.
class LevelMapping {
public:
	LevelMapping() = default;
	explicit LevelMapping(std::size_t atom_count) : levels_(atom_count, kUnset) {}

	bool defined(AtomId a) const { return a < levels_.size() && levels_[a] != kUnset; }
	Level at(AtomId a) const;
	void set(AtomId a, Level l);
	void unset(AtomId a) { if (a < levels_.size()) levels_[a] = kUnset; }
	std::size_t universe() const { return levels_.size(); }
	AtomSet domain() const;
	bool operator==(const LevelMapping&) const = default;
private:
	static constexpr std::int64_t kUnset = -1;
	std::vector<std::int64_t> levels_;
};

class Program {
public:
	/// Interns a name; returns the existing id when already present.
	AtomId add_atom(std::string_view name);
	std::optional<AtomId> find(std::string_view name) const;
	AtomId id(std::string_view name) const;
	const std::string& name(AtomId a) const { return names_.at(a); }
	std::size_t atom_count() const { return names_.size(); }

	/// Sorts the three literal sets and rejects rules whose positive and
	/// negative bodies (or head and negative body) overlap.
	void add_rule(Rule r);
	const std::vector<Rule>& rules() const { return rules_; }
	std::size_t rule_count() const { return rules_.size(); }

	/// Convenience for tests and generated programs: atoms by name.
	void add_rule(const std::vector<std::string>& head, const std::vector<std::string>& pos,
	              const std::vector<std::string>& neg);

	std::string render(const Rule& r) const;
	std::string render(const Interpretation& i) const;
	/// Program text in the input grammar, one rule per line.
	std::string to_text() const;
private:
	std::vector<std::string> names_;
	std::unordered_map<std::string, AtomId> index_;
	std::vector<Rule> rules_;
};

struct ParseOptions {
	// Accept names starting with "__" (the reserved auxiliary namespace).
	// Needed to read back compiled output.
	bool allow_reserved = false;
};

/// Reads the ground program grammar:
///   program := (stmt ".")*
///   stmt    := heads [":-" body] | ":-" body | "{" atom "}"
/// `{a}.` is lowered to `a | __c(a).`
Program parse_program(std::string_view text, const ParseOptions& opts = {});

std::string choice_copy_name(std::string_view atom);
bool is_reserved_name(std::string_view name);

} // namespace hcfasp

template <>
struct std::hash<hcfasp::Interpretation> {
	std::size_t operator()(const hcfasp::Interpretation& i) const { return i.hash(); }
};

#endif
