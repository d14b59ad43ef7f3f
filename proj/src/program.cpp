#include "hcfasp/program.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hcfasp {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
	: std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
	, line_(line)
	, column_(column) {}

void normalize(AtomSet& s) {
	std::sort(s.begin(), s.end());
	s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const AtomSet& s, AtomId a) { return std::binary_search(s.begin(), s.end(), a); }

bool disjoint(const AtomSet& a, const AtomSet& b) {
	auto i = a.begin();
	auto j = b.begin();
	while (i != a.end() && j != b.end()) {
		if (*i < *j) ++i;
		else if (*j < *i) ++j;
		else return false;
	}
	return true;
}

bool subset_of(const AtomSet& sub, const AtomSet& super) {
	return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
	AtomSet out;
	std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

AtomSet set_intersection(const AtomSet& a, const AtomSet& b) {
	AtomSet out;
	std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
	AtomSet out;
	std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

AtomSet Rule::atoms() const { return set_union(set_union(head, pos), neg); }

// Interpretation ------------------------------------------------------------

Interpretation::Interpretation(std::size_t atom_count, const AtomSet& atoms) : bits_(atom_count) {
	for (AtomId a : atoms) bits_.set(a);
}

AtomSet Interpretation::atoms() const {
	AtomSet out;
	for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
		out.push_back(static_cast<AtomId>(i));
	return out;
}

bool Interpretation::intersects(const AtomSet& s) const {
	return std::any_of(s.begin(), s.end(), [this](AtomId a) { return contains(a); });
}

bool Interpretation::includes(const AtomSet& s) const {
	return std::all_of(s.begin(), s.end(), [this](AtomId a) { return contains(a); });
}

bool Interpretation::operator<(const Interpretation& o) const {
	// Lexicographic over sorted atom lists gives a stable, readable order.
	return atoms() < o.atoms();
}

std::size_t Interpretation::hash() const {
	std::size_t h = bits_.size();
	for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
		h = h * 1000003u ^ (i + 0x9e3779b9u);
	return h;
}

// LevelMapping --------------------------------------------------------------

Level LevelMapping::at(AtomId a) const {
	if (!defined(a)) throw ContractError("level mapping undefined for atom " + std::to_string(a));
	return static_cast<Level>(levels_[a]);
}

void LevelMapping::set(AtomId a, Level l) {
	if (a >= levels_.size()) levels_.resize(a + 1, kUnset);
	levels_[a] = l;
}

AtomSet LevelMapping::domain() const {
	AtomSet out;
	for (std::size_t i = 0; i < levels_.size(); ++i)
		if (levels_[i] != kUnset) out.push_back(static_cast<AtomId>(i));
	return out;
}

// Program -------------------------------------------------------------------

AtomId Program::add_atom(std::string_view name) {
	std::string key(name);
	if (auto it = index_.find(key); it != index_.end()) return it->second;
	auto id = static_cast<AtomId>(names_.size());
	names_.push_back(key);
	index_.emplace(std::move(key), id);
	return id;
}

std::optional<AtomId> Program::find(std::string_view name) const {
	auto it = index_.find(std::string(name));
	if (it == index_.end()) return std::nullopt;
	return it->second;
}

AtomId Program::id(std::string_view name) const {
	if (auto a = find(name)) return *a;
	throw ContractError("unknown atom '" + std::string(name) + "'");
}

void Program::add_rule(Rule r) {
	normalize(r.head);
	normalize(r.pos);
	normalize(r.neg);
	for (const AtomSet* s : {&r.head, &r.pos, &r.neg})
		if (!s->empty() && s->back() >= names_.size())
			throw ContractError("rule references unknown atom id " + std::to_string(s->back()));
	if (!disjoint(r.pos, r.neg))
		throw ContractError("atom occurs both positively and negatively in a rule body");
	if (!disjoint(r.head, r.neg))
		throw ContractError("atom occurs both in the head and the negative body of a rule");
	rules_.push_back(std::move(r));
}

void Program::add_rule(const std::vector<std::string>& head, const std::vector<std::string>& pos,
                       const std::vector<std::string>& neg) {
	Rule r;
	for (const auto& n : head) r.head.push_back(add_atom(n));
	for (const auto& n : pos) r.pos.push_back(add_atom(n));
	for (const auto& n : neg) r.neg.push_back(add_atom(n));
	add_rule(std::move(r));
}

std::string Program::render(const Rule& r) const {
	if (r.head.empty() && r.pos.empty() && r.neg.empty())
		throw ContractError("the empty rule has no textual form");
	std::string out;
	for (std::size_t i = 0; i < r.head.size(); ++i) {
		if (i) out += " | ";
		out += name(r.head[i]);
	}
	if (!r.pos.empty() || !r.neg.empty()) {
		out += r.head.empty() ? ":- " : " :- ";
		bool first = true;
		for (AtomId a : r.pos) {
			if (!first) out += ", ";
			out += name(a);
			first = false;
		}
		for (AtomId a : r.neg) {
			if (!first) out += ", ";
			out += "not " + name(a);
			first = false;
		}
	}
	out += ".";
	return out;
}

std::string Program::render(const Interpretation& i) const {
	std::vector<std::string> names;
	for (AtomId a : i.atoms()) names.push_back(name(a));
	std::sort(names.begin(), names.end());
	std::string out = "{";
	for (std::size_t k = 0; k < names.size(); ++k) {
		if (k) out += ",";
		out += names[k];
	}
	return out + "}";
}

std::string Program::to_text() const {
	std::ostringstream os;
	for (const Rule& r : rules_) os << render(r) << '\n';
	return os.str();
}

std::string choice_copy_name(std::string_view atom) { return "__c(" + std::string(atom) + ")"; }

bool is_reserved_name(std::string_view name) { return name.size() >= 2 && name.substr(0, 2) == "__"; }

// Parser --------------------------------------------------------------------

namespace {

enum class Tok { Ident, If, Bar, Comma, Dot, LBrace, RBrace, End };

struct Token {
	Tok kind = Tok::End;
	std::string text;
	std::size_t line = 0, column = 0;
};

class Lexer {
public:
	Lexer(std::string_view src, bool allow_reserved) : src_(src), allow_reserved_(allow_reserved) {}

	Token next() {
		skip_space();
		Token t{Tok::End, {}, line_, col_};
		if (pos_ >= src_.size()) return t;
		char c = src_[pos_];
		auto single = [&](Tok k) {
			t.kind = k;
			t.text = std::string(1, c);
			advance();
			return t;
		};
		switch (c) {
		case '|': return single(Tok::Bar);
		case ',': return single(Tok::Comma);
		case '.': return single(Tok::Dot);
		case '{': return single(Tok::LBrace);
		case '}': return single(Tok::RBrace);
		case ':':
			if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
				advance();
				advance();
				t.kind = Tok::If;
				t.text = ":-";
				return t;
			}
			break;
		default:
			if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(t);
		}
		throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
	}

private:
	Token ident(Token t) {
		std::size_t start = pos_;
		while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
			advance();
		std::string name(src_.substr(start, pos_ - start));
		if (is_reserved_name(name)) {
			if (!allow_reserved_)
				throw ParseError("names starting with '__' are reserved", t.line, t.column);
			if (pos_ < src_.size() && src_[pos_] == '(') {
				int depth = 0;
				do {
					char c = src_[pos_];
					if (c == '(') ++depth;
					else if (c == ')') --depth;
					else if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ','))
						throw ParseError("malformed reserved atom", line_, col_);
					advance();
				} while (depth > 0 && pos_ < src_.size());
				if (depth != 0) throw ParseError("unbalanced parenthesis in reserved atom", t.line, t.column);
				name = std::string(src_.substr(start, pos_ - start));
			}
		}
		t.kind = Tok::Ident;
		t.text = std::move(name);
		return t;
	}

	void skip_space() {
		while (pos_ < src_.size()) {
			char c = src_[pos_];
			if (c == '%') {
				while (pos_ < src_.size() && src_[pos_] != '\n') advance();
			} else if (std::isspace(static_cast<unsigned char>(c))) {
				advance();
			} else {
				break;
			}
		}
	}

	void advance() {
		if (src_[pos_] == '\n') {
			++line_;
			col_ = 1;
		} else {
			++col_;
		}
		++pos_;
	}

	std::string_view src_;
	bool allow_reserved_;
	std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
public:
	Parser(std::string_view src, const ParseOptions& opts) : lex_(src, opts.allow_reserved) { shift(); }

	Program run() {
		while (cur_.kind != Tok::End) statement();
		return std::move(prog_);
	}

private:
	void shift() { cur_ = lex_.next(); }

	[[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cur_.line, cur_.column); }

	void expect(Tok k, const char* what) {
		if (cur_.kind != k) fail(std::string("expected ") + what);
		shift();
	}

	std::string atom() {
		if (cur_.kind != Tok::Ident) fail("expected atom");
		std::string n = cur_.text;
		shift();
		return n;
	}

	void statement() {
		const std::size_t line = cur_.line, col = cur_.column;
		std::vector<std::string> head, pos, neg;
		if (cur_.kind == Tok::LBrace) {
			shift();
			std::string a = atom();
			expect(Tok::RBrace, "'}'");
			expect(Tok::Dot, "'.'");
			head = {a, choice_copy_name(a)};
		} else {
			if (cur_.kind != Tok::If) {
				head.push_back(atom());
				while (cur_.kind == Tok::Bar) {
					shift();
					head.push_back(atom());
				}
			}
			if (cur_.kind == Tok::If) {
				shift();
				body(pos, neg);
			}
			expect(Tok::Dot, "'.'");
		}
		try {
			prog_.add_rule(head, pos, neg);
		} catch (const ContractError& e) {
			throw ParseError(e.what(), line, col);
		}
	}

	void body(std::vector<std::string>& pos, std::vector<std::string>& neg) {
		for (;;) {
			if (cur_.kind == Tok::Ident && cur_.text == "not") {
				shift();
				if (cur_.kind != Tok::Ident) fail("expected an atom after 'not'");
				neg.push_back(atom());
			} else {
				pos.push_back(atom());
			}
			if (cur_.kind != Tok::Comma) break;
			shift();
		}
	}

	Lexer lex_;
	Token cur_{};
	Program prog_;
};

} // namespace

Program parse_program(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

} // namespace hcfasp
