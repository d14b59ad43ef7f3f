#include "hcfasp/treedecomp.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace hcfasp {

NodeId TreeDecomposition::add_node(AtomSet bag) {
	normalize(bag);
	nodes_.push_back(TdNode{std::move(bag), std::nullopt, {}});
	return nodes_.size() - 1;
}

void TreeDecomposition::link(NodeId parent, NodeId child) {
	if (nodes_[child].parent) throw ContractError("tree decomposition node already has a parent");
	nodes_[child].parent = parent;
	nodes_[parent].children.push_back(child);
}

int TreeDecomposition::width() const { return static_cast<int>(max_bag_size()) - 1; }

std::size_t TreeDecomposition::max_bag_size() const {
	std::size_t m = 0;
	for (const auto& n : nodes_) m = std::max(m, n.bag.size());
	return m;
}

std::vector<NodeId> TreeDecomposition::post_order() const {
	std::vector<NodeId> order;
	if (nodes_.empty()) return order;
	order.reserve(nodes_.size());
	std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
	while (!stack.empty()) {
		auto& [t, i] = stack.back();
		if (i < nodes_[t].children.size()) {
			NodeId c = nodes_[t].children[i++];
			stack.emplace_back(c, 0);
		} else {
			order.push_back(t);
			stack.pop_back();
		}
	}
	return order;
}

// decompose -----------------------------------------------------------------

TreeDecomposition decompose(const PrimalGraph& g, Heuristic h, std::uint64_t seed) {
	const std::size_t n = g.vertex_count();
	TreeDecomposition td(n);
	if (n == 0) {
		td.set_root(td.add_node({}));
		return td;
	}

	std::vector<std::size_t> priority(n);
	std::iota(priority.begin(), priority.end(), 0);
	if (seed != 0) {
		std::mt19937_64 rng(seed);
		std::shuffle(priority.begin(), priority.end(), rng);
	}

	std::vector<std::set<AtomId>> adj(n);
	for (AtomId v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());

	auto fill_in = [&](AtomId v) {
		std::size_t missing = 0;
		for (auto i = adj[v].begin(); i != adj[v].end(); ++i)
			for (auto j = std::next(i); j != adj[v].end(); ++j)
				if (!adj[*i].count(*j)) ++missing;
		return missing;
	};

	std::vector<bool> eliminated(n, false);
	std::vector<std::size_t> position(n);
	std::vector<AtomId> order;
	std::vector<AtomSet> bags(n);
	for (std::size_t step = 0; step < n; ++step) {
		AtomId best = 0;
		std::size_t best_score = std::numeric_limits<std::size_t>::max();
		for (AtomId v = 0; v < n; ++v) {
			if (eliminated[v]) continue;
			std::size_t score = h == Heuristic::MinFill ? fill_in(v) : adj[v].size();
			if (score < best_score || (score == best_score && priority[v] < priority[best])) {
				best = v;
				best_score = score;
			}
		}
		AtomId v = best;
		eliminated[v] = true;
		position[v] = step;
		order.push_back(v);
		bags[v].assign(adj[v].begin(), adj[v].end());
		bags[v].push_back(v);
		normalize(bags[v]);
		for (AtomId a : adj[v])
			for (AtomId b : adj[v])
				if (a != b) adj[a].insert(b);
		for (AtomId a : adj[v]) adj[a].erase(v);
		adj[v].clear();
	}

	// Node i holds the bag of the i-th eliminated vertex.
	for (AtomId v : order) td.add_node(bags[v]);
	std::vector<NodeId> roots;
	for (std::size_t i = 0; i < n; ++i) {
		AtomId v = order[i];
		std::optional<std::size_t> next;
		for (AtomId u : bags[v])
			if (u != v && (!next || position[u] < *next)) next = position[u];
		if (next) td.link(*next, i);
		else roots.push_back(i);
	}
	// Components are joined under the last component root; their bags are disjoint.
	NodeId root = roots.back();
	for (NodeId r : roots)
		if (r != root) td.link(root, r);
	td.set_root(root);
	return td;
}

// validate_td ---------------------------------------------------------------

std::optional<TdViolation> validate_td(const PrimalGraph& g, const TreeDecomposition& td) {
	using Kind = TdViolation::Kind;
	const std::size_t nodes = td.node_count();
	if (nodes == 0) return TdViolation{Kind::Structure, "decomposition has no nodes", {}, std::nullopt};
	if (td.vertex_count() != g.vertex_count())
		return TdViolation{Kind::Structure, "vertex count mismatch", {}, std::nullopt};
	if (td.root() >= nodes || td.parent(td.root()))
		return TdViolation{Kind::Structure, "root is out of range or has a parent", {}, td.root()};

	for (NodeId t = 0; t < nodes; ++t) {
		const AtomSet& bag = td.bag(t);
		if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
			return TdViolation{Kind::Structure, "bag is not a sorted set", {}, t};
		if (!bag.empty() && bag.back() >= g.vertex_count())
			return TdViolation{Kind::Structure, "bag mentions an unknown vertex", {bag.back()}, t};
		for (NodeId c : td.children(t))
			if (c >= nodes || td.parent(c) != t)
				return TdViolation{Kind::Structure, "parent/child links disagree", {}, t};
		if (t != td.root() && !td.parent(t))
			return TdViolation{Kind::Structure, "node without parent besides the root", {}, t};
	}
	// Reachability from the root (parent links alone could form a cycle).
	std::vector<bool> seen(nodes, false);
	std::deque<NodeId> queue{td.root()};
	seen[td.root()] = true;
	std::size_t reached = 0;
	while (!queue.empty()) {
		NodeId t = queue.front();
		queue.pop_front();
		++reached;
		for (NodeId c : td.children(t)) {
			if (seen[c]) return TdViolation{Kind::Structure, "node reached twice", {}, c};
			seen[c] = true;
			queue.push_back(c);
		}
	}
	if (reached != nodes) return TdViolation{Kind::Structure, "tree is not connected", {}, std::nullopt};

	std::vector<std::vector<NodeId>> occurs(g.vertex_count());
	for (NodeId t = 0; t < nodes; ++t)
		for (AtomId v : td.bag(t)) occurs[v].push_back(t);

	for (AtomId v = 0; v < g.vertex_count(); ++v)
		if (occurs[v].empty())
			return TdViolation{Kind::VertexCoverage, "vertex " + std::to_string(v) + " is in no bag", {v}, std::nullopt};

	for (auto [u, v] : g.edges()) {
		const auto& small = occurs[u].size() <= occurs[v].size() ? occurs[u] : occurs[v];
		AtomId other = occurs[u].size() <= occurs[v].size() ? v : u;
		bool covered = std::any_of(small.begin(), small.end(), [&](NodeId t) { return contains(td.bag(t), other); });
		if (!covered)
			return TdViolation{Kind::EdgeCoverage,
			                   "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag", {u, v},
			                   std::nullopt};
	}

	for (AtomId v = 0; v < g.vertex_count(); ++v) {
		std::vector<NodeId> tops;
		for (NodeId t : occurs[v]) {
			auto p = td.parent(t);
			if (!p || !contains(td.bag(*p), v)) tops.push_back(t);
		}
		if (tops.size() <= 1) continue;
		// Walk the tree path between two topmost occurrences to find a gap.
		auto ancestors = [&](NodeId t) {
			std::vector<NodeId> path{t};
			while (auto p = td.parent(path.back())) path.push_back(*p);
			return path;
		};
		auto pa = ancestors(tops[0]);
		auto pb = ancestors(tops[1]);
		std::set<NodeId> on_a(pa.begin(), pa.end());
		std::vector<NodeId> path;
		for (NodeId t : pb) {
			path.push_back(t);
			if (on_a.count(t)) {
				for (NodeId s : pa) {
					if (s == t) break;
					path.push_back(s);
				}
				break;
			}
		}
		std::optional<NodeId> gap;
		for (NodeId s : path)
			if (!contains(td.bag(s), v)) {
				gap = s;
				break;
			}
		return TdViolation{Kind::Connectedness,
		                   "nodes containing vertex " + std::to_string(v) + " are not connected", {v}, gap};
	}
	return std::nullopt;
}

// make_nice -----------------------------------------------------------------

namespace {

struct NiceBuilder {
	NiceTD out;

	NodeId add(AtomSet bag, NodeType type, AtomId special, std::initializer_list<NodeId> children) {
		NodeId id = out.td.add_node(std::move(bag));
		out.type.push_back(type);
		out.special.push_back(special);
		for (NodeId c : children) out.td.link(id, c);
		return id;
	}

	// Forgets then introduces one atom at a time until the bag equals `target`.
	NodeId morph(NodeId from, const AtomSet& target) {
		AtomSet bag = out.td.bag(from);
		NodeId cur = from;
		for (AtomId a : set_difference(bag, target)) {
			bag.erase(std::find(bag.begin(), bag.end(), a));
			cur = add(bag, NodeType::Forget, a, {cur});
		}
		for (AtomId a : set_difference(target, bag)) {
			bag.insert(std::lower_bound(bag.begin(), bag.end(), a), a);
			cur = add(bag, NodeType::Introduce, a, {cur});
		}
		return cur;
	}
};

} // namespace

NiceTD make_nice(const TreeDecomposition& td) {
	NiceBuilder b;
	b.out.td = TreeDecomposition(td.vertex_count());
	std::vector<NodeId> top(td.node_count());
	for (NodeId t : td.post_order()) {
		const AtomSet& bag = td.bag(t);
		std::vector<NodeId> branches;
		for (NodeId c : td.children(t)) branches.push_back(b.morph(top[c], bag));
		if (branches.empty()) {
			branches.push_back(b.morph(b.add({}, NodeType::Leaf, 0, {}), bag));
		}
		NodeId cur = branches.front();
		for (std::size_t i = 1; i < branches.size(); ++i) cur = b.add(bag, NodeType::Join, 0, {cur, branches[i]});
		top[t] = cur;
	}
	NodeId root = b.morph(top[td.root()], {});
	b.out.td.set_root(root);
	return std::move(b.out);
}

std::optional<std::string> check_nice(const NiceTD& ntd) {
	const auto& td = ntd.td;
	if (td.node_count() == 0) return "no nodes";
	if (!td.bag(td.root()).empty()) return "root bag is not empty";
	for (NodeId t = 0; t < td.node_count(); ++t) {
		const auto& ch = td.children(t);
		for (NodeId c : ch)
			if (c >= t) return "node ids are not in post-order";
		const AtomSet& bag = td.bag(t);
		switch (ntd.type[t]) {
		case NodeType::Leaf:
			if (!ch.empty() || !bag.empty()) return "leaf with children or nonempty bag";
			break;
		case NodeType::Introduce:
			if (ch.size() != 1 || set_difference(bag, td.bag(ch[0])) != AtomSet{ntd.special[t]} ||
			    !subset_of(td.bag(ch[0]), bag))
				return "malformed introduce node " + std::to_string(t);
			break;
		case NodeType::Forget:
			if (ch.size() != 1 || set_difference(td.bag(ch[0]), bag) != AtomSet{ntd.special[t]} ||
			    !subset_of(bag, td.bag(ch[0])))
				return "malformed forget node " + std::to_string(t);
			break;
		case NodeType::Join:
			if (ch.size() != 2 || td.bag(ch[0]) != bag || td.bag(ch[1]) != bag)
				return "malformed join node " + std::to_string(t);
			break;
		}
	}
	return std::nullopt;
}

// binarize ------------------------------------------------------------------

TreeDecomposition binarize(const TreeDecomposition& td) {
	TreeDecomposition out(td.vertex_count());
	for (NodeId t = 0; t < td.node_count(); ++t) out.add_node(td.bag(t));
	for (NodeId t = 0; t < td.node_count(); ++t) {
		const auto& ch = td.children(t);
		if (ch.size() == 1) {
			out.link(t, ch[0]);
			continue;
		}
		if (ch.empty()) continue;
		std::vector<NodeId> pending;
		for (NodeId c : ch) {
			if (td.bag(c) == td.bag(t)) {
				pending.push_back(c);
			} else {
				NodeId copy = out.add_node(td.bag(t));
				out.link(copy, c);
				pending.push_back(copy);
			}
		}
		while (pending.size() > 2) {
			NodeId j = out.add_node(td.bag(t));
			NodeId a = pending.back();
			pending.pop_back();
			NodeId b = pending.back();
			pending.pop_back();
			out.link(j, a);
			out.link(j, b);
			pending.insert(pending.begin(), j);
		}
		for (NodeId c : pending) out.link(t, c);
	}
	out.set_root(td.root());
	return out;
}

bool is_binary_join_form(const TreeDecomposition& td) {
	for (NodeId t = 0; t < td.node_count(); ++t) {
		const auto& ch = td.children(t);
		if (ch.size() > 2) return false;
		if (ch.size() == 2 && (td.bag(ch[0]) != td.bag(t) || td.bag(ch[1]) != td.bag(t))) return false;
	}
	return true;
}

std::vector<std::size_t> bag_program(const Program& p, const AtomSet& bag) {
	std::vector<std::size_t> out;
	for (std::size_t i = 0; i < p.rules().size(); ++i)
		if (subset_of(p.rules()[i].atoms(), bag)) out.push_back(i);
	return out;
}

BagProgramIndex::BagProgramIndex(const Program& p) : anchored_(p.atom_count()) {
	atoms_.reserve(p.rule_count());
	for (std::size_t i = 0; i < p.rule_count(); ++i) {
		atoms_.push_back(p.rules()[i].atoms());
		if (atoms_.back().empty()) empty_.push_back(i);
		else anchored_[atoms_.back().front()].push_back(i);
	}
}

std::vector<std::size_t> BagProgramIndex::operator()(const AtomSet& bag) const {
	std::vector<std::size_t> out = empty_;
	for (AtomId a : bag) {
		if (a >= anchored_.size()) continue;
		for (std::size_t i : anchored_[a])
			if (subset_of(atoms_[i], bag)) out.push_back(i);
	}
	std::sort(out.begin(), out.end());
	return out;
}

// PACE .td ------------------------------------------------------------------

std::string write_td(const TreeDecomposition& td) {
	std::ostringstream os;
	os << "s td " << td.node_count() << ' ' << td.max_bag_size() << ' ' << td.vertex_count() << '\n';
	for (NodeId t = 0; t < td.node_count(); ++t) {
		os << "b " << t + 1;
		for (AtomId v : td.bag(t)) os << ' ' << v + 1;
		os << '\n';
	}
	for (NodeId t = 0; t < td.node_count(); ++t)
		if (auto p = td.parent(t)) os << *p + 1 << ' ' << t + 1 << '\n';
	return os.str();
}

TreeDecomposition read_td(std::string_view text) {
	std::istringstream in{std::string(text)};
	std::string line;
	std::size_t lineno = 0;
	std::size_t bags = 0, vertices = 0;
	bool header = false;
	std::vector<AtomSet> bag_of;
	std::vector<bool> bag_seen;
	std::vector<std::pair<std::size_t, std::size_t>> edges;
	while (std::getline(in, line)) {
		++lineno;
		std::istringstream ls(line);
		std::string tag;
		if (!(ls >> tag) || tag == "c") continue;
		if (tag == "s") {
			std::string td_tag;
			std::size_t width_plus_one = 0;
			if (!(ls >> td_tag >> bags >> width_plus_one >> vertices) || td_tag != "td")
				throw ParseError("malformed 's td' header", lineno, 1);
			header = true;
			bag_of.assign(bags, {});
			bag_seen.assign(bags, false);
		} else if (!header) {
			throw ParseError("content before 's td' header", lineno, 1);
		} else if (tag == "b") {
			std::size_t id = 0;
			if (!(ls >> id) || id == 0 || id > bags) throw ParseError("bad bag id", lineno, 1);
			if (bag_seen[id - 1]) throw ParseError("duplicate bag id", lineno, 1);
			bag_seen[id - 1] = true;
			std::size_t v;
			while (ls >> v) {
				if (v == 0 || v > vertices) throw ParseError("vertex out of range", lineno, 1);
				bag_of[id - 1].push_back(static_cast<AtomId>(v - 1));
			}
		} else {
			std::size_t u = 0, v = 0;
			std::istringstream es(line);
			if (!(es >> u >> v) || u == 0 || v == 0 || u > bags || v > bags)
				throw ParseError("malformed tree edge", lineno, 1);
			edges.emplace_back(u - 1, v - 1);
		}
	}
	if (!header) throw ParseError("missing 's td' header", lineno, 1);
	if (bags == 0) throw ParseError("decomposition without bags", lineno, 1);
	if (edges.size() != bags - 1) throw ParseError("tree must have #bags-1 edges", lineno, 1);

	TreeDecomposition td(vertices);
	for (auto& b : bag_of) td.add_node(b);
	std::vector<std::vector<std::size_t>> adj(bags);
	for (auto [u, v] : edges) {
		adj[u].push_back(v);
		adj[v].push_back(u);
	}
	std::vector<bool> seen(bags, false);
	std::deque<std::size_t> queue{0};
	seen[0] = true;
	std::size_t reached = 0;
	while (!queue.empty()) {
		auto t = queue.front();
		queue.pop_front();
		++reached;
		for (auto c : adj[t]) {
			if (seen[c]) continue;
			seen[c] = true;
			td.link(t, c);
			queue.push_back(c);
		}
	}
	if (reached != bags) throw ParseError("decomposition tree is not connected", lineno, 1);
	td.set_root(0);
	return td;
}

} // namespace hcfasp
