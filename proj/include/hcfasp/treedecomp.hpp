#ifndef HCFASP_TREEDECOMP_HPP_INCLUDED
#define HCFASP_TREEDECOMP_HPP_INCLUDED

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcfasp/graphs.hpp"
#include "hcfasp/program.hpp"

namespace hcfasp {

using NodeId = std::size_t;

struct TdNode {
	AtomSet bag;
	std::optional<NodeId> parent;
	std::vector<NodeId> children;
};

/// Rooted tree decomposition over vertices 0..vertex_count-1.
class TreeDecomposition {
public:
	TreeDecomposition() = default;
	explicit TreeDecomposition(std::size_t vertex_count) : vertex_count_(vertex_count) {}

	NodeId add_node(AtomSet bag);
	/// Attaches `child` below `parent`; `child` must not have a parent yet.
	void link(NodeId parent, NodeId child);
	void set_root(NodeId r) { root_ = r; }

	std::size_t vertex_count() const { return vertex_count_; }
	std::size_t node_count() const { return nodes_.size(); }
	NodeId root() const { return root_; }
	const TdNode& node(NodeId t) const { return nodes_[t]; }
	const AtomSet& bag(NodeId t) const { return nodes_[t].bag; }
	const std::vector<NodeId>& children(NodeId t) const { return nodes_[t].children; }
	std::optional<NodeId> parent(NodeId t) const { return nodes_[t].parent; }
	/// max |bag| - 1; -1 for a decomposition with only empty bags.
	int width() const;
	std::size_t max_bag_size() const;

	/// Children before parents, root last.
	std::vector<NodeId> post_order() const;
private:
	std::size_t vertex_count_ = 0;
	std::vector<TdNode> nodes_;
	NodeId root_ = 0;
};

enum class Heuristic { MinFill, MinDegree };

/// Elimination-ordering decomposition. Ties go to the smallest vertex id;
/// a nonzero seed shuffles the tie-break priority instead. Produces one
/// node per vertex (or one empty node for the empty graph).
TreeDecomposition decompose(const PrimalGraph& g, Heuristic h = Heuristic::MinFill, std::uint64_t seed = 0);

struct TdViolation {
	enum class Kind { Structure, VertexCoverage, EdgeCoverage, Connectedness };
	Kind kind;
	std::string message;
	std::vector<AtomId> vertices; // offending vertex or edge
	std::optional<NodeId> node;   // for connectedness: a node on the path lacking the vertex
};

/// nullopt when `td` is a valid decomposition of `g`.
std::optional<TdViolation> validate_td(const PrimalGraph& g, const TreeDecomposition& td);

enum class NodeType { Leaf, Introduce, Forget, Join };

/// Nice decomposition: node ids are in post-order, root and leaves have
/// empty bags, joins are binary.
struct NiceTD {
	TreeDecomposition td;
	std::vector<NodeType> type;
	std::vector<AtomId> special; // introduced / forgotten atom; unused for leaf and join
};

NiceTD make_nice(const TreeDecomposition& td);
/// Nice-form conditions only (types, bag differences, empty root/leaves).
std::optional<std::string> check_nice(const NiceTD& ntd);

/// Splits nodes with more than two children by inserting copies of the
/// node's bag, so every node has at most two children and every node with
/// two children has the same bag as both of them. Bags are unchanged
/// otherwise; width is preserved.
TreeDecomposition binarize(const TreeDecomposition& td);
bool is_binary_join_form(const TreeDecomposition& td);

/// Indices of rules r with at(r) ⊆ bag.
std::vector<std::size_t> bag_program(const Program& p, const AtomSet& bag);

/// bag_program for many bags of one program: each rule is filed under its
/// smallest atom, so a lookup only inspects rules anchored inside the bag.
class BagProgramIndex {
public:
	explicit BagProgramIndex(const Program& p);
	std::vector<std::size_t> operator()(const AtomSet& bag) const;
private:
	std::vector<AtomSet> atoms_;
	std::vector<std::vector<std::size_t>> anchored_;
	std::vector<std::size_t> empty_;
};

/// PACE .td format; vertex v is written as v+1. The first bag becomes the root on read.
std::string write_td(const TreeDecomposition& td);
TreeDecomposition read_td(std::string_view text);

} // namespace hcfasp

#endif
