#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twqbf/graph.hpp"

namespace twqbf {

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

/// Rooted tree stored as a parent array; the root's parent is kNoNode.
struct RootedTree {
  std::vector<std::uint32_t> parent;
  std::uint32_t root = 0;

  std::size_t size() const { return parent.size(); }
  std::vector<std::vector<std::uint32_t>> children() const;
  /// Every node after all of its descendants; the root comes last.
  std::vector<std::uint32_t> postorder() const;
  /// Exactly one root, every node reaches it.
  bool well_formed() const;

  friend bool operator==(const RootedTree&, const RootedTree&) = default;
};

struct TreeDecomposition {
  RootedTree tree;
  std::vector<std::vector<Vertex>> bags;  // each sorted ascending

  std::size_t size() const { return bags.size(); }
  std::uint32_t add_node(std::uint32_t parent, std::vector<Vertex> bag);

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

struct Violation {
  enum class Kind { not_a_tree, unsorted_bag, vertex_out_of_range, missing_vertex, missing_edge, disconnected };
  Kind kind;
  Vertex u = 0;
  Vertex v = 0;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const TreeDecomposition& d, const Graph& g);

/// Largest bag size minus one. Throws InvalidInput on an empty decomposition.
int width(const TreeDecomposition& d);

/// Tree shape, bag order and connectivity, without reference to a graph.
/// Throws InvalidInput naming the first defect.
void check_structure(const TreeDecomposition& d);

enum class Strategy { min_fill, min_degree, exact_small };
std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);

struct DecomposeOptions {
  std::size_t exact_cap = 20;
};

/// Elimination order for the given strategy; exact_small throws CapExceeded
/// above `exact_cap` vertices.
std::vector<Vertex> elimination_order(const Graph& g, Strategy s, DecomposeOptions options = {});

/// The decomposition induced by eliminating vertices in `order`.
TreeDecomposition from_elimination_order(const Graph& g, std::span<const Vertex> order);

/// from_elimination_order followed by simplify.
TreeDecomposition decompose(const Graph& g, Strategy s, DecomposeOptions options = {});

/// Contracts every tree edge whose endpoint bags are nested; the width is
/// unchanged and the result has at most one node per distinct maximal bag.
TreeDecomposition simplify(const TreeDecomposition& d);

/// Replaces nodes with more than two children by chains of bag copies.
TreeDecomposition binarize(const TreeDecomposition& d);

enum class NodeKind { leaf, introduce, forget, join };
std::string_view to_string(NodeKind k);

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  Vertex vertex = 0;  // introduced or forgotten vertex
  std::array<std::uint32_t, 2> child{kNoNode, kNoNode};
};

/// Nodes are stored so that children precede parents; the root is last and
/// has an empty bag, as do all leaves.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  std::vector<std::vector<Vertex>> bags;

  std::size_t size() const { return nodes.size(); }
  std::uint32_t root() const { return static_cast<std::uint32_t>(nodes.size() - 1); }
  TreeDecomposition as_tree_decomposition() const;
};

/// Introduce/forget chains between differing bags put forgets below
/// introduces, so the width is preserved. Node count is at most
/// 4 * size(d) * (width(d) + 2). Throws InvalidInput on a malformed d.
NiceTreeDecomposition make_nice(const TreeDecomposition& d);

/// Empty string when every node obeys its kind, otherwise a description.
std::string check_nice(const NiceTreeDecomposition& d);

/// PACE 2017 .td: "s td <bags> <max bag> <vertices>", "b <id> <v...>", "<id> <id>".
/// The parsed tree is rooted at bag 1; bags are sorted.
struct PaceTd {
  TreeDecomposition td;
  std::size_t num_vertices = 0;
};
PaceTd parse_td(std::string_view text);
/// Canonical form: bags in id order with sorted contents, edges as sorted
/// "min max" pairs.
std::string write_td(const TreeDecomposition& d, std::size_t num_vertices);

}  // namespace twqbf
