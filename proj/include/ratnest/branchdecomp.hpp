#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratnest/graph.hpp"

namespace ratnest {

/// Unrooted tree whose leaves are bijectively labeled with graph edge ids.
/// Internal nodes have degree exactly 3; a single-edge graph is a one-node
/// tree; an edgeless graph is the empty tree.
struct BranchDecomposition {
  std::vector<std::vector<int>> adj;  // tree adjacency
  std::vector<EdgeId> leaf_edge;      // per node: decomposed edge id, or -1 for internal

  int node_count() const { return static_cast<int>(adj.size()); }
  bool is_leaf(int node) const { return leaf_edge[node] >= 0; }
  /// Tree edges as (a, b) pairs with a < b, sorted.
  std::vector<std::pair<int, int>> tree_edges() const;
};

struct TreeDecomposition {
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<VertexId>> bags;
  int root = -1;  // optional; -1 when unrooted

  int node_count() const { return static_cast<int>(adj.size()); }
  int width() const;
};

/// ∂(X_e) for every tree edge, in tree_edges() order.
std::vector<std::vector<VertexId>> middle_sets(const BranchDecomposition& bd, const Graph& g);

/// Max middle-set size; 0 for trees without tree edges.
int width(const BranchDecomposition& bd, const Graph& g);

/// First violated invariant, or nullopt when valid.
std::optional<std::string> validate(const BranchDecomposition& bd, const Graph& g);

std::optional<std::string> validate_tree_decomposition(const TreeDecomposition& td, const Graph& g);

/// bw(g) <= 1 exactly when every component is a star (at most one vertex of
/// degree >= 2); such graphs get their decomposition directly.
bool is_union_of_stars(const Graph& g);
BranchDecomposition star_forest_bd(const Graph& g);

/// Joins per-block decompositions into one of the whole graph, following the
/// block-composition proof: components via a hub caterpillar, hanging blocks
/// spliced next to the leaves of edges chosen at the shared cut vertex.
/// Width = max input width (>= 2 where bridge gadgets appear).
BranchDecomposition compose_blocks(
    const Graph& g,
    const std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>>& per_block);

/// Extends block decompositions of g - x to all of g by splicing per-vertex
/// caterpillars of apex-incident edges; width <= max input width + |x|.
BranchDecomposition extend_over_apex(
    const Graph& g, const std::vector<VertexId>& x,
    const std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>>& per_block);

/// Standard conversion: bag of a node = union of incident middle sets;
/// resulting width <= floor(3/2 * width(bd)) - 1 for non-acyclic g.
/// Acyclic g gets a direct width-<=1 tree-decomposition instead.
TreeDecomposition bd_to_tree_decomposition(const BranchDecomposition& bd, const Graph& g);

/// Renames leaf labels: new label = edge_map[old label].
BranchDecomposition relabel_leaves(const BranchDecomposition& bd, const std::vector<EdgeId>& edge_map);

/// Incremental builder used by every construction in the blocks/apex/vortex
/// proofs. Node ids are stable; freeze() checks ternary-ness.
class BdBuilder {
 public:
  BdBuilder() = default;
  explicit BdBuilder(const BranchDecomposition& bd);

  int add_leaf(EdgeId e);
  int add_internal();
  void connect(int a, int b);
  /// Splits the unique tree edge at `leaf` and returns the new middle node;
  /// for an isolated node, returns the node itself.
  int splice_point_at(int node);
  /// Splice point next to the leaf holding the smallest edge id (the
  /// deterministic stand-in for the proofs' "subdivide an arbitrary edge").
  int splice_point_least_leaf();
  /// Merges `other`, returning the id offset added to its nodes.
  int absorb(const BdBuilder& other);
  int leaf_node(EdgeId e) const;

  int node_count() const { return static_cast<int>(adj_.size()); }
  int degree(int node) const { return static_cast<int>(adj_[node].size()); }
  BranchDecomposition freeze() const;

  /// Left-leaning caterpillar over the given attachment points (existing
  /// node ids, each of degree < 3); no-op for a single point.
  void caterpillar_join(const std::vector<int>& points);

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<EdgeId> leaf_edge_;
  void disconnect(int a, int b);
};

}  // namespace ratnest
