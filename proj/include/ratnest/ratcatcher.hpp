#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratnest/branchdecomp.hpp"
#include "ratnest/noose.hpp"

namespace ratnest {

/// Medial graph of a sphere embedding: one vertex per original edge, one
/// medial edge per corner (joining the two original edges spanning that
/// corner). Parallel medial edges are the norm (any two edges bounding two
/// common faces get a double join), so the embedding is carried as an
/// explicit rotation over medial edge ids instead of a Graph.
struct MedialStructure {
  int vertex_count = 0;
  /// Medial edge id = corner id of the original embedding.
  std::vector<std::pair<int, int>> medial_ends;
  /// Cyclic order of the four incident medial edges around each vertex.
  std::vector<std::array<int, 4>> rotation;
  /// Back-map medial vertex -> original edge (the identity by construction,
  /// kept explicit so downstream code never relies on that coincidence).
  std::vector<EdgeId> original_edge;
  int face_count = 0;

  int medial_edge_count() const { return static_cast<int>(medial_ends.size()); }
};

/// Standard medial construction from the rotation system. Requires a sphere
/// embedding of a connected graph with no degree-one vertices and at least
/// one edge.
MedialStructure medial_graph(const EmbeddedGraph& e);

/// True iff every connected component of the embedded graph has branchwidth
/// at most k, decided by the ratcatcher game on the vertex-face incidence
/// structure (equivalently: carving-width <= 2k of the medial graph).
/// Requires genus 0 and no degree-one vertices; throws InputError for k <= 0.
bool decide_planar_bw(const EmbeddedGraph& e, int k);

/// Branch decomposition whose every tree edge carries a noose realizing its
/// middle set on the sphere.
struct SphereCutDecomposition {
  BranchDecomposition bd;
  /// Keyed by tree edge (a, b) with a < b, as listed by bd.tree_edges().
  std::map<std::pair<int, int>, Noose> nooses;
};

/// Optimal sphere-cut decomposition: width exactly the branchwidth. Requires
/// a sphere embedding of a connected bridgeless graph with minimum degree
/// two (a bridge's own leaf edge would need a noose visiting one face twice,
/// which the noose axioms forbid).
SphereCutDecomposition sphere_cut_decomposition(const EmbeddedGraph& e);

/// First violated invariant (tree shape, noose validity, vertex set vs
/// middle set, single crossing per face), or nullopt when valid.
std::optional<std::string> validate_sphere_cut(const SphereCutDecomposition& scd,
                                               const EmbeddedGraph& e);

}  // namespace ratnest
