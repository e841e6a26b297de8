#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratnest/surface.hpp"

namespace ratnest {

/// Closed curve on the surface meeting the graph only in vertices, recorded as
/// the alternating cycle v_0, f_0, v_1, f_1, ..., v_{l-1}, f_{l-1}: the curve
/// leaves v_i through face f_i and enters v_{i+1} from it. Vertices are
/// pairwise distinct and so are faces.
struct Noose {
  std::vector<VertexId> vertices;
  std::vector<int> faces;
  int length() const { return static_cast<int>(vertices.size()); }
};

/// Vertex-face incidence graph of an embedding, with parallel incidences
/// collapsed to simple edges. Radial ids below primal_count are the original
/// vertices; the rest are faces.
struct RadialGraph {
  EmbeddedGraph embedding;
  int primal_count = 0;

  bool is_face_node(int rid) const { return rid >= primal_count; }
  int face_of_node(int rid) const { return rid - primal_count; }
  int node_of_vertex(VertexId v) const { return v; }
  int node_of_face(int f) const { return primal_count + f; }
};

RadialGraph radial_graph(const EmbeddedGraph& e);

std::optional<std::string> validate_noose(const EmbeddedGraph& e, const Noose& noose);

/// True iff every curve realizing the noose bounds a disk. Decided by cutting
/// the surface combinatorially along each corner realization and checking the
/// resulting pieces' Euler characteristics.
bool is_contractible(const EmbeddedGraph& e, const Noose& noose);

/// A non-contractible noose through the fewest vertices, or nullopt when the
/// embedding is in the sphere (every noose contractible). Ties broken by
/// lexicographic vertex-id sequence, then face-id sequence.
std::optional<Noose> shortest_noncontractible_noose(const EmbeddedGraph& e);

/// Lexicographically least non-contractible noose of exactly the given
/// length, by exhaustive enumeration. Canonical tie-break of the search and
/// the workhorse of the brute-force representativity check.
std::optional<Noose> least_noncontractible_of_length(const EmbeddedGraph& e, int length);

struct CutPiece {
  EmbeddedGraph embedding;
  std::vector<VertexId> vertex_map;  // piece vertex -> original vertex
  std::vector<EdgeId> edge_map;      // piece edge -> original edge
};

/// Deletes the noose's vertices and returns the components of the remainder
/// with induced rotations; planar components whose induced rotation still has
/// positive genus are re-embedded into the sphere. Total genus strictly
/// decreases; a contractible noose is rejected.
std::vector<CutPiece> cut_along_noose(const EmbeddedGraph& e, const Noose& noose);

}  // namespace ratnest
