#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratnest/graph.hpp"

namespace ratnest {

/// Combinatorial embedding: clockwise edge order around each vertex plus a
/// per-edge orientation sign (-1 marks orientation-reversing edges, so
/// non-orientable surfaces are representable).
struct RotationSystem {
  Graph graph;
  std::vector<std::vector<EdgeId>> rotation;
  std::vector<int> sign;
};

/// One closed face walk: (vertex, edge) steps, each step leaving the vertex
/// along the edge.
using FaceWalk = std::vector<std::pair<VertexId, EdgeId>>;

struct FaceSet {
  std::vector<FaceWalk> faces;
  int count() const { return static_cast<int>(faces.size()); }
};

struct EmbeddedGraph {
  RotationSystem rotation;
  FaceSet faces;
  int genus = 0;

  // Derived incidence caches filled by embed().
  // Corner c of vertex v spans rotation positions i -> i+1; corner ids are
  // rotation positions under corner_offset[v].
  std::vector<int> corner_offset;        // per vertex, prefix sums of degree
  std::vector<int> face_of_corner;       // per corner id
  std::vector<std::array<int, 2>> edge_faces;  // per edge, face on each side
  // Per face, per walk position: the corner the walk occupies at that visit.
  std::vector<std::vector<int>> walk_corners;

  const Graph& graph() const { return rotation.graph; }
  int corner_count() const { return static_cast<int>(face_of_corner.size()); }
  int corner_id(VertexId v, int pos) const { return corner_offset[v] + pos; }
};

std::optional<std::string> validate_rotation(const RotationSystem& r);

/// Face walks by signed face tracing, deterministically ordered (each face is
/// reported from its lexicographically least traversal state).
FaceSet trace_faces(const RotationSystem& r);

/// Faces plus genus plus incidence caches; throws InputError on an invalid
/// rotation system, ContractViolation if any component's Euler count goes
/// negative.
EmbeddedGraph embed(const RotationSystem& r);

int embedding_genus(const EmbeddedGraph& e);

/// Equivalent rotation system with every spanning-forest edge sign +1
/// (vertex resigning); orientable embeddings end up all-positive.
RotationSystem normalize_signs(const RotationSystem& r);

/// Rotation system of g with every sign +1 and the identity-ish rotation, for
/// building planar fixtures by hand.
RotationSystem plain_rotation(const Graph& g);

}  // namespace ratnest
