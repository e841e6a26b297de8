#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ratnest/util.hpp"

namespace ratnest {

using VertexId = int;
using EdgeId = int;

/// Simple undirected graph with dense non-negative vertex and edge ids.
/// Immutable after construction; all downstream determinism keys off the ids.
class Graph {
 public:
  Graph() : Graph(1, {}) {}
  Graph(int n, std::vector<std::pair<VertexId, VertexId>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(ends_.size()); }

  std::pair<VertexId, VertexId> ends(EdgeId e) const { return ends_[check_edge(e)]; }
  VertexId other_end(EdgeId e, VertexId v) const;
  bool is_end(EdgeId e, VertexId v) const;

  /// Incident edge ids, sorted ascending.
  const std::vector<EdgeId>& incident(VertexId v) const { return inc_[check_vertex(v)]; }
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }

  /// Edge id joining u and v, or -1.
  EdgeId find_edge(VertexId u, VertexId v) const;

  VertexId check_vertex(VertexId v) const;
  EdgeId check_edge(EdgeId e) const;

 private:
  int n_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::vector<EdgeId>> inc_;
};

/// A side of an edge cut together with its boundary ∂(S).
struct EdgeCut {
  std::vector<EdgeId> side;
  std::vector<VertexId> boundary;
};

/// Vertices incident to an edge inside s and an edge outside s.
std::vector<VertexId> boundary(const Graph& g, const std::vector<EdgeId>& s);

struct BlockForest {
  /// Each block as a sorted vertex set; blocks sorted by smallest contained vertex.
  std::vector<std::vector<VertexId>> blocks;
  /// Edge ids of each block, parallel to `blocks`, sorted ascending.
  std::vector<std::vector<EdgeId>> block_edges;
  std::vector<VertexId> cut_vertices;  // sorted
  std::vector<EdgeId> bridges;        // sorted
};

BlockForest blocks(const Graph& g);

/// Connected components as sorted vertex-id lists, sorted by smallest vertex.
std::vector<std::vector<VertexId>> components(const Graph& g);

/// Induced subgraph on `keep` (sorted vertex ids). Returns the graph plus
/// maps back to the original vertex/edge ids (new id -> old id).
struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep);

Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

}  // namespace ratnest
