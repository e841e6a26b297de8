#pragma once

// Graph and embedding fixtures shared by the test binaries.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "ratnest/graph.hpp"
#include "ratnest/surface.hpp"
#include "ratnest/util.hpp"

namespace fixtures {

using namespace ratnest;

inline Graph cycle(int n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

inline Graph complete(int n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

inline Graph grid(int rows, int cols) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph(rows * cols, edges);
}

inline Graph random_simple(Rng& rng, int n, int m) {
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<std::pair<VertexId, VertexId>> edges;
  int guard = 0;
  while (static_cast<int>(edges.size()) < m && ++guard < 100 * (m + 1)) {
    VertexId u = rng.range(0, n - 1);
    VertexId v = rng.range(0, n - 1);
    if (u != v && used.insert(std::minmax(u, v)).second)
      edges.push_back(std::minmax(u, v));
  }
  return Graph(n, edges);
}

// r x r grid quadrangulating the torus: rotation north, east, south, west at
// every vertex, all signs positive.
inline EmbeddedGraph torus_grid(int r) {
  auto id = [&](int row, int col) { return ((row % r) + r) % r * r + ((col % r) + r) % r; };
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int row = 0; row < r; ++row)
    for (int col = 0; col < r; ++col)
      for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
        std::pair<VertexId, VertexId> key = std::minmax(id(row, col), id(row + dr, col + dc));
        if (used.insert(key).second) edges.push_back(key);
      }
  Graph g(r * r, edges);
  RotationSystem rs;
  rs.graph = g;
  rs.sign.assign(g.edge_count(), 1);
  rs.rotation.assign(g.vertex_count(), {});
  for (int row = 0; row < r; ++row)
    for (int col = 0; col < r; ++col) {
      VertexId v = id(row, col);
      for (auto [dr, dc] : {std::pair{-1, 0}, std::pair{0, 1}, std::pair{1, 0}, std::pair{0, -1}})
        rs.rotation[v].push_back(g.find_edge(v, id(row + dr, col + dc)));
    }
  return embed(rs);
}

// The face whose walk touches exactly the given vertex set, or -1.
inline int face_of_quad(const EmbeddedGraph& e, std::vector<VertexId> want) {
  std::sort(want.begin(), want.end());
  for (int f = 0; f < e.faces.count(); ++f) {
    std::vector<VertexId> have;
    for (auto [v, edge] : e.faces.faces[f]) have.push_back(v);
    std::sort(have.begin(), have.end());
    have.erase(std::unique(have.begin(), have.end()), have.end());
    if (have == want) return f;
  }
  return -1;
}

// Triangle with one orientation-reversing edge: the projective plane.
inline EmbeddedGraph projective_triangle() {
  RotationSystem r;
  r.graph = cycle(3);
  r.rotation = {{0, 2}, {0, 1}, {1, 2}};
  r.sign = {1, -1, 1};
  return embed(r);
}

}  // namespace fixtures
