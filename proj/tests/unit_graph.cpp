#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "ratnest/graph.hpp"
#include "ratnest/util.hpp"

using namespace ratnest;

namespace {

Graph make(int n, std::vector<std::pair<VertexId, VertexId>> edges) {
  return Graph(n, std::move(edges));
}

Graph random_graph(Rng& rng, int n, int m) {
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<std::pair<VertexId, VertexId>> edges;
  int guard = 0;
  while (static_cast<int>(edges.size()) < m && ++guard < 50 * m) {
    VertexId u = rng.range(0, n - 1);
    VertexId v = rng.range(0, n - 1);
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (used.insert(key).second) edges.push_back(key);
  }
  return Graph(n, edges);
}

}  // namespace

TEST_CASE("construction rejects loops and parallel edges") {
  CHECK_THROWS_AS(make(3, {{0, 0}}), InputError);
  CHECK_THROWS_AS(make(3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(make(2, {{0, 2}}), InputError);
  CHECK_THROWS_AS(Graph(0, {}), InputError);
}

TEST_CASE("incident lists are sorted and degrees add up") {
  Graph g = make(4, {{2, 3}, {0, 1}, {1, 2}, {0, 2}});
  int total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    CHECK(std::is_sorted(inc.begin(), inc.end()));
    total += g.degree(v);
  }
  CHECK(total == 2 * g.edge_count());
  CHECK(g.find_edge(3, 2) == 0);
  CHECK(g.find_edge(0, 3) == -1);
}

TEST_CASE("boundary of a triangle edge is both endpoints") {
  Graph g = make(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(boundary(g, {0}) == std::vector<VertexId>{0, 1});
}

TEST_CASE("boundary of the full edge set is empty") {
  Graph g = make(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(boundary(g, {0, 1, 2}).empty());
}

TEST_CASE("boundary on a path keeps only the shared vertex") {
  Graph g = make(3, {{0, 1}, {1, 2}});
  CHECK(boundary(g, {0}) == std::vector<VertexId>{1});
}

TEST_CASE("boundary rejects unknown edge ids") {
  Graph g = make(3, {{0, 1}});
  CHECK_THROWS_AS(boundary(g, {5}), InputError);
}

TEST_CASE("boundary of a side equals boundary of its complement") {
  Rng rng(20260822);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.range(2, 9);
    Graph g = random_graph(rng, n, rng.range(0, n * (n - 1) / 2));
    std::vector<EdgeId> side;
    std::vector<EdgeId> rest;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      (rng.below(2) ? side : rest).push_back(e);
    CHECK(boundary(g, side) == boundary(g, rest));
  }
}

TEST_CASE("blocks of a triangle") {
  Graph g = make(3, {{0, 1}, {1, 2}, {2, 0}});
  BlockForest bf = blocks(g);
  REQUIRE(bf.blocks.size() == 1);
  CHECK(bf.blocks[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(bf.cut_vertices.empty());
  CHECK(bf.bridges.empty());
}

TEST_CASE("blocks of two triangles sharing a vertex") {
  Graph g = make(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  BlockForest bf = blocks(g);
  REQUIRE(bf.blocks.size() == 2);
  CHECK(bf.blocks[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(bf.blocks[1] == std::vector<VertexId>{2, 3, 4});
  CHECK(bf.cut_vertices == std::vector<VertexId>{2});
  CHECK(bf.bridges.empty());
}

TEST_CASE("blocks of a path are its bridges") {
  Graph g = make(4, {{0, 1}, {1, 2}, {2, 3}});
  BlockForest bf = blocks(g);
  CHECK(bf.blocks.size() == 3);
  CHECK(bf.bridges == std::vector<EdgeId>{0, 1, 2});
  CHECK(bf.cut_vertices == std::vector<VertexId>{1, 2});
}

TEST_CASE("block edges partition the edge set and cut vertices sit in two blocks") {
  Rng rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    int n = rng.range(1, 10);
    Graph g = random_graph(rng, n, n <= 1 ? 0 : rng.range(0, n * (n - 1) / 2));
    BlockForest bf = blocks(g);
    std::vector<EdgeId> all;
    for (const auto& be : bf.block_edges) all.insert(all.end(), be.begin(), be.end());
    std::sort(all.begin(), all.end());
    std::vector<EdgeId> expect(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) expect[e] = e;
    CHECK(all == expect);
    std::vector<int> hits(g.vertex_count(), 0);
    for (const auto& blk : bf.blocks)
      for (VertexId v : blk) ++hits[v];
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      bool cut = std::binary_search(bf.cut_vertices.begin(), bf.cut_vertices.end(), v);
      CHECK(cut == (hits[v] >= 2));
    }
  }
}

TEST_CASE("parse a triangle") {
  Graph g = parse_graph("p graph 3 3\ne 1 2\ne 2 3\ne 3 1\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.find_edge(0, 1) == 0);
  CHECK(g.find_edge(2, 0) == 2);
}

TEST_CASE("parse a single vertex with no edges") {
  Graph g = parse_graph("p graph 1 0\n");
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("parse rejects loops with the offending line") {
  try {
    parse_graph("p graph 2 1\ne 1 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& pe) {
    CHECK(pe.line == 2);
  }
}

TEST_CASE("parse rejects duplicate edges") {
  CHECK_THROWS_AS(parse_graph("p graph 2 2\ne 1 2\ne 2 1\n"), ParseError);
}

TEST_CASE("parse rejects malformed lines and bad counts") {
  CHECK_THROWS_AS(parse_graph("p graph 2 1\nx 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p graph 2 2\ne 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("e 1 2\n"), ParseError);
}

TEST_CASE("comments are ignored and round trips are idempotent") {
  std::string text = "c fixture\np graph 4 3\ne 1 2\nc middle\ne 2 3\ne 3 4\n";
  Graph g = parse_graph(text);
  std::string canon = serialize_graph(g);
  CHECK(canon == serialize_graph(parse_graph(canon)));
  Graph h = parse_graph(canon);
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(h.edge_count() == g.edge_count());
}

TEST_CASE("components are sorted by least vertex") {
  Graph g = make(6, {{4, 5}, {0, 1}});
  auto comps = components(g);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0] == std::vector<VertexId>{0, 1});
  CHECK(comps[1] == std::vector<VertexId>{2});
  CHECK(comps[2] == std::vector<VertexId>{3});
  CHECK(comps[3] == std::vector<VertexId>{4, 5});
}

TEST_CASE("induced subgraph keeps exactly the inside edges with back maps") {
  Graph g = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}});
  InducedSubgraph sub = induced_subgraph(g, {1, 2, 3});
  CHECK(sub.graph.vertex_count() == 3);
  CHECK(sub.graph.edge_count() == 3);
  for (EdgeId e = 0; e < sub.graph.edge_count(); ++e) {
    auto [u, v] = sub.graph.ends(e);
    auto [ou, ov] = g.ends(sub.edge_map[e]);
    CHECK(std::minmax(sub.vertex_map[u], sub.vertex_map[v]) == std::minmax(ou, ov));
  }
}
