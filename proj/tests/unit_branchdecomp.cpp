#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "ratnest/branchdecomp.hpp"
#include "ratnest/graph.hpp"
#include "ratnest/oracle.hpp"
#include "ratnest/util.hpp"

using namespace ratnest;

namespace {

BranchDecomposition star_over(const std::vector<EdgeId>& edges) {
  BdBuilder b;
  std::vector<int> leaves;
  for (EdgeId e : edges) leaves.push_back(b.add_leaf(e));
  b.caterpillar_join(leaves);
  return b.freeze();
}

// Leaf edges on the `from` side of tree edge (from, avoid).
std::vector<EdgeId> side_of(const BranchDecomposition& bd, int from, int avoid) {
  std::vector<EdgeId> out;
  std::vector<int> stack{from};
  std::vector<char> seen(bd.node_count(), 0);
  seen[from] = seen[avoid] = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    if (bd.is_leaf(t)) out.push_back(bd.leaf_edge[t]);
    for (int u : bd.adj[t])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return out;
}

Graph cycle(int n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

// Block decompositions of g (or of the sub-id graph `local` mapped back into
// g's ids via `to_g`), each computed by the exhaustive solver.
std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>> oracle_blocks(
    const Graph& local, const std::vector<EdgeId>& to_g) {
  std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>> out;
  for (const auto& blk : blocks(local).blocks) {
    InducedSubgraph part = induced_subgraph(local, blk);
    BranchDecomposition bd = exact_bw_bruteforce(part.graph).optimal_bd;
    std::vector<EdgeId> ids;
    for (EdgeId e : part.edge_map) ids.push_back(to_g.empty() ? e : to_g[e]);
    std::vector<EdgeId> map_up = part.edge_map;
    if (!to_g.empty())
      for (EdgeId& e : map_up) e = to_g[e];
    out.emplace_back(ids, relabel_leaves(bd, map_up));
  }
  return out;
}

}  // namespace

TEST_CASE("single edge decomposes as one node of width zero") {
  Graph g(2, {{0, 1}});
  BranchDecomposition bd = star_forest_bd(g);
  CHECK(bd.node_count() == 1);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 0);
}

TEST_CASE("edgeless graph decomposes as the empty tree") {
  Graph g(3, {});
  BranchDecomposition bd = star_forest_bd(g);
  CHECK(bd.node_count() == 0);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 0);
}

TEST_CASE("stars have width one") {
  Graph g(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(is_union_of_stars(g));
  BranchDecomposition bd = star_forest_bd(g);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 1);
}

TEST_CASE("two disjoint edges stay width zero") {
  Graph g(4, {{0, 1}, {2, 3}});
  CHECK(is_union_of_stars(g));
  BranchDecomposition bd = star_forest_bd(g);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 0);
}

TEST_CASE("union of stars detection") {
  CHECK_FALSE(is_union_of_stars(cycle(3)));
  CHECK_FALSE(is_union_of_stars(Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
  CHECK(is_union_of_stars(Graph(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}})));
}

TEST_CASE("triangle star tree has width two") {
  Graph g = cycle(3);
  BranchDecomposition bd = star_over({0, 1, 2});
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 2);
  auto mids = middle_sets(bd, g);
  for (const auto& ms : mids) CHECK(ms.size() == 2);
}

TEST_CASE("middle sets agree from both sides of every tree edge") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.range(2, 7);
    std::set<std::pair<VertexId, VertexId>> used;
    std::vector<std::pair<VertexId, VertexId>> edges;
    int m = rng.range(1, std::min(9, n * (n - 1) / 2));
    while (static_cast<int>(edges.size()) < m) {
      VertexId u = rng.range(0, n - 1);
      VertexId v = rng.range(0, n - 1);
      if (u != v && used.insert(std::minmax(u, v)).second)
        edges.push_back(std::minmax(u, v));
    }
    Graph g(n, edges);
    BranchDecomposition bd = exact_bw_bruteforce(g).optimal_bd;
    auto tedges = bd.tree_edges();
    auto mids = middle_sets(bd, g);
    for (size_t i = 0; i < tedges.size(); ++i) {
      auto [a, b] = tedges[i];
      CHECK(boundary(g, side_of(bd, a, b)) == mids[i]);
      CHECK(boundary(g, side_of(bd, b, a)) == mids[i]);
    }
  }
}

TEST_CASE("validate rejects malformed trees") {
  Graph g = cycle(3);
  BranchDecomposition bd = star_over({0, 1, 2});
  SUBCASE("repeated leaf edge") {
    bd.leaf_edge[0] = bd.leaf_edge[1];
    CHECK(validate(bd, g).has_value());
  }
  SUBCASE("unknown edge id") {
    bd.leaf_edge[0] = 9;
    CHECK(validate(bd, g).has_value());
  }
  SUBCASE("internal degree != 3") {
    bd.adj.push_back({0});
    bd.adj[0].push_back(bd.node_count() - 1);
    bd.leaf_edge.push_back(-1);
    CHECK(validate(bd, g).has_value());
  }
  SUBCASE("cycle in the tree") {
    bd.adj[0].push_back(1);
    bd.adj[1].push_back(0);
    CHECK(validate(bd, g).has_value());
  }
}

TEST_CASE("two triangles sharing a vertex compose to width two") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  auto per_block = oracle_blocks(g, {});
  BranchDecomposition bd = compose_blocks(g, per_block);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 2);
}

TEST_CASE("a path composes from its bridges at width two") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  auto per_block = oracle_blocks(g, {});
  BranchDecomposition bd = compose_blocks(g, per_block);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 2);
  CHECK(exact_bw_bruteforce(g).exact_bw == 2);
}

TEST_CASE("composition never exceeds the larger of two and the block widths") {
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    // A chain of small blocks glued at cut vertices.
    std::vector<std::pair<VertexId, VertexId>> edges;
    int n = 1;
    int hops = rng.range(1, 4);
    for (int h = 0; h < hops; ++h) {
      int kind = static_cast<int>(rng.below(3));
      int base = n - 1;  // current cut vertex
      if (kind == 0) {  // bridge
        edges.emplace_back(base, n);
        n += 1;
      } else if (kind == 1) {  // triangle
        edges.emplace_back(base, n);
        edges.emplace_back(n, n + 1);
        edges.emplace_back(n + 1, base);
        n += 2;
      } else {  // four-cycle with a chord
        edges.emplace_back(base, n);
        edges.emplace_back(n, n + 1);
        edges.emplace_back(n + 1, n + 2);
        edges.emplace_back(n + 2, base);
        edges.emplace_back(base, n + 1);
        n += 3;
      }
    }
    Graph g(n, edges);
    auto per_block = oracle_blocks(g, {});
    BranchDecomposition bd = compose_blocks(g, per_block);
    CHECK(validate(bd, g) == std::nullopt);
    int block_widest = 0;
    for (const auto& blk : blocks(g).blocks) {
      InducedSubgraph part = induced_subgraph(g, blk);
      block_widest = std::max(block_widest, exact_bw_bruteforce(part.graph).exact_bw);
    }
    CHECK(width(bd, g) <= std::max(2, block_widest));
    CHECK(width(bd, g) >= exact_bw_branch_and_bound(g).exact_bw);
  }
}

TEST_CASE("apex extension over a wheel") {
  // Hub 5 over a five-cycle; removing the hub leaves one cyclic block.
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) edges.emplace_back(i, 5);
  Graph g(6, edges);
  InducedSubgraph sub = induced_subgraph(g, {0, 1, 2, 3, 4});
  auto per_block = oracle_blocks(sub.graph, sub.edge_map);
  BranchDecomposition bd = extend_over_apex(g, {5}, per_block);
  CHECK(validate(bd, g) == std::nullopt);
  int core_width = exact_bw_bruteforce(sub.graph).exact_bw;
  CHECK(width(bd, g) <= std::max(core_width, 1) + 1);
  CHECK(width(bd, g) >= exact_bw_bruteforce(g).exact_bw);
}

TEST_CASE("apex extension bound holds on random planted instances") {
  Rng rng(910);
  for (int trial = 0; trial < 40; ++trial) {
    // Core: a cycle, possibly with pendants; apexes wired to random vertices.
    int r = rng.range(3, 5);
    int pendants = rng.range(0, 2);
    int core_n = r + pendants;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < r; ++i) edges.emplace_back(i, (i + 1) % r);
    for (int p = 0; p < pendants; ++p) edges.emplace_back(rng.range(0, r - 1), r + p);
    int c = rng.range(1, 2);
    int n = core_n + c;
    std::set<std::pair<VertexId, VertexId>> used(edges.begin(), edges.end());
    for (int a = 0; a < c; ++a) {
      VertexId apex = core_n + a;
      int fan = rng.range(1, 3);
      for (int j = 0; j < fan; ++j) {
        VertexId t = rng.range(0, core_n - 1);
        auto key = std::minmax(t, apex);
        if (used.insert(key).second) edges.push_back(key);
      }
    }
    Graph g(n, edges);
    std::vector<VertexId> x;
    for (int a = 0; a < c; ++a) x.push_back(core_n + a);
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < core_n; ++v) keep.push_back(v);
    InducedSubgraph sub = induced_subgraph(g, keep);
    auto per_block = oracle_blocks(sub.graph, sub.edge_map);
    BranchDecomposition bd = extend_over_apex(g, x, per_block);
    CHECK(validate(bd, g) == std::nullopt);
    int core_width = 0;
    for (const auto& blk : blocks(sub.graph).blocks) {
      InducedSubgraph part = induced_subgraph(sub.graph, blk);
      core_width = std::max(core_width, exact_bw_bruteforce(part.graph).exact_bw);
    }
    CHECK(width(bd, g) <= std::max(core_width, 1) + c);
  }
}

TEST_CASE("apex extension with an empty apex set is plain composition") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  auto per_block = oracle_blocks(g, {});
  BranchDecomposition bd = extend_over_apex(g, {}, per_block);
  CHECK(validate(bd, g) == std::nullopt);
  CHECK(width(bd, g) == 2);
}

TEST_CASE("tree decomposition of a triangle decomposition") {
  Graph g = cycle(3);
  BranchDecomposition bd = star_over({0, 1, 2});
  TreeDecomposition td = bd_to_tree_decomposition(bd, g);
  CHECK(validate_tree_decomposition(td, g) == std::nullopt);
  CHECK(td.width() <= 3 * width(bd, g) / 2 - 1);
}

TEST_CASE("tree decompositions of forests have width at most one") {
  Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  BranchDecomposition bd = exact_bw_bruteforce(g).optimal_bd;
  TreeDecomposition td = bd_to_tree_decomposition(bd, g);
  CHECK(validate_tree_decomposition(td, g) == std::nullopt);
  CHECK(td.width() <= 1);
}

TEST_CASE("tree decomposition width bound on random graphs") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.range(3, 7);
    std::set<std::pair<VertexId, VertexId>> used;
    std::vector<std::pair<VertexId, VertexId>> edges;
    int m = rng.range(3, std::min(10, n * (n - 1) / 2));
    while (static_cast<int>(edges.size()) < m) {
      VertexId u = rng.range(0, n - 1);
      VertexId v = rng.range(0, n - 1);
      if (u != v && used.insert(std::minmax(u, v)).second)
        edges.push_back(std::minmax(u, v));
    }
    Graph g(n, edges);
    bool acyclic = g.edge_count() == g.vertex_count() - static_cast<int>(components(g).size());
    if (acyclic) continue;
    BranchDecomposition bd = exact_bw_bruteforce(g).optimal_bd;
    int w = width(bd, g);
    TreeDecomposition td = bd_to_tree_decomposition(bd, g);
    CHECK(validate_tree_decomposition(td, g) == std::nullopt);
    CHECK(td.width() <= std::max(1, 3 * w / 2 - 1));
  }
}

TEST_CASE("relabeling maps leaves through the edge map") {
  BranchDecomposition bd = star_over({0, 1, 2});
  BranchDecomposition out = relabel_leaves(bd, {5, 3, 7});
  std::vector<EdgeId> have;
  for (int t = 0; t < out.node_count(); ++t)
    if (out.is_leaf(t)) have.push_back(out.leaf_edge[t]);
  std::sort(have.begin(), have.end());
  CHECK(have == std::vector<EdgeId>{3, 5, 7});
  CHECK_THROWS_AS(relabel_leaves(bd, {5, 3}), InputError);
}

TEST_CASE("compose rejects edge sets that are not blocks") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  BranchDecomposition one;
  one.adj = {{}};
  one.leaf_edge = {0};
  std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>> bad{{{0, 1}, one}};
  CHECK_THROWS_AS(compose_blocks(g, bad), InputError);
}
