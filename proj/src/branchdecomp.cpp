#include "ratnest/branchdecomp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ratnest/util.hpp"

namespace ratnest {

std::vector<std::pair<int, int>> BranchDecomposition::tree_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < node_count(); ++a)
    for (int b : adj[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()));
  return w == 0 ? 0 : w - 1;
}

namespace {

// Leaf edge ids reachable from `start` without crossing the tree edge (start, avoid).
std::vector<EdgeId> side_edges(const BranchDecomposition& bd, int start, int avoid) {
  std::vector<EdgeId> out;
  std::vector<int> stack{start};
  std::vector<char> seen(bd.node_count(), 0);
  seen[start] = 1;
  seen[avoid] = 1;
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

std::optional<std::string> check_tree_shape(const BranchDecomposition& bd) {
  int n = bd.node_count();
  if (static_cast<int>(bd.leaf_edge.size()) != n) return "size mismatch between adj and leaf_edge";
  long edges2 = 0;
  for (int a = 0; a < n; ++a) {
    for (int b : bd.adj[a]) {
      if (b < 0 || b >= n) return "adjacency out of range";
      if (b == a) return "self-loop in tree";
      if (std::count(bd.adj[a].begin(), bd.adj[a].end(), b) > 1) return "duplicate tree edge";
      if (std::count(bd.adj[b].begin(), bd.adj[b].end(), a) != 1) return "asymmetric adjacency";
    }
    edges2 += static_cast<long>(bd.adj[a].size());
  }
  if (n == 0) return std::nullopt;
  if (edges2 != 2L * (n - 1)) return "tree edge count: cyclic tree";
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int u : bd.adj[t])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  if (reached != n) return "disconnected tree";
  for (int a = 0; a < n; ++a) {
    int deg = static_cast<int>(bd.adj[a].size());
    if (bd.is_leaf(a)) {
      if (deg > 1) return "leaf with degree > 1";
      if (deg == 0 && n > 1) return "isolated leaf in multi-node tree";
    } else {
      if (deg != 3) return "not ternary: internal node of degree " + std::to_string(deg);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_leaf_set(const BranchDecomposition& bd,
                                          const std::vector<EdgeId>& expected) {
  std::vector<EdgeId> have;
  for (int t = 0; t < bd.node_count(); ++t)
    if (bd.is_leaf(t)) have.push_back(bd.leaf_edge[t]);
  std::sort(have.begin(), have.end());
  if (std::adjacent_find(have.begin(), have.end()) != have.end())
    return "bijection: repeated leaf edge id";
  std::vector<EdgeId> want = expected;
  std::sort(want.begin(), want.end());
  if (have != want) return "bijection: leaf edges do not match the decomposed edge set";
  return std::nullopt;
}

std::vector<EdgeId> all_edge_ids(const Graph& g) {
  std::vector<EdgeId> ids(g.edge_count());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

}  // namespace

std::vector<std::vector<VertexId>> middle_sets(const BranchDecomposition& bd, const Graph& g) {
  std::vector<std::vector<VertexId>> out;
  for (auto [a, b] : bd.tree_edges()) out.push_back(boundary(g, side_edges(bd, a, b)));
  return out;
}

int width(const BranchDecomposition& bd, const Graph& g) {
  if (auto diag = validate(bd, g)) throw InputError("width: " + *diag);
  int w = 0;
  for (const auto& ms : middle_sets(bd, g)) w = std::max(w, static_cast<int>(ms.size()));
  return w;
}

std::optional<std::string> validate(const BranchDecomposition& bd, const Graph& g) {
  if (auto diag = check_tree_shape(bd)) return diag;
  for (int t = 0; t < bd.node_count(); ++t)
    if (bd.is_leaf(t) && bd.leaf_edge[t] >= g.edge_count())
      return "bijection: leaf mapped to unknown edge " + std::to_string(bd.leaf_edge[t]);
  return check_leaf_set(bd, all_edge_ids(g));
}

std::optional<std::string> validate_tree_decomposition(const TreeDecomposition& td, const Graph& g) {
  int n = td.node_count();
  if (static_cast<int>(td.bags.size()) != n) return "size mismatch between adj and bags";
  if (n == 0) return g.vertex_count() == 0 ? std::nullopt : std::optional<std::string>("no bags");
  long edges2 = 0;
  for (int a = 0; a < n; ++a) {
    for (int b : td.adj[a]) {
      if (b < 0 || b >= n || b == a) return "bad tree adjacency";
      if (std::count(td.adj[b].begin(), td.adj[b].end(), a) != 1) return "asymmetric adjacency";
    }
    edges2 += static_cast<long>(td.adj[a].size());
  }
  if (edges2 != 2L * (n - 1)) return "tree edge count";
  std::vector<char> bag_of(g.vertex_count(), 0);
  for (const auto& bag : td.bags)
    for (VertexId v : bag) {
      if (v < 0 || v >= g.vertex_count()) return "bag vertex out of range";
      bag_of[v] = 1;
    }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!bag_of[v]) return "vertex " + std::to_string(v) + " in no bag";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(e);
    bool covered = false;
    for (const auto& bag : td.bags) {
      if (std::find(bag.begin(), bag.end(), u) != bag.end() &&
          std::find(bag.begin(), bag.end(), v) != bag.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) return "edge " + std::to_string(e) + " covered by no bag";
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int total = 0, first = -1;
    for (int t = 0; t < n; ++t)
      if (std::find(td.bags[t].begin(), td.bags[t].end(), v) != td.bags[t].end()) {
        ++total;
        if (first < 0) first = t;
      }
    // BFS through occupied nodes only.
    std::vector<char> seen(n, 0);
    std::vector<int> stack{first};
    seen[first] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int u : td.adj[t]) {
        if (seen[u]) continue;
        if (std::find(td.bags[u].begin(), td.bags[u].end(), v) == td.bags[u].end()) continue;
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
    if (reached != total)
      return "occupancy of vertex " + std::to_string(v) + " not connected";
  }
  return std::nullopt;
}

bool is_union_of_stars(const Graph& g) {
  for (const auto& comp : components(g)) {
    int big = 0;
    for (VertexId v : comp)
      if (g.degree(v) >= 2) ++big;
    if (big > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Builder

BdBuilder::BdBuilder(const BranchDecomposition& bd) : adj_(bd.adj), leaf_edge_(bd.leaf_edge) {}

int BdBuilder::add_leaf(EdgeId e) {
  adj_.emplace_back();
  leaf_edge_.push_back(e);
  return node_count() - 1;
}

int BdBuilder::add_internal() {
  adj_.emplace_back();
  leaf_edge_.push_back(-1);
  return node_count() - 1;
}

void BdBuilder::connect(int a, int b) {
  if (degree(a) >= 3 || degree(b) >= 3) throw ContractViolation("builder: connect beyond degree 3");
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

void BdBuilder::disconnect(int a, int b) {
  auto drop = [&](int from, int to) {
    auto& v = adj_[from];
    auto it = std::find(v.begin(), v.end(), to);
    if (it == v.end()) throw ContractViolation("builder: disconnect of absent edge");
    v.erase(it);
  };
  drop(a, b);
  drop(b, a);
}

int BdBuilder::splice_point_at(int node) {
  if (degree(node) == 0) return node;
  if (degree(node) != 1) throw ContractViolation("builder: splice at non-leaf");
  int h = adj_[node][0];
  disconnect(node, h);
  int mid = add_internal();
  connect(node, mid);
  connect(mid, h);
  return mid;
}

int BdBuilder::splice_point_least_leaf() {
  int best = -1;
  for (int t = 0; t < node_count(); ++t)
    if (leaf_edge_[t] >= 0 && (best < 0 || leaf_edge_[t] < leaf_edge_[best])) best = t;
  if (best < 0) throw ContractViolation("builder: no leaf to splice at");
  return splice_point_at(best);
}

int BdBuilder::absorb(const BdBuilder& other) {
  int off = node_count();
  for (const auto& nbrs : other.adj_) {
    std::vector<int> shifted;
    shifted.reserve(nbrs.size());
    for (int t : nbrs) shifted.push_back(t + off);
    adj_.push_back(std::move(shifted));
  }
  leaf_edge_.insert(leaf_edge_.end(), other.leaf_edge_.begin(), other.leaf_edge_.end());
  return off;
}

int BdBuilder::leaf_node(EdgeId e) const {
  for (int t = 0; t < node_count(); ++t)
    if (leaf_edge_[t] == e) return t;
  throw ContractViolation("builder: no leaf for edge " + std::to_string(e));
}

void BdBuilder::caterpillar_join(const std::vector<int>& points) {
  int k = static_cast<int>(points.size());
  if (k <= 1) return;
  if (k == 2) {
    connect(points[0], points[1]);
    return;
  }
  std::vector<int> hubs;
  for (int i = 0; i < k - 2; ++i) hubs.push_back(add_internal());
  connect(points[0], hubs[0]);
  connect(points[1], hubs[0]);
  for (int i = 1; i < k - 2; ++i) {
    connect(hubs[i - 1], hubs[i]);
    connect(points[i + 1], hubs[i]);
  }
  connect(points[k - 1], hubs[k - 3]);
}

BranchDecomposition BdBuilder::freeze() const {
  for (int t = 0; t < node_count(); ++t) {
    int deg = degree(t);
    if (leaf_edge_[t] >= 0) {
      if (deg > 1) throw ContractViolation("builder: leaf of degree " + std::to_string(deg));
    } else if (deg != 3) {
      throw ContractViolation("builder: internal node of degree " + std::to_string(deg));
    }
  }
  return BranchDecomposition{adj_, leaf_edge_};
}

// ---------------------------------------------------------------------------
// Star forests (branchwidth <= 1)

BranchDecomposition star_forest_bd(const Graph& g) {
  BdBuilder b;
  auto comps = components(g);
  std::vector<int> comp_of(g.vertex_count(), -1);
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    for (VertexId v : comps[c]) comp_of[v] = c;
  std::vector<std::vector<EdgeId>> comp_edges(comps.size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) comp_edges[comp_of[g.ends(e).first]].push_back(e);

  int active = 0;
  for (const auto& edges : comp_edges)
    if (!edges.empty()) ++active;
  std::vector<int> points;
  for (const auto& edges : comp_edges) {
    if (edges.empty()) continue;
    if (edges.size() == 1) {
      points.push_back(b.add_leaf(edges[0]));
      continue;
    }
    std::vector<int> leaves;
    for (EdgeId e : edges) leaves.push_back(b.add_leaf(e));
    b.caterpillar_join(leaves);
    if (active > 1) points.push_back(b.splice_point_at(leaves[0]));
  }
  b.caterpillar_join(points);
  return b.freeze();
}

// ---------------------------------------------------------------------------
// Block composition

namespace {

// Smallest edge of `edges` incident to v.
EdgeId least_edge_at(const Graph& g, const std::vector<EdgeId>& edges, VertexId v) {
  EdgeId best = -1;
  for (EdgeId e : edges)
    if (g.is_end(e, v) && (best < 0 || e < best)) best = e;
  if (best < 0) throw ContractViolation("no block edge at cut vertex");
  return best;
}

}  // namespace

BranchDecomposition compose_blocks(
    const Graph& g,
    const std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>>& per_block) {
  BlockForest bf = blocks(g);
  if (per_block.size() != bf.block_edges.size())
    throw InputError("compose_blocks: expected " + std::to_string(bf.block_edges.size()) +
                     " blocks, got " + std::to_string(per_block.size()));
  std::map<std::vector<EdgeId>, int> block_index;
  for (int i = 0; i < static_cast<int>(bf.block_edges.size()); ++i)
    block_index[bf.block_edges[i]] = i;

  // Input bd per computed block, validated.
  std::vector<const BranchDecomposition*> given(bf.block_edges.size(), nullptr);
  for (const auto& [edges, bd] : per_block) {
    std::vector<EdgeId> key = edges;
    std::sort(key.begin(), key.end());
    auto it = block_index.find(key);
    if (it == block_index.end()) throw InputError("compose_blocks: edge set is not a block of g");
    if (given[it->second]) throw InputError("compose_blocks: block covered twice");
    if (auto diag = check_tree_shape(bd)) throw InputError("compose_blocks: " + *diag);
    if (auto diag = check_leaf_set(bd, key)) throw InputError("compose_blocks: " + *diag);
    given[it->second] = &bd;
  }

  if (is_union_of_stars(g)) return star_forest_bd(g);

  BdBuilder b;
  for (const auto* bd : given) b.absorb(BdBuilder(*bd));

  int nblocks = static_cast<int>(bf.block_edges.size());
  std::vector<std::vector<int>> blocks_at(g.vertex_count());
  for (int i = 0; i < nblocks; ++i)
    for (VertexId v : bf.blocks[i]) blocks_at[v].push_back(i);

  auto comps = components(g);
  std::vector<int> comp_of(g.vertex_count(), -1);
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    for (VertexId v : comps[c]) comp_of[v] = c;

  // Splices a hanging block subtree next to the leaves of edges chosen at the
  // shared cut vertex, on both sides; this is what keeps every pure one-sided
  // cut free of the cut vertex unless it already separated edges within its
  // own block.
  std::vector<char> done(nblocks, 0);
  std::vector<std::vector<int>> comp_blocks(comps.size());
  for (int i = 0; i < nblocks; ++i) comp_blocks[comp_of[bf.blocks[i][0]]].push_back(i);

  std::vector<int> points;
  std::vector<int> active;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (comp_blocks[c].empty()) continue;
    int root = comp_blocks[c][0];
    done[root] = 1;
    std::vector<std::pair<int, VertexId>> stack{{root, -1}};
    while (!stack.empty()) {
      auto [blk, entry] = stack.back();
      stack.pop_back();
      for (VertexId v : bf.blocks[blk]) {
        if (v == entry) continue;
        for (int child : blocks_at[v]) {
          if (done[child]) continue;
          done[child] = 1;
          EdgeId e_parent = least_edge_at(g, bf.block_edges[blk], v);
          EdgeId e_child = least_edge_at(g, bf.block_edges[child], v);
          int xp = b.splice_point_at(b.leaf_node(e_parent));
          int xc = b.splice_point_at(b.leaf_node(e_child));
          b.connect(xp, xc);
          stack.emplace_back(child, v);
        }
      }
    }
    active.push_back(c);
  }
  if (active.size() > 1) {
    for (int c : active) {
      EdgeId least = bf.block_edges[comp_blocks[c][0]][0];
      for (int blk : comp_blocks[c]) least = std::min(least, bf.block_edges[blk][0]);
      points.push_back(b.splice_point_at(b.leaf_node(least)));
    }
  }
  b.caterpillar_join(points);
  return b.freeze();
}

// ---------------------------------------------------------------------------
// Apex extension

BranchDecomposition extend_over_apex(
    const Graph& g, const std::vector<VertexId>& x,
    const std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>>& per_block) {
  std::vector<char> in_x(g.vertex_count(), 0);
  for (VertexId v : x) {
    g.check_vertex(v);
    if (in_x[v]) throw InputError("extend_over_apex: repeated apex vertex");
    in_x[v] = 1;
  }

  if (is_union_of_stars(g)) return star_forest_bd(g);
  if (x.empty()) return compose_blocks(g, per_block);

  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!in_x[v]) keep.push_back(v);

  BdBuilder b;
  bool have_core = false;
  std::vector<int> local_of_vertex(g.vertex_count(), -1);
  std::vector<int> local_deg(g.vertex_count(), 0);
  if (!keep.empty()) {
    InducedSubgraph sub = induced_subgraph(g, keep);
    for (int lv = 0; lv < sub.graph.vertex_count(); ++lv)
      local_of_vertex[sub.vertex_map[lv]] = lv;
    for (VertexId v : keep) local_deg[v] = sub.graph.degree(local_of_vertex[v]);
    if (sub.graph.edge_count() > 0) {
      std::vector<EdgeId> local_of_edge(g.edge_count(), -1);
      for (EdgeId le = 0; le < sub.graph.edge_count(); ++le) local_of_edge[sub.edge_map[le]] = le;
      std::vector<std::pair<std::vector<EdgeId>, BranchDecomposition>> local_blocks;
      for (const auto& [edges, bd] : per_block) {
        std::vector<EdgeId> local_edges;
        for (EdgeId e : edges) {
          if (local_of_edge[e] < 0)
            throw InputError("extend_over_apex: block edge incident to an apex vertex");
          local_edges.push_back(local_of_edge[e]);
        }
        local_blocks.emplace_back(std::move(local_edges), relabel_leaves(bd, local_of_edge));
      }
      BranchDecomposition core = compose_blocks(sub.graph, local_blocks);
      b.absorb(BdBuilder(relabel_leaves(core, sub.edge_map)));
      have_core = true;
    } else if (!per_block.empty()) {
      throw InputError("extend_over_apex: blocks supplied for an edgeless remainder");
    }
  } else if (!per_block.empty()) {
    throw InputError("extend_over_apex: blocks supplied for an empty remainder");
  }

  // Partition of the apex-incident edges: per attached non-isolated vertex,
  // with apex-apex edges and edges at vertices isolated in g - x pooled.
  std::vector<std::vector<EdgeId>> at_vertex(g.vertex_count());
  std::vector<std::pair<EdgeId, std::vector<EdgeId>>> pool_clusters;  // (min id, edges)
  std::map<VertexId, std::vector<EdgeId>> pool_by_vertex;
  std::vector<EdgeId> pool_apex_only;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(e);
    bool ux = in_x[u], vx = in_x[v];
    if (!ux && !vx) continue;
    if (ux && vx) {
      pool_apex_only.push_back(e);
    } else {
      VertexId z = ux ? v : u;
      if (local_deg[z] == 0)
        pool_by_vertex[z].push_back(e);
      else
        at_vertex[z].push_back(e);
    }
  }
  for (EdgeId e : pool_apex_only) pool_clusters.push_back({e, {e}});
  for (auto& [z, edges] : pool_by_vertex) pool_clusters.push_back({edges[0], edges});
  std::sort(pool_clusters.begin(), pool_clusters.end());

  // Pooled subtree: clusters hang off a spine so no cut ever splits two
  // pooled vertices at once.
  if (!pool_clusters.empty()) {
    size_t spine_size = pool_clusters.size() + (have_core ? 1 : 0);
    std::vector<int> spine;
    if (have_core) spine.push_back(b.splice_point_least_leaf());
    for (const auto& [min_id, edges] : pool_clusters) {
      if (edges.size() == 1) {
        spine.push_back(b.add_leaf(edges[0]));
        continue;
      }
      std::vector<int> leaves;
      for (EdgeId e : edges) leaves.push_back(b.add_leaf(e));
      b.caterpillar_join(leaves);
      if (spine_size > 1) spine.push_back(b.splice_point_at(leaves[0]));
    }
    b.caterpillar_join(spine);
  }

  // Per-vertex subtrees spliced next to the leaf of the smallest remainder
  // edge at that vertex.
  for (VertexId z = 0; z < g.vertex_count(); ++z) {
    const auto& edges = at_vertex[z];
    if (edges.empty()) continue;
    EdgeId anchor = -1;
    for (EdgeId e : g.incident(z)) {
      auto [p, q] = g.ends(e);
      if (!in_x[p] && !in_x[q]) {
        anchor = e;
        break;
      }
    }
    int hook = b.splice_point_at(b.leaf_node(anchor));
    if (edges.size() == 1) {
      b.connect(hook, b.add_leaf(edges[0]));
      continue;
    }
    std::vector<int> leaves;
    for (EdgeId e : edges) leaves.push_back(b.add_leaf(e));
    b.caterpillar_join(leaves);
    b.connect(hook, b.splice_point_at(leaves[0]));
  }
  return b.freeze();
}

// ---------------------------------------------------------------------------
// Treewidth conversion

BranchDecomposition relabel_leaves(const BranchDecomposition& bd, const std::vector<EdgeId>& edge_map) {
  BranchDecomposition out = bd;
  for (auto& e : out.leaf_edge) {
    if (e < 0) continue;
    if (e >= static_cast<int>(edge_map.size()) || edge_map[e] < 0)
      throw InputError("relabel_leaves: unmapped edge id " + std::to_string(e));
    e = edge_map[e];
  }
  return out;
}

namespace {

TreeDecomposition forest_td(const Graph& g) {
  TreeDecomposition td;
  // One node per vertex plus one per edge; components chained by their
  // smallest vertices' nodes.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    td.adj.emplace_back();
    td.bags.push_back({v});
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(e);
    int t = static_cast<int>(td.adj.size());
    td.adj.emplace_back();
    td.bags.push_back({u, v});
    td.adj[t].push_back(u);
    td.adj[u].push_back(t);
    td.adj[t].push_back(v);
    td.adj[v].push_back(t);
  }
  auto comps = components(g);
  for (size_t c = 1; c < comps.size(); ++c) {
    int a = comps[c - 1][0], b = comps[c][0];
    td.adj[a].push_back(b);
    td.adj[b].push_back(a);
  }
  return td;
}

}  // namespace

TreeDecomposition bd_to_tree_decomposition(const BranchDecomposition& bd, const Graph& g) {
  bool acyclic = g.edge_count() == g.vertex_count() - static_cast<int>(components(g).size());
  if (acyclic) return forest_td(g);
  if (auto diag = validate(bd, g)) throw InputError("bd_to_tree_decomposition: " + *diag);

  auto edges = bd.tree_edges();
  auto mids = middle_sets(bd, g);
  std::map<std::pair<int, int>, int> edge_index;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) edge_index[edges[i]] = i;

  TreeDecomposition td;
  td.adj = bd.adj;
  td.bags.assign(bd.node_count(), {});
  for (int t = 0; t < bd.node_count(); ++t) {
    if (bd.is_leaf(t)) {
      auto [u, v] = g.ends(bd.leaf_edge[t]);
      td.bags[t] = {u, v};
      if (u == v) td.bags[t] = {u};
      continue;
    }
    std::vector<VertexId> bag;
    for (int nb : bd.adj[t]) {
      const auto& ms = mids[edge_index[{std::min(t, nb), std::max(t, nb)}]];
      bag.insert(bag.end(), ms.begin(), ms.end());
    }
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    td.bags[t] = std::move(bag);
  }
  // Vertices untouched by any edge still need a bag.
  std::vector<char> have(g.vertex_count(), 0);
  for (const auto& bag : td.bags)
    for (VertexId v : bag) have[v] = 1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (have[v]) continue;
    int t = static_cast<int>(td.adj.size());
    td.adj.emplace_back();
    td.bags.push_back({v});
    td.adj[t].push_back(0);
    td.adj[0].push_back(t);
  }
  return td;
}

}  // namespace ratnest
