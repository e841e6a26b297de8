#include "ratnest/ratcatcher.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ratnest/util.hpp"

namespace ratnest {
namespace {

std::string edge_pair_text(const std::pair<int, int>& te) {
  return "(" + std::to_string(te.first) + ", " + std::to_string(te.second) + ")";
}

void check_game_input(const EmbeddedGraph& e, const std::string& op) {
  if (e.genus != 0)
    throw ContractViolation(op + ": needs a sphere embedding, genus is " +
                            std::to_string(e.genus));
  const Graph& g = e.graph();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1)
      throw ContractViolation(op + ": degree-one vertex " + std::to_string(v) +
                              " (strip and reattach leaves first)");
}

// ---------------------------------------------------------------------------
// Sign normalization with a face-id translation back to the caller's ids.
//
// The game and the construction assume an all-positive rotation system (so
// rotation order is globally consistent), but a genus-0 input may carry mixed
// signs. Resigning is a gauge change: faces survive as geometric objects, so
// every corner can be matched through its ordered pair of flanking edges
// (reversed at resigned vertices) and faces matched through their corners.
// ---------------------------------------------------------------------------

struct NormalizedSphere {
  EmbeddedGraph emb;
  std::vector<int> face_to_input;  // emb face id -> input face id
};

NormalizedSphere normalize_sphere(const EmbeddedGraph& e) {
  const Graph& g = e.graph();
  bool positive = std::all_of(e.rotation.sign.begin(), e.rotation.sign.end(),
                              [](int s) { return s == 1; });
  if (positive) {
    NormalizedSphere out{e, std::vector<int>(e.faces.count())};
    std::iota(out.face_to_input.begin(), out.face_to_input.end(), 0);
    return out;
  }
  RotationSystem nr = normalize_signs(e.rotation);
  for (int s : nr.sign)
    if (s != 1)
      throw ContractViolation(
          "sphere embedding did not normalize to all-positive signs");
  // Which vertices were resigned: flip(u) * flip(v) = old sign(uv), solved
  // along a BFS forest (the leftover global flip per component is a mirror,
  // harmless because the reversed-pair lookup below is applied uniformly).
  std::vector<int> flip(g.vertex_count(), 0);
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (flip[root] != 0) continue;
    flip[root] = 1;
    std::deque<VertexId> bfs{root};
    while (!bfs.empty()) {
      VertexId u = bfs.front();
      bfs.pop_front();
      for (EdgeId ed : g.incident(u)) {
        VertexId w = g.other_end(ed, u);
        if (flip[w] == 0) {
          flip[w] = flip[u] * e.rotation.sign[ed];
          bfs.push_back(w);
        }
      }
    }
  }
  EmbeddedGraph e2 = embed(nr);
  std::vector<int> face_to_input(e2.faces.count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    if (d == 0) continue;
    const std::vector<EdgeId>& r2 = nr.rotation[v];
    std::map<std::pair<EdgeId, EdgeId>, int> pos2;
    for (int i = 0; i < d; ++i) pos2[{r2[i], r2[(i + 1) % d]}] = i;
    const std::vector<EdgeId>& r1 = e.rotation.rotation[v];
    for (int i = 0; i < d; ++i) {
      std::pair<EdgeId, EdgeId> key{r1[i], r1[(i + 1) % d]};
      if (flip[v] < 0) std::swap(key.first, key.second);
      auto it = pos2.find(key);
      if (it == pos2.end())
        throw ContractViolation("sign normalization scrambled a rotation row");
      int f_old = e.face_of_corner[e.corner_id(v, i)];
      int f_new = e2.face_of_corner[e2.corner_id(v, it->second)];
      if (face_to_input[f_new] != -1 && face_to_input[f_new] != f_old)
        throw ContractViolation("sign normalization did not preserve faces");
      face_to_input[f_new] = f_old;
    }
  }
  std::vector<int> seen(e.faces.count(), 0);
  for (int f : face_to_input) {
    if (f < 0 || seen[f]++)
      throw ContractViolation("sign normalization did not preserve faces");
  }
  return {std::move(e2), std::move(face_to_input)};
}

// ---------------------------------------------------------------------------
// The vertex-face incidence multigraph ("radial" with one arc per corner).
// Nodes are vertices then faces; arcs are corners, so a closed curve's
// crossings with the graph's corners are exactly the arcs of the
// corresponding closed walk. Edge e's quadrilateral is the 4-cycle of its
// flanking corners; the rat lives on edges and crosses one corner at a time.
// ---------------------------------------------------------------------------

struct RMulti {
  int node_count = 0;
  int primal = 0;
  std::vector<std::array<int, 2>> arc_ends;      // per corner: vertex node, face node
  std::vector<std::array<EdgeId, 2>> arc_edges;  // edges flanking the corner
  std::vector<std::vector<int>> arcs_at;         // per node, ascending
  std::vector<std::array<int, 4>> quad_arcs;     // per edge
  std::vector<std::array<int, 4>> quad_nodes;    // per edge: u, v, face, face
};

int edge_position(const EmbeddedGraph& e, VertexId v, EdgeId ed) {
  const std::vector<EdgeId>& row = e.rotation.rotation[v];
  for (int i = 0; i < static_cast<int>(row.size()); ++i)
    if (row[i] == ed) return i;
  throw ContractViolation("edge missing from its endpoint's rotation");
}

RMulti build_rmulti(const EmbeddedGraph& e) {
  const Graph& g = e.graph();
  RMulti R;
  R.primal = g.vertex_count();
  R.node_count = R.primal + e.faces.count();
  R.arc_ends.resize(e.corner_count());
  R.arc_edges.resize(e.corner_count());
  R.arcs_at.resize(R.node_count);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    const std::vector<EdgeId>& row = e.rotation.rotation[v];
    for (int i = 0; i < d; ++i) {
      int c = e.corner_id(v, i);
      int fn = R.primal + e.face_of_corner[c];
      R.arc_ends[c] = {v, fn};
      R.arc_edges[c] = {row[i], row[(i + 1) % d]};
      R.arcs_at[v].push_back(c);
      R.arcs_at[fn].push_back(c);
    }
  }
  for (std::vector<int>& list : R.arcs_at) std::sort(list.begin(), list.end());
  R.quad_arcs.resize(g.edge_count());
  R.quad_nodes.resize(g.edge_count());
  for (EdgeId ed = 0; ed < g.edge_count(); ++ed) {
    auto [u, v] = g.ends(ed);
    int du = g.degree(u), dv = g.degree(v);
    int pu = edge_position(e, u, ed), pv = edge_position(e, v, ed);
    R.quad_arcs[ed] = {e.corner_id(u, (pu + du - 1) % du), e.corner_id(u, pu),
                       e.corner_id(v, (pv + dv - 1) % dv), e.corner_id(v, pv)};
    R.quad_nodes[ed] = {u, v, R.primal + e.edge_faces[ed][0],
                        R.primal + e.edge_faces[ed][1]};
  }
  return R;
}

int other_arc_end(const RMulti& R, int arc, int node) {
  return R.arc_ends[arc][0] == node ? R.arc_ends[arc][1] : R.arc_ends[arc][0];
}

std::vector<int> bfs_dist(const RMulti& R, int src, const std::vector<char>* ban) {
  std::vector<int> d(R.node_count, -1);
  if (ban && (*ban)[src]) return d;
  d[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int arc : R.arcs_at[x]) {
      int y = other_arc_end(R, arc, x);
      if (d[y] >= 0 || (ban && (*ban)[y])) continue;
      d[y] = d[x] + 1;
      q.push_back(y);
    }
  }
  return d;
}

// Minimum total length of two internally-vertex-disjoint paths from x to a
// and from x to b (a, b distinct from x), or -1 when none exist. Unit
// node-split min-cost flow over the ball that any path short enough could
// occupy; two Bellman-Ford augmentations suffice for two units.
int disjoint_path_pair(const RMulti& R, const std::vector<int>& dx, int x, int a,
                       int b, int budget) {
  std::vector<int> loc(R.node_count, -1);
  std::vector<int> ball;
  for (int y = 0; y < R.node_count; ++y)
    if (dx[y] >= 0 && dx[y] <= budget) {
      loc[y] = static_cast<int>(ball.size());
      ball.push_back(y);
    }
  if (loc[a] < 0 || loc[b] < 0) return -1;
  int nb = static_cast<int>(ball.size());
  int NV = 2 * nb + 1, T = 2 * nb;
  auto in_id = [&](int y) { return 2 * loc[y]; };
  auto out_id = [&](int y) { return 2 * loc[y] + 1; };

  struct FlowEdge {
    int to, cap, cost, rev;
  };
  std::vector<std::vector<FlowEdge>> adj(NV);
  auto add = [&](int from, int to, int cap, int cost) {
    adj[from].push_back({to, cap, cost, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, -cost, static_cast<int>(adj[from].size()) - 1});
  };
  for (int y : ball)
    if (y != x) add(in_id(y), out_id(y), 1, 0);
  for (int c = 0; c < static_cast<int>(R.arc_ends.size()); ++c) {
    int u = R.arc_ends[c][0], v = R.arc_ends[c][1];
    if (loc[u] < 0 || loc[v] < 0) continue;
    if (u != x) add(out_id(v), in_id(u), 1, 1);
    if (v != x) add(out_id(u), in_id(v), 1, 1);
  }
  add(out_id(a), T, 1, 0);
  add(out_id(b), T, 1, 0);

  int src = out_id(x);
  int total = 0;
  for (int unit = 0; unit < 2; ++unit) {
    const int INF = std::numeric_limits<int>::max() / 4;
    std::vector<int> dist(NV, INF), pv(NV, -1), pe(NV, -1);
    std::vector<char> inq(NV, 0);
    dist[src] = 0;
    std::deque<int> q{src};
    inq[src] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      inq[u] = 0;
      for (int i = 0; i < static_cast<int>(adj[u].size()); ++i) {
        const FlowEdge& fe = adj[u][i];
        if (fe.cap <= 0 || dist[u] + fe.cost >= dist[fe.to]) continue;
        dist[fe.to] = dist[u] + fe.cost;
        pv[fe.to] = u;
        pe[fe.to] = i;
        if (!inq[fe.to]) {
          inq[fe.to] = 1;
          q.push_back(fe.to);
        }
      }
    }
    if (dist[T] >= INF) return -1;
    total += dist[T];
    for (int u = T; u != src; u = pv[u]) {
      FlowEdge& fe = adj[pv[u]][pe[u]];
      fe.cap -= 1;
      adj[u][fe.rev].cap += 1;
    }
  }
  return total;
}

struct GameConfig {
  // Noisy corners are those on a simple closed curve of crossing number at
  // most 2k through the catcher's node; with exact_noise off, the cheaper
  // closed-walk bound is used alone (it can only over-block).
  bool exact_noise = true;
  // Capture requires the catcher to stand on the cornered rat's quad.
  bool catcher_on_quad = true;
};

constexpr GameConfig kGame{};

// Corners within earshot of a catcher standing on node x: a corner is noisy
// iff some noose through x of length <= k crosses it, i.e. iff it lies on a
// simple cycle through x of at most 2k arcs.
std::vector<char> noise_at(const RMulti& R, int x, int budget, const GameConfig& cfg) {
  std::vector<char> blocked(R.arc_ends.size(), 0);
  std::vector<int> dx = bfs_dist(R, x, nullptr);
  std::vector<char> ban(R.node_count, 0);
  ban[x] = 1;
  std::map<int, std::vector<int>> from_neighbor;
  for (int c : R.arcs_at[x]) {
    int o = other_arc_end(R, c, x);
    if (!from_neighbor.count(o)) from_neighbor[o] = bfs_dist(R, o, &ban);
  }
  for (int c = 0; c < static_cast<int>(R.arc_ends.size()); ++c) {
    int a = R.arc_ends[c][0], b = R.arc_ends[c][1];
    if (a == x || b == x) {
      if (!cfg.exact_noise) {
        if (2 <= budget) blocked[c] = 1;
        continue;
      }
      int o = (a == x) ? b : a;
      const std::vector<int>& dn = from_neighbor.at(o);
      int best = std::numeric_limits<int>::max();
      for (int a2 : R.arcs_at[x]) {
        if (a2 == c) continue;
        int y = other_arc_end(R, a2, x);
        if (dn[y] >= 0) best = std::min(best, 2 + dn[y]);
      }
      if (best <= budget) blocked[c] = 1;
      continue;
    }
    if (dx[a] < 0 || dx[b] < 0) continue;
    if (dx[a] + dx[b] + 1 > budget) continue;
    if (!cfg.exact_noise) {
      blocked[c] = 1;
      continue;
    }
    int len = disjoint_path_pair(R, dx, x, a, b, budget);
    if (len >= 0 && len + 1 <= budget) blocked[c] = 1;
  }
  return blocked;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// The pursuit itself. The catcher walks the incidence multigraph arc by arc;
// after each arrival the rat runs along corners quiet at the new position.
// The rat is done for when its quad has all four corners noisy and the
// catcher stands on one of the quad's nodes. Greatest fixpoint over states
// (catcher node, rat edge); the rat escapes iff any state survives.
bool rat_escapes(const RMulti& R, int k, const GameConfig& cfg) {
  int m = static_cast<int>(R.quad_arcs.size());
  if (m == 0) return false;
  int X = R.node_count;
  int budget = 2 * k;

  std::vector<std::vector<char>> noise(X);
  for (int x = 0; x < X; ++x) noise[x] = noise_at(R, x, budget, cfg);

  // Quiet-corner components of the rat's world, per catcher position.
  std::vector<std::vector<int>> comp(X, std::vector<int>(m, -1));
  std::vector<int> comp_count(X, 0);
  std::vector<std::vector<std::vector<int>>> members(X);
  for (int x = 0; x < X; ++x) {
    Dsu dsu(m);
    for (int c = 0; c < static_cast<int>(R.arc_ends.size()); ++c)
      if (!noise[x][c]) dsu.unite(R.arc_edges[c][0], R.arc_edges[c][1]);
    std::vector<int> label(m, -1);
    for (int e = 0; e < m; ++e) {
      int root = dsu.find(e);
      if (label[root] < 0) {
        label[root] = comp_count[x]++;
        members[x].emplace_back();
      }
      comp[x][e] = label[root];
      members[x][comp[x][e]].push_back(e);
    }
  }

  std::vector<std::vector<int>> nbr(X);
  for (int x = 0; x < X; ++x) {
    for (int arc : R.arcs_at[x]) nbr[x].push_back(other_arc_end(R, arc, x));
    std::sort(nbr[x].begin(), nbr[x].end());
    nbr[x].erase(std::unique(nbr[x].begin(), nbr[x].end()), nbr[x].end());
  }

  auto lost = [&](int x, int e) {
    for (int c : R.quad_arcs[e])
      if (!noise[x][c]) return false;
    if (!cfg.catcher_on_quad) return true;
    const std::array<int, 4>& qn = R.quad_nodes[e];
    return std::find(qn.begin(), qn.end(), x) != qn.end();
  };

  std::vector<std::vector<char>> alive(X, std::vector<char>(m, 1));
  std::vector<std::vector<int>> cnt(X);
  for (int x = 0; x < X; ++x) {
    for (int e = 0; e < m; ++e)
      if (lost(x, e)) alive[x][e] = 0;
    cnt[x].assign(comp_count[x], 0);
    for (int e = 0; e < m; ++e)
      if (alive[x][e]) ++cnt[x][comp[x][e]];
  }

  std::deque<std::pair<int, int>> work;
  for (int x = 0; x < X; ++x)
    for (int e = 0; e < m; ++e)
      if (alive[x][e]) work.emplace_back(x, e);

  std::function<void(int, int)> kill = [&](int x, int e) {
    if (!alive[x][e]) return;
    alive[x][e] = 0;
    int cls = comp[x][e];
    if (--cnt[x][cls] == 0)
      for (int y : nbr[x])
        for (int e2 : members[x][cls])
          if (alive[y][e2]) work.emplace_back(y, e2);
  };

  while (!work.empty()) {
    auto [x, e] = work.front();
    work.pop_front();
    if (!alive[x][e]) continue;
    for (int y : nbr[x]) {
      if (cnt[y][comp[y][e]] == 0) {
        kill(x, e);
        break;
      }
    }
  }

  for (int x = 0; x < X; ++x)
    for (int e = 0; e < m; ++e)
      if (alive[x][e]) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Restriction of an all-positive sphere embedding to a vertex/edge subset,
// used for connected components and biconnected blocks.
// ---------------------------------------------------------------------------

struct SubEmbedding {
  EmbeddedGraph emb;
  std::vector<VertexId> vmap;  // local -> host
  std::vector<EdgeId> emap;    // local -> host
};

SubEmbedding restrict_embedding(const EmbeddedGraph& e,
                                const std::vector<VertexId>& verts,
                                const std::vector<char>* edge_keep) {
  const Graph& g = e.graph();
  std::vector<int> vloc(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) vloc[verts[i]] = i;
  std::vector<EdgeId> emap;
  std::vector<int> eloc(g.edge_count(), -1);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (EdgeId ed = 0; ed < g.edge_count(); ++ed) {
    auto [u, v] = g.ends(ed);
    if (vloc[u] < 0 || vloc[v] < 0) continue;
    if (edge_keep && !(*edge_keep)[ed]) continue;
    eloc[ed] = static_cast<int>(emap.size());
    emap.push_back(ed);
    pairs.emplace_back(vloc[u], vloc[v]);
  }
  Graph h(static_cast<int>(verts.size()), pairs);
  std::vector<std::vector<EdgeId>> rows(verts.size());
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    for (EdgeId ed : e.rotation.rotation[verts[i]])
      if (eloc[ed] >= 0) rows[i].push_back(eloc[ed]);
  }
  RotationSystem rs{std::move(h), std::move(rows),
                    std::vector<int>(emap.size(), 1)};
  EmbeddedGraph he = embed(rs);
  if (he.genus != 0)
    throw ContractViolation("restricted embedding left the sphere");
  return {std::move(he), verts, std::move(emap)};
}

}  // namespace

// ---------------------------------------------------------------------------
// decide_planar_bw
// ---------------------------------------------------------------------------

bool decide_planar_bw(const EmbeddedGraph& e, int k) {
  if (k <= 0)
    throw InputError("decide_planar_bw: k must be positive, got " +
                     std::to_string(k));
  check_game_input(e, "decide_planar_bw");
  const Graph& g = e.graph();
  if (g.edge_count() == 0) return true;
  NormalizedSphere ns = normalize_sphere(e);
  for (const std::vector<VertexId>& comp : components(g)) {
    bool has_edge = false;
    for (VertexId v : comp)
      if (g.degree(v) > 0) has_edge = true;
    if (!has_edge) continue;
    // A component with edges has minimum degree two here, hence a cycle,
    // hence branchwidth at least two.
    if (k == 1) return false;
    SubEmbedding sub = restrict_embedding(ns.emb, comp, nullptr);
    RMulti R = build_rmulti(sub.emb);
    if (rat_escapes(R, k, kGame)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// medial_graph
// ---------------------------------------------------------------------------

MedialStructure medial_graph(const EmbeddedGraph& e0) {
  check_game_input(e0, "medial_graph");
  const Graph& g0 = e0.graph();
  if (g0.edge_count() == 0)
    throw ContractViolation("medial_graph: needs at least one edge");
  if (components(g0).size() != 1)
    throw ContractViolation("medial_graph: input must be connected");
  NormalizedSphere ns = normalize_sphere(e0);
  const EmbeddedGraph& e = ns.emb;
  const Graph& g = e.graph();
  int m = g.edge_count();

  MedialStructure M;
  M.vertex_count = m;
  M.original_edge.resize(m);
  std::iota(M.original_edge.begin(), M.original_edge.end(), 0);
  M.medial_ends.resize(e.corner_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    const std::vector<EdgeId>& row = e.rotation.rotation[v];
    for (int i = 0; i < d; ++i)
      M.medial_ends[e.corner_id(v, i)] = {row[i], row[(i + 1) % d]};
  }
  M.rotation.resize(m);
  for (EdgeId ed = 0; ed < m; ++ed) {
    auto [u, v] = g.ends(ed);
    int du = g.degree(u), dv = g.degree(v);
    int pu = edge_position(e, u, ed), pv = edge_position(e, v, ed);
    int cu0 = e.corner_id(u, (pu + du - 1) % du), cu1 = e.corner_id(u, pu);
    int cv0 = e.corner_id(v, (pv + dv - 1) % dv), cv1 = e.corner_id(v, pv);
    // Cross order around the edge midpoint: the two u-side corners, then the
    // v-side corner sharing cu1's face, then the remaining one.
    int s, t;
    if (e.face_of_corner[cv0] == e.face_of_corner[cu1]) {
      s = cv0;
      t = cv1;
    } else {
      s = cv1;
      t = cv0;
    }
    if (e.face_of_corner[s] != e.face_of_corner[cu1] ||
        e.face_of_corner[t] != e.face_of_corner[cu0])
      throw ContractViolation("medial_graph: corner faces do not pair up");
    M.rotation[ed] = {cu0, cu1, s, t};
  }

  // Euler self-check: the medial's faces must number n + F.
  std::vector<std::array<int, 2>> slot_of(e.corner_count(), {-1, -1});
  for (int mv = 0; mv < m; ++mv)
    for (int sl = 0; sl < 4; ++sl) {
      int c = M.rotation[mv][sl];
      if (slot_of[c][0] < 0)
        slot_of[c] = {mv, sl};
      else
        slot_of[c] = {slot_of[c][0], slot_of[c][1], };
    }
  // slot lookup must be per endpoint; rebuild properly.
  std::vector<std::array<int, 2>> slot_at(e.corner_count(), {-1, -1});
  for (int mv = 0; mv < m; ++mv)
    for (int sl = 0; sl < 4; ++sl) {
      int c = M.rotation[mv][sl];
      int which = (M.medial_ends[c].first == mv) ? 0 : 1;
      if (M.medial_ends[c].first == M.medial_ends[c].second)
        throw ContractViolation("medial_graph: loop medial edge");
      slot_at[c][which] = sl;
    }
  std::vector<char> seen_dart(4 * m, 0);
  int medial_faces = 0;
  for (int start = 0; start < 4 * m; ++start) {
    if (seen_dart[start]) continue;
    ++medial_faces;
    int dart = start;
    while (!seen_dart[dart]) {
      seen_dart[dart] = 1;
      int mv = dart / 4, sl = dart % 4;
      int c = M.rotation[mv][sl];
      int w = (M.medial_ends[c].first == mv) ? M.medial_ends[c].second
                                             : M.medial_ends[c].first;
      int sl_w = (M.medial_ends[c].first == w) ? slot_at[c][0] : slot_at[c][1];
      dart = 4 * w + (sl_w + 1) % 4;
    }
  }
  M.face_count = medial_faces;
  if (medial_faces != g.vertex_count() + e.faces.count())
    throw ContractViolation("medial_graph: Euler check failed");
  return M;
}

// ---------------------------------------------------------------------------
// Sphere-cut construction: per 2-connected block, top-down region splitting
// guided by the decision procedure, then block trees spliced together at cut
// vertices.
// ---------------------------------------------------------------------------

namespace {

struct BlockCtx {
  SubEmbedding sub;
  RMulti R;
  std::vector<std::vector<int>> pos_in_face;  // [face][vertex] walk position
  int width = 2;
};

BlockCtx make_block_ctx(const EmbeddedGraph& host, const std::vector<EdgeId>& block_edges) {
  const Graph& g = host.graph();
  std::vector<char> keep(g.edge_count(), 0);
  std::set<VertexId> vset;
  for (EdgeId ed : block_edges) {
    keep[ed] = 1;
    auto [u, v] = g.ends(ed);
    vset.insert(u);
    vset.insert(v);
  }
  BlockCtx B;
  B.sub = restrict_embedding(host, std::vector<VertexId>(vset.begin(), vset.end()),
                             &keep);
  B.R = build_rmulti(B.sub.emb);
  const EmbeddedGraph& emb = B.sub.emb;
  B.pos_in_face.assign(emb.faces.count(),
                       std::vector<int>(emb.graph().vertex_count(), -1));
  for (int f = 0; f < emb.faces.count(); ++f) {
    const FaceWalk& walk = emb.faces.faces[f];
    for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
      VertexId v = walk[i].first;
      if (B.pos_in_face[f][v] != -1)
        throw ContractViolation("block face revisits a vertex");
      B.pos_in_face[f][v] = i;
    }
  }
  int mB = emb.graph().edge_count();
  B.width = -1;
  for (int k = 2; k <= mB; ++k) {
    if (!rat_escapes(B.R, k, kGame)) {
      B.width = k;
      break;
    }
  }
  if (B.width < 0)
    throw ContractViolation("block width search failed to terminate");
  return B;
}

int corner_of(const BlockCtx& B, VertexId v, int f) {
  int p = B.pos_in_face[f][v];
  if (p < 0)
    throw ContractViolation("vertex does not touch the requested face");
  return B.sub.emb.walk_corners[f][p];
}

// Boundary cycles alternate vertex and face nodes; even positions hold
// vertex nodes. Corners a realizing curve crosses: one per adjacent
// (vertex, face) pair along the cycle.
std::vector<int> crossed_corners(const BlockCtx& B, const std::vector<int>& cyc) {
  int L = static_cast<int>(cyc.size());
  std::vector<int> out;
  out.reserve(L);
  for (int i = 0; i < L; ++i) {
    int a = cyc[i], b = cyc[(i + 1) % L];
    int vnode = (a < B.R.primal) ? a : b;
    int fnode = (a < B.R.primal) ? b : a;
    out.push_back(corner_of(B, vnode, fnode - B.R.primal));
  }
  return out;
}

Noose cyc_to_noose(const RMulti& R, const std::vector<int>& cyc) {
  Noose ns;
  for (int i = 0; i < static_cast<int>(cyc.size()); i += 2) {
    ns.vertices.push_back(cyc[i]);
    ns.faces.push_back(cyc[i + 1] - R.primal);
  }
  return ns;
}

std::vector<int> rotate_vertex_first(std::vector<int> cyc, int primal) {
  if (cyc.empty() || cyc[0] < primal) return cyc;
  std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  if (cyc[0] >= primal)
    throw ContractViolation("boundary cycle does not alternate");
  return cyc;
}

struct Region {
  std::vector<EdgeId> edges;  // local block edge ids, sorted ascending
  std::vector<int> cyc;       // alternating node cycle, vertex node first
};

std::vector<int> quad_cycle(const BlockCtx& B, EdgeId local_edge) {
  const std::array<int, 4>& qn = B.R.quad_nodes[local_edge];
  int u = std::min(qn[0], qn[1]), v = std::max(qn[0], qn[1]);
  int fa = std::min(qn[2], qn[3]), fb = std::max(qn[2], qn[3]);
  return {u, fa, v, fb};
}

int cycle_vertex_count(const std::vector<int>& cyc, int primal) {
  int n = 0;
  for (int node : cyc)
    if (node < primal) ++n;
  return n;
}

// Cap a region with a cycle along its boundary noose: the region's own edges
// plus one edge per consecutive noose vertex pair, inserted at the curve's
// wedge positions so the cap bounds a disk where the outside used to be.
EmbeddedGraph capped_region(const BlockCtx& B, const Region& r) {
  const EmbeddedGraph& emb = B.sub.emb;
  const Graph& g = emb.graph();
  std::vector<char> in_region(g.edge_count(), 0);
  for (EdgeId ed : r.edges) in_region[ed] = 1;

  int L2 = static_cast<int>(r.cyc.size());
  int l = L2 / 2;
  std::vector<VertexId> nv(l);
  std::vector<int> nf(l);
  for (int t = 0; t < l; ++t) {
    nv[t] = r.cyc[2 * t];
    nf[t] = r.cyc[2 * t + 1] - B.R.primal;
  }

  std::set<VertexId> vset;
  for (EdgeId ed : r.edges) {
    auto [u, v] = g.ends(ed);
    vset.insert(u);
    vset.insert(v);
  }
  for (VertexId v : nv) vset.insert(v);
  std::vector<VertexId> verts(vset.begin(), vset.end());
  std::vector<int> vloc(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) vloc[verts[i]] = i;

  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<int> eloc(g.edge_count(), -1);
  for (EdgeId ed : r.edges) {
    auto [u, v] = g.ends(ed);
    eloc[ed] = static_cast<int>(pairs.size());
    pairs.emplace_back(vloc[u], vloc[v]);
  }
  // Cap edges between consecutive noose vertices, skipping pairs already
  // present (a parallel edge never changes the verdict at width >= 2).
  std::set<std::pair<VertexId, VertexId>> have;
  for (EdgeId ed : r.edges) {
    auto [u, v] = g.ends(ed);
    have.insert(std::minmax(u, v));
  }
  std::vector<int> cap_edge(l, -1);  // cap_edge[t]: edge nv[t] -> nv[t+1]
  for (int t = 0; t < l; ++t) {
    VertexId a = nv[t], b = nv[(t + 1) % l];
    auto key = std::minmax(a, b);
    if (have.count(key)) continue;
    have.insert(key);
    cap_edge[t] = static_cast<int>(pairs.size());
    pairs.emplace_back(vloc[a], vloc[b]);
  }
  if (l == 2 && cap_edge[1] == -1 && cap_edge[0] >= 0) {
    // Single cap edge doubling back; the second step reuses it.
    cap_edge[1] = cap_edge[0];
  }

  Graph h(static_cast<int>(verts.size()), pairs);
  std::vector<std::vector<EdgeId>> rows(verts.size());
  std::vector<int> noose_pos(g.vertex_count(), -1);
  for (int t = 0; t < l; ++t) noose_pos[nv[t]] = t;

  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    VertexId v = verts[i];
    const std::vector<EdgeId>& row = emb.rotation.rotation[v];
    int d = static_cast<int>(row.size());
    if (noose_pos[v] < 0) {
      for (EdgeId ed : row) {
        if (!in_region[ed])
          throw ContractViolation("interior vertex with an edge outside the region");
        rows[i].push_back(eloc[ed]);
      }
      continue;
    }
    int t = noose_pos[v];
    // Contiguous run of region edges in the rotation.
    int start = -1, cnt = 0;
    for (int p = 0; p < d; ++p) {
      if (in_region[row[p]] && !in_region[row[(p + d - 1) % d]]) {
        if (start != -1)
          throw ContractViolation("region edges not contiguous at a boundary vertex");
        start = p;
      }
      if (in_region[row[p]]) ++cnt;
    }
    if (start == -1) {
      if (cnt == 0 || cnt != d)
        throw ContractViolation("region edges not contiguous at a boundary vertex");
      start = 0;  // every edge of v inside; caps still flank the crossing
    }
    for (int off = 0; off < cnt; ++off)
      if (!in_region[row[(start + off) % d]])
        throw ContractViolation("region edges not contiguous at a boundary vertex");

    int f_prev = nf[(t + l - 1) % l];
    int f_next = nf[t];
    int pos_ent = corner_of(B, v, f_prev) - emb.corner_offset[v];
    int pos_ext = corner_of(B, v, f_next) - emb.corner_offset[v];
    int ecap_prev = cap_edge[(t + l - 1) % l];
    int ecap_next = cap_edge[t];
    bool prev_at_front;
    if ((pos_ent + 1) % d == start && pos_ext == (start + cnt - 1 + d) % d) {
      prev_at_front = true;
    } else if ((pos_ext + 1) % d == start && pos_ent == (start + cnt - 1 + d) % d) {
      prev_at_front = false;
    } else {
      throw ContractViolation("noose corners do not flank the region run");
    }
    std::vector<EdgeId> built;
    int front_cap = prev_at_front ? ecap_prev : ecap_next;
    int back_cap = prev_at_front ? ecap_next : ecap_prev;
    if (front_cap >= 0) built.push_back(front_cap);
    for (int off = 0; off < cnt; ++off) built.push_back(eloc[row[(start + off) % d]]);
    if (back_cap >= 0 && back_cap != front_cap) built.push_back(back_cap);
    rows[i] = std::move(built);
  }

  RotationSystem rs{std::move(h), std::move(rows),
                    std::vector<int>(pairs.size(), 1)};
  EmbeddedGraph he = embed(rs);
  if (he.genus != 0)
    throw ContractViolation("capped region is not planar");
  return he;
}

bool region_completable(const BlockCtx& B, const Region& r, int w) {
  if (r.edges.size() <= 2) return true;
  EmbeddedGraph h = capped_region(B, r);
  RMulti R = build_rmulti(h);
  return !rat_escapes(R, w, kGame);
}

struct Split {
  Region r1, r2;
};

// Candidate arcs through the region interior between two boundary nodes, in
// (length, boundary positions, lexicographic) order; each candidate that
// splits the region into two boundary-exact completable sides is offered to
// `attempt` until one leads to a finished subtree.
bool try_splits(const BlockCtx& B, const Region& r, int w, long long& budget,
                const std::function<bool(const Split&)>& attempt) {
  const RMulti& R = B.R;
  int L2 = static_cast<int>(r.cyc.size());
  std::vector<char> in_region(R.quad_arcs.size(), 0);
  for (EdgeId ed : r.edges) in_region[ed] = 1;

  std::vector<char> on_boundary(R.node_count, 0);
  for (int node : r.cyc) on_boundary[node] = 1;

  std::vector<char> arc_usable(R.arc_ends.size(), 0);
  for (int c = 0; c < static_cast<int>(R.arc_ends.size()); ++c)
    arc_usable[c] = in_region[R.arc_edges[c][0]] && in_region[R.arc_edges[c][1]];
  for (int c : crossed_corners(B, r.cyc)) arc_usable[c] = 0;

  std::vector<int> boundary_crossings = crossed_corners(B, r.cyc);
  std::set<int> boundary_blocked(boundary_crossings.begin(), boundary_crossings.end());

  // Lower-bound distances for path pruning (ignores the no-revisit rule, so
  // it never over-prunes).
  auto dist_to = [&](int target) {
    std::vector<int> d(R.node_count, -1);
    d[target] = 0;
    std::deque<int> q{target};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int arc : R.arcs_at[x]) {
        if (!arc_usable[arc]) continue;
        int y = other_arc_end(R, arc, x);
        if (d[y] >= 0) continue;
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
    return d;
  };

  auto offer = [&](const std::vector<int>& path_nodes,
                   const std::vector<int>& path_arcs, int i, int j) -> bool {
    if (--budget < 0)
      throw ContractViolation("sphere-cut split search budget exhausted");
    // Children: the path plus each boundary side.
    std::vector<int> c1 = path_nodes;
    for (int t = (j + 1) % L2; t != i; t = (t + 1) % L2) c1.push_back(r.cyc[t]);
    std::vector<int> c2 = path_nodes;
    for (int t = (j + L2 - 1) % L2; t != i; t = (t + L2 - 1) % L2)
      c2.push_back(r.cyc[t]);
    c1 = rotate_vertex_first(std::move(c1), R.primal);
    c2 = rotate_vertex_first(std::move(c2), R.primal);
    if (cycle_vertex_count(c1, R.primal) > w ||
        cycle_vertex_count(c2, R.primal) > w)
      return false;

    // Side assignment by flooding quads without crossing the theta curve.
    std::vector<char> blocked_arc(R.arc_ends.size(), 0);
    for (int c : boundary_crossings) blocked_arc[c] = 1;
    for (int c : path_arcs) blocked_arc[c] = 1;
    Dsu dsu(static_cast<int>(R.quad_arcs.size()));
    for (int c = 0; c < static_cast<int>(R.arc_ends.size()); ++c) {
      if (blocked_arc[c]) continue;
      if (!in_region[R.arc_edges[c][0]] || !in_region[R.arc_edges[c][1]]) continue;
      dsu.unite(R.arc_edges[c][0], R.arc_edges[c][1]);
    }
    std::map<int, int> comp_ids;
    std::vector<std::vector<EdgeId>> sides;
    for (EdgeId ed : r.edges) {
      int root = dsu.find(ed);
      auto it = comp_ids.find(root);
      if (it == comp_ids.end()) {
        it = comp_ids.emplace(root, static_cast<int>(sides.size())).first;
        sides.emplace_back();
      }
      sides[it->second].push_back(ed);
    }
    if (sides.size() != 2) return false;
    if (sides[0].empty() || sides[1].empty()) return false;

    auto vertex_set = [&](const std::vector<int>& cyc) {
      std::vector<VertexId> vs;
      for (int node : cyc)
        if (node < R.primal) vs.push_back(node);
      std::sort(vs.begin(), vs.end());
      return vs;
    };
    std::vector<VertexId> vs1 = vertex_set(c1), vs2 = vertex_set(c2);
    std::vector<VertexId> b0 = boundary(B.sub.emb.graph(), sides[0]);
    std::vector<VertexId> b1 = boundary(B.sub.emb.graph(), sides[1]);
    Region r1, r2;
    if (b0 == vs1 && b1 == vs2) {
      r1 = {sides[0], c1};
      r2 = {sides[1], c2};
    } else if (b0 == vs2 && b1 == vs1) {
      r1 = {sides[0], c2};
      r2 = {sides[1], c1};
    } else {
      return false;  // tangential touch: curve meets a vertex it does not separate
    }
    if (!region_completable(B, r1, w) || !region_completable(B, r2, w))
      return false;
    return attempt({r1, r2});
  };

  for (int len = 2; len <= 2 * w; ++len) {
    for (int i = 0; i < L2; ++i) {
      for (int j = i + 1; j < L2; ++j) {
        int p = r.cyc[i], q = r.cyc[j];
        std::vector<int> dq = dist_to(q);
        if (dq[p] < 0 || dq[p] > len) continue;
        // Depth-first over usable arcs for simple paths p -> q of exactly
        // `len` arcs with interior nodes off the boundary.
        std::vector<int> path_nodes{p};
        std::vector<int> path_arcs;
        std::vector<char> on_path(R.node_count, 0);
        on_path[p] = 1;
        bool done = false;
        std::function<void(int)> dfs = [&](int at) {
          if (done) return;
          int used = static_cast<int>(path_arcs.size());
          if (used == len) {
            if (at == q) done = offer(path_nodes, path_arcs, i, j);
            return;
          }
          if (dq[at] < 0 || dq[at] > len - used) return;
          for (int arc : R.arcs_at[at]) {
            if (done) return;
            if (!arc_usable[arc]) continue;
            int y = other_arc_end(R, arc, at);
            bool final_step = (used + 1 == len);
            if (final_step) {
              if (y != q) continue;
            } else {
              if (on_path[y] || on_boundary[y]) continue;
            }
            path_nodes.push_back(y);
            path_arcs.push_back(arc);
            on_path[y] = 1;
            dfs(y);
            on_path[y] = 0;
            path_arcs.pop_back();
            path_nodes.pop_back();
          }
        };
        dfs(p);
        if (done) return true;
      }
    }
  }
  return false;
}

struct BuiltNode {
  int parent = -1;
  EdgeId leaf = -1;             // local block edge id; -1 for internal nodes
  std::vector<int> cyc;         // boundary cycle of the subtree below
};

struct Built {
  std::vector<BuiltNode> nodes;  // nodes[0] is the root; parents precede children
};

std::optional<Built> build_region(const BlockCtx& B, const Region& r, int w,
                                  long long& budget) {
  if (r.edges.size() == 1) {
    return Built{{BuiltNode{-1, r.edges[0], r.cyc}}};
  }
  if (r.edges.size() == 2) {
    Built out;
    out.nodes.push_back(BuiltNode{-1, -1, r.cyc});
    out.nodes.push_back(BuiltNode{0, r.edges[0], quad_cycle(B, r.edges[0])});
    out.nodes.push_back(BuiltNode{0, r.edges[1], quad_cycle(B, r.edges[1])});
    return out;
  }
  std::optional<Built> result;
  try_splits(B, r, w, budget, [&](const Split& s) {
    auto left = build_region(B, s.r1, w, budget);
    if (!left) return false;
    auto right = build_region(B, s.r2, w, budget);
    if (!right) return false;
    Built merged;
    merged.nodes.push_back(BuiltNode{-1, -1, r.cyc});
    int off_left = static_cast<int>(merged.nodes.size());
    for (const BuiltNode& bn : left->nodes) {
      BuiltNode copy = bn;
      copy.parent = (bn.parent < 0) ? 0 : bn.parent + off_left;
      merged.nodes.push_back(std::move(copy));
    }
    int off_right = static_cast<int>(merged.nodes.size());
    for (const BuiltNode& bn : right->nodes) {
      BuiltNode copy = bn;
      copy.parent = (bn.parent < 0) ? 0 : bn.parent + off_right;
      merged.nodes.push_back(std::move(copy));
    }
    result = std::move(merged);
    return true;
  });
  return result;
}

// Lift a block-level boundary cycle to a whole-graph noose. Vertices map
// directly; each block face maps to the host face wrapping its region (the
// face at the first host corner inside the block corner's wedge), which is
// well defined because hanging blocks attach at single cut vertices and so
// never split the wrap face. Checked at both ends of every step.
Noose lift_cycle(const BlockCtx& B, const EmbeddedGraph& host,
                 const std::vector<int>& cyc) {
  const EmbeddedGraph& emb = B.sub.emb;
  int L2 = static_cast<int>(cyc.size());
  int l = L2 / 2;
  Noose out;
  for (int t = 0; t < l; ++t) {
    int v_local = cyc[2 * t];
    int f_local = cyc[2 * t + 1] - B.R.primal;
    int v2_local = cyc[(2 * t + 2) % L2];
    auto wrap_face = [&](int vl) {
      int cb = corner_of(B, vl, f_local);
      int pos_b = cb - emb.corner_offset[vl];
      EdgeId b0 = emb.rotation.rotation[vl][pos_b];
      VertexId gv = B.sub.vmap[vl];
      int pg = edge_position(host, gv, B.sub.emap[b0]);
      return host.face_of_corner[host.corner_id(gv, pg)];
    };
    int f = wrap_face(v_local);
    if (wrap_face(v2_local) != f)
      throw ContractViolation("block noose lift is inconsistent");
    out.vertices.push_back(B.sub.vmap[v_local]);
    out.faces.push_back(f);
  }
  return out;
}

// Length-1 noose around a hanging blob at cut vertex c: the blob's edges
// occupy one contiguous rotation interval there, and both flanking corners
// lie in the single host face wrapping the blob.
Noose blob_noose(const EmbeddedGraph& host, VertexId c,
                 const std::vector<char>& blob_edge) {
  const std::vector<EdgeId>& row = host.rotation.rotation[c];
  int d = static_cast<int>(row.size());
  int start = -1, cnt = 0;
  for (int p = 0; p < d; ++p) {
    if (blob_edge[row[p]] && !blob_edge[row[(p + d - 1) % d]]) {
      if (start != -1)
        throw ContractViolation("blocks interleave at a cut vertex");
      start = p;
    }
    if (blob_edge[row[p]]) ++cnt;
  }
  if (start < 0 || cnt == 0 || cnt == d)
    throw ContractViolation("hanging block has no wrap interval");
  int c_before = host.corner_id(c, (start + d - 1) % d);
  int c_after = host.corner_id(c, (start + cnt - 1) % d);
  int f = host.face_of_corner[c_before];
  if (host.face_of_corner[c_after] != f)
    throw ContractViolation("blob wrap face mismatch");
  return Noose{{c}, {f}};
}

// BdBuilder plus the adjacency mirror and per-tree-edge nooses the builder
// itself does not expose.
struct TrackedTree {
  BdBuilder bld;
  std::vector<std::set<int>> adj;
  std::map<std::pair<int, int>, Noose> nmap;

  void grow(int node) {
    if (static_cast<int>(adj.size()) <= node) adj.resize(node + 1);
  }
  int add_leaf(EdgeId e) {
    int id = bld.add_leaf(e);
    grow(id);
    return id;
  }
  int add_internal() {
    int id = bld.add_internal();
    grow(id);
    return id;
  }
  void connect(int a, int b, Noose ns) {
    bld.connect(a, b);
    adj[a].insert(b);
    adj[b].insert(a);
    nmap[std::minmax(a, b)] = std::move(ns);
  }
  int splice(int leaf) {
    if (adj[leaf].size() != 1)
      throw ContractViolation("splice target is not a leaf");
    int nb = *adj[leaf].begin();
    int mid = bld.splice_point_at(leaf);
    grow(mid);
    adj[leaf].erase(nb);
    adj[nb].erase(leaf);
    adj[leaf].insert(mid);
    adj[nb].insert(mid);
    adj[mid] = {leaf, nb};
    auto key = std::minmax(leaf, nb);
    Noose ns = nmap.at(key);
    nmap.erase(key);
    nmap[std::minmax(leaf, mid)] = ns;
    nmap[std::minmax(mid, nb)] = std::move(ns);
    return mid;
  }
  int absorb(const TrackedTree& other) {
    int off = bld.absorb(other.bld);
    grow(off + static_cast<int>(other.adj.size()) - 1);
    for (int a = 0; a < static_cast<int>(other.adj.size()); ++a)
      for (int b : other.adj[a]) adj[a + off].insert(b + off);
    for (const auto& kv : other.nmap)
      nmap[{kv.first.first + off, kv.first.second + off}] = kv.second;
    return off;
  }
};

// One block's sphere-cut tree, leaves labeled with host edge ids and nooses
// lifted to host faces.
TrackedTree build_block_tree(const BlockCtx& B, const EmbeddedGraph& host) {
  const Graph& g = B.sub.emb.graph();
  int mB = g.edge_count();
  TrackedTree T;
  EdgeId estar = 0;  // least host edge of the block, since emap ascends
  if (mB < 3)
    throw ContractViolation("two-connected block with fewer than three edges");
  Region rest;
  for (EdgeId ed = 1; ed < mB; ++ed) rest.edges.push_back(ed);
  rest.cyc = quad_cycle(B, estar);
  long long budget = 200000;
  std::optional<Built> built = build_region(B, rest, B.width, budget);
  if (!built)
    throw ContractViolation("sphere-cut split search failed at width " +
                            std::to_string(B.width));
  int star_leaf = T.add_leaf(B.sub.emap[estar]);
  std::vector<int> ids(built->nodes.size(), -1);
  for (int i = 0; i < static_cast<int>(built->nodes.size()); ++i) {
    const BuiltNode& bn = built->nodes[i];
    ids[i] = (bn.leaf >= 0) ? T.add_leaf(B.sub.emap[bn.leaf]) : T.add_internal();
    if (bn.parent >= 0)
      T.connect(ids[bn.parent], ids[i], lift_cycle(B, host, bn.cyc));
  }
  T.connect(star_leaf, ids[0], lift_cycle(B, host, rest.cyc));
  return T;
}

}  // namespace

SphereCutDecomposition sphere_cut_decomposition(const EmbeddedGraph& e) {
  check_game_input(e, "sphere_cut_decomposition");
  const Graph& g = e.graph();
  if (g.edge_count() == 0) {
    if (components(g).size() > 1)
      throw ContractViolation("sphere_cut_decomposition: input must be connected");
    return {};
  }
  if (components(g).size() != 1)
    throw ContractViolation("sphere_cut_decomposition: input must be connected");
  BlockForest bf = blocks(g);
  if (!bf.bridges.empty())
    throw ContractViolation(
        "sphere_cut_decomposition: bridge edge " +
        std::to_string(bf.bridges.front()) +
        " admits no noose (its leaf curve would cross one face twice)");

  NormalizedSphere nsph = normalize_sphere(e);
  const EmbeddedGraph& host = nsph.emb;

  int nb = static_cast<int>(bf.block_edges.size());
  std::vector<char> is_cut(g.vertex_count(), 0);
  for (VertexId v : bf.cut_vertices) is_cut[v] = 1;
  std::map<VertexId, std::vector<int>> blocks_at_cut;
  for (int b = 0; b < nb; ++b)
    for (VertexId v : bf.blocks[b])
      if (is_cut[v]) blocks_at_cut[v].push_back(b);

  // Breadth-first over the block-cut tree from block 0.
  std::vector<int> order;
  std::vector<VertexId> parent_cut(nb, -1);
  std::vector<char> visited(nb, 0);
  std::map<VertexId, int> owner_block;
  std::deque<int> bq{0};
  visited[0] = 1;
  while (!bq.empty()) {
    int b = bq.front();
    bq.pop_front();
    order.push_back(b);
    for (VertexId v : bf.blocks[b]) {
      if (!is_cut[v]) continue;
      if (!owner_block.count(v)) owner_block[v] = b;
      for (int b2 : blocks_at_cut[v]) {
        if (visited[b2]) continue;
        visited[b2] = 1;
        parent_cut[b2] = v;
        bq.push_back(b2);
      }
    }
  }
  if (static_cast<int>(order.size()) != nb)
    throw ContractViolation("block-cut tree walk missed a block");

  auto least_block_edge_at = [&](int b, VertexId c) {
    EdgeId best = -1;
    for (EdgeId ed : bf.block_edges[b]) {
      if (!g.is_end(ed, c)) continue;
      if (best < 0 || ed < best) best = ed;
    }
    if (best < 0)
      throw ContractViolation("cut vertex missing from its block's edges");
    return best;
  };

  TrackedTree global;
  bool first = true;
  for (int b : order) {
    BlockCtx ctx = make_block_ctx(host, bf.block_edges[b]);
    TrackedTree local = build_block_tree(ctx, host);
    if (first) {
      global = std::move(local);
      first = false;
      continue;
    }
    VertexId c = parent_cut[b];
    EdgeId pe = least_block_edge_at(owner_block.at(c), c);
    int mid = global.splice(global.bld.leaf_node(pe));
    int off = global.absorb(local);
    EdgeId ce = least_block_edge_at(b, c);
    int mid2 = global.splice(global.bld.leaf_node(ce));
    (void)off;
    std::vector<char> blob(g.edge_count(), 0);
    for (EdgeId ed : bf.block_edges[b]) blob[ed] = 1;
    global.connect(mid, mid2, blob_noose(host, c, blob));
  }

  SphereCutDecomposition out;
  out.bd = global.bld.freeze();
  for (auto& kv : global.nmap) {
    Noose ns = kv.second;
    for (int& f : ns.faces) f = nsph.face_to_input[f];
    out.nooses.emplace(kv.first, std::move(ns));
  }
  return out;
}

std::optional<std::string> validate_sphere_cut(const SphereCutDecomposition& scd,
                                               const EmbeddedGraph& e) {
  const Graph& g = e.graph();
  if (auto why = validate(scd.bd, g)) return "branch decomposition: " + *why;
  std::vector<std::pair<int, int>> edges = scd.bd.tree_edges();
  std::vector<std::vector<VertexId>> mids = middle_sets(scd.bd, g);
  std::set<std::pair<int, int>> present(edges.begin(), edges.end());
  for (const auto& kv : scd.nooses)
    if (!present.count(kv.first))
      return "noose attached to nonexistent tree edge " + edge_pair_text(kv.first);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto it = scd.nooses.find(edges[i]);
    if (it == scd.nooses.end())
      return "tree edge " + edge_pair_text(edges[i]) + " has no noose";
    const Noose& ns = it->second;
    if (auto why = validate_noose(e, ns))
      return "noose at tree edge " + edge_pair_text(edges[i]) + ": " + *why;
    std::vector<VertexId> nv = ns.vertices;
    std::sort(nv.begin(), nv.end());
    std::vector<VertexId> mid = mids[i];
    std::sort(mid.begin(), mid.end());
    if (nv != mid)
      return "noose vertex set differs from the middle set at tree edge " +
             edge_pair_text(edges[i]);
  }
  return std::nullopt;
}

}  // namespace ratnest
