#include "ratnest/surface.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ratnest/util.hpp"

namespace ratnest {
namespace {

// Traversal state: a directed edge plus a parity bit. Parity flips whenever
// the walk crosses a sign -1 edge; it selects successor vs predecessor in the
// rotation at the head. State ids order edge-sides lexicographically, which
// fixes the face numbering.
struct Tracer {
  const RotationSystem& r;
  int m;
  std::vector<int> pos_offset;   // per vertex, prefix sums of degree
  std::vector<int> edge_pos_lo;  // position of e in the rotation at its lo end
  std::vector<int> edge_pos_hi;

  explicit Tracer(const RotationSystem& rs) : r(rs) {
    const Graph& g = r.graph;
    m = g.edge_count();
    pos_offset.assign(g.vertex_count() + 1, 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      pos_offset[v + 1] = pos_offset[v] + static_cast<int>(r.rotation[v].size());
    edge_pos_lo.assign(m, -1);
    edge_pos_hi.assign(m, -1);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      for (int i = 0; i < static_cast<int>(r.rotation[v].size()); ++i) {
        EdgeId e = r.rotation[v][i];
        (r.graph.ends(e).second == v ? edge_pos_hi : edge_pos_lo)[e] = i;
      }
  }

  int corner_total() const { return pos_offset.back(); }

  // dir 0 points lo -> hi.
  VertexId tail(EdgeId e, int dir) const {
    auto [lo, hi] = r.graph.ends(e);
    return dir == 0 ? lo : hi;
  }

  static int state_id(EdgeId e, int dir, int p) { return (e * 2 + dir) * 2 + p; }

  // Returns the next state and reports the corner consumed at the head.
  int step(int state, int* corner) const {
    EdgeId e = state / 4;
    int dir = (state / 2) % 2;
    int p = state % 2;
    auto [lo, hi] = r.graph.ends(e);
    VertexId v = dir == 0 ? hi : lo;
    int q = r.sign[e] < 0 ? p ^ 1 : p;
    const std::vector<EdgeId>& rot = r.rotation[v];
    int deg = static_cast<int>(rot.size());
    int i = dir == 0 ? edge_pos_hi[e] : edge_pos_lo[e];
    int j = q == 0 ? (i + 1) % deg : (i + deg - 1) % deg;
    *corner = pos_offset[v] + (q == 0 ? i : j);
    EdgeId e2 = rot[j];
    int dir2 = r.graph.ends(e2).first == v ? 0 : 1;
    return state_id(e2, dir2, q);
  }
};

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int a) {
    while (up[a] != a) a = up[a] = up[up[a]];
    return a;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) up[std::max(a, b)] = std::min(a, b);
  }
};

// Orbits of the tracing map, grouped into faces. Each face consists of an
// orbit and its distinct mirror orbit, detected by the corner they share; the
// lower-numbered orbit of each pair carries the reported walk.
struct TraceResult {
  std::vector<int> face_of_state;   // 4m entries
  std::vector<int> face_of_corner;  // 2m entries
  FaceSet faces;
  std::vector<std::vector<int>> walk_corners;
};

TraceResult trace_core(const RotationSystem& r) {
  Tracer tr(r);
  int states = 4 * tr.m;
  std::vector<int> orbit_of(states, -1);
  std::vector<int> orbit_start;
  std::vector<std::array<int, 2>> corner_claims(tr.corner_total(), {-1, -1});
  for (int s0 = 0; s0 < states; ++s0) {
    if (orbit_of[s0] >= 0) continue;
    int id = static_cast<int>(orbit_start.size());
    orbit_start.push_back(s0);
    int s = s0;
    do {
      orbit_of[s] = id;
      int corner = -1;
      s = tr.step(s, &corner);
      auto& claim = corner_claims[corner];
      if (claim[0] < 0)
        claim[0] = id;
      else if (claim[1] < 0)
        claim[1] = id;
      else
        throw ContractViolation("face tracing consumed a corner three times");
    } while (s != s0);
  }
  int orbits = static_cast<int>(orbit_start.size());
  Dsu groups(orbits);
  for (const auto& claim : corner_claims) {
    if (claim[0] < 0 || claim[1] < 0)
      throw ContractViolation("face tracing left a corner unconsumed");
    groups.join(claim[0], claim[1]);
  }
  std::vector<int> members(orbits, 0);
  for (int o = 0; o < orbits; ++o) ++members[groups.find(o)];

  TraceResult out;
  std::vector<int> face_of_root(orbits, -1);
  int next_face = 0;
  for (int o = 0; o < orbits; ++o) {
    if (groups.find(o) != o) continue;
    if (members[o] != 2)
      throw ContractViolation("face orbit is not paired with a distinct mirror");
    face_of_root[o] = next_face++;
    FaceWalk walk;
    std::vector<int> corners_after;  // corner consumed stepping past position i
    int s = orbit_start[o];
    do {
      EdgeId e = s / 4;
      int dir = (s / 2) % 2;
      walk.emplace_back(tr.tail(e, dir), e);
      int corner = -1;
      s = tr.step(s, &corner);
      corners_after.push_back(corner);
    } while (s != orbit_start[o]);
    // The corner after position i is the one the walk holds at position i+1.
    int len = static_cast<int>(walk.size());
    std::vector<int> at(len, -1);
    for (int i = 0; i < len; ++i) at[(i + 1) % len] = corners_after[i];
    out.faces.faces.push_back(std::move(walk));
    out.walk_corners.push_back(std::move(at));
  }
  out.face_of_state.assign(states, -1);
  for (int s = 0; s < states; ++s)
    out.face_of_state[s] = face_of_root[groups.find(orbit_of[s])];
  out.face_of_corner.assign(tr.corner_total(), -1);
  for (int c = 0; c < tr.corner_total(); ++c)
    out.face_of_corner[c] = face_of_root[groups.find(corner_claims[c][0])];

  int positions = 0;
  for (const FaceWalk& w : out.faces.faces) positions += static_cast<int>(w.size());
  if (positions != 2 * tr.m)
    throw ContractViolation("face walks do not cover every edge side exactly once");
  return out;
}

}  // namespace

std::optional<std::string> validate_rotation(const RotationSystem& r) {
  const Graph& g = r.graph;
  if (static_cast<int>(r.rotation.size()) != g.vertex_count())
    return "rotation list count differs from vertex count";
  if (static_cast<int>(r.sign.size()) != g.edge_count())
    return "sign count differs from edge count";
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (r.sign[e] != 1 && r.sign[e] != -1)
      return "sign of edge " + std::to_string(e) + " is not +1 or -1";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeId> got = r.rotation[v];
    std::sort(got.begin(), got.end());
    if (got != g.incident(v))
      return "rotation at vertex " + std::to_string(v) +
             " is not a permutation of its incident edges";
  }
  return std::nullopt;
}

FaceSet trace_faces(const RotationSystem& r) {
  if (auto why = validate_rotation(r)) throw InputError("rotation system: " + *why);
  return trace_core(r).faces;
}

EmbeddedGraph embed(const RotationSystem& r) {
  if (auto why = validate_rotation(r)) throw InputError("rotation system: " + *why);
  TraceResult t = trace_core(r);

  EmbeddedGraph eg;
  eg.rotation = r;
  eg.faces = std::move(t.faces);
  const Graph& g = eg.rotation.graph;

  eg.corner_offset.assign(g.vertex_count() + 1, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    eg.corner_offset[v + 1] =
        eg.corner_offset[v] + static_cast<int>(r.rotation[v].size());
  eg.face_of_corner = std::move(t.face_of_corner);
  eg.walk_corners = std::move(t.walk_corners);
  eg.edge_faces.assign(g.edge_count(), {-1, -1});
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    eg.edge_faces[e] = {t.face_of_state[Tracer::state_id(e, 0, 0)],
                        t.face_of_state[Tracer::state_id(e, 0, 1)]};

  // Euler genus, summed per component; edgeless components sit on a sphere.
  std::vector<int> comp(g.vertex_count(), -1);
  int comps = 0;
  for (const std::vector<VertexId>& members : components(g)) {
    for (VertexId v : members) comp[v] = comps;
    ++comps;
  }
  std::vector<int> nc(comps, 0), mc(comps, 0), fc(comps, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++nc[comp[v]];
  for (EdgeId e = 0; e < g.edge_count(); ++e) ++mc[comp[g.ends(e).first]];
  for (const FaceWalk& w : eg.faces.faces) ++fc[comp[w.front().first]];
  eg.genus = 0;
  for (int c = 0; c < comps; ++c) {
    if (mc[c] == 0) continue;
    int gc = 2 - nc[c] + mc[c] - fc[c];
    if (gc < 0) throw ContractViolation("negative Euler genus for a component");
    eg.genus += gc;
  }
  return eg;
}

int embedding_genus(const EmbeddedGraph& e) { return e.genus; }

RotationSystem normalize_signs(const RotationSystem& r) {
  if (auto why = validate_rotation(r)) throw InputError("rotation system: " + *why);
  RotationSystem out = r;
  const Graph& g = out.graph;
  auto flip = [&](VertexId v) {
    std::reverse(out.rotation[v].begin(), out.rotation[v].end());
    for (EdgeId e : g.incident(v)) out.sign[e] = -out.sign[e];
  };
  std::vector<char> seen(g.vertex_count(), 0);
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<VertexId> queue = {root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId u = queue[qi];
      for (EdgeId e : g.incident(u)) {
        VertexId w = g.other_end(e, u);
        if (seen[w]) continue;
        seen[w] = 1;
        if (out.sign[e] < 0) flip(w);
        queue.push_back(w);
      }
    }
  }
  return out;
}

RotationSystem plain_rotation(const Graph& g) {
  RotationSystem r;
  r.graph = g;
  r.rotation.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) r.rotation[v] = g.incident(v);
  r.sign.assign(g.edge_count(), 1);
  return r;
}

}  // namespace ratnest
