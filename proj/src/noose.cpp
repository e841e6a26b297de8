#include "ratnest/noose.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "ratnest/planarity.hpp"
#include "ratnest/util.hpp"

namespace ratnest {
namespace {

constexpr int kRealizationCap = 4096;

// Where each vertex sits on each face walk.
struct OccIndex {
  std::vector<std::map<VertexId, std::vector<int>>> occ;  // per face
  std::vector<std::vector<int>> faces_at_vertex;          // sorted distinct

  explicit OccIndex(const EmbeddedGraph& e) {
    occ.resize(e.faces.count());
    faces_at_vertex.resize(e.graph().vertex_count());
    for (int f = 0; f < e.faces.count(); ++f) {
      const FaceWalk& w = e.faces.faces[f];
      for (int p = 0; p < static_cast<int>(w.size()); ++p)
        occ[f][w[p].first].push_back(p);
      for (const auto& [v, positions] : occ[f]) {
        (void)positions;
        faces_at_vertex[v].push_back(f);
      }
    }
  }

  const std::vector<int>* positions(int f, VertexId v) const {
    auto it = occ[f].find(v);
    return it == occ[f].end() ? nullptr : &it->second;
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

// Cuts the surface along one corner realization of the noose and reports
// whether some side is a disk. The realization fixes, for each step i, the
// walk position s[i] where the curve leaves v_i into face f_i and the
// position t[i] where it enters v_{i+1}. Cells of the cut complex: vertices
// (noose vertices split in two), edges, faces (crossed faces split in two by
// the curve arc) and the two copies of each arc; piece Euler characteristics
// come straight from the cell counts.
bool realization_has_disk(const EmbeddedGraph& e, const Noose& ns,
                          const std::vector<int>& s, const std::vector<int>& t) {
  const Graph& g = e.graph();
  int n = g.vertex_count();
  int m = g.edge_count();
  int F = e.faces.count();
  int l = ns.length();

  std::vector<int> on_noose(n, -1), face_step(F, -1);
  for (int i = 0; i < l; ++i) on_noose[ns.vertices[i]] = i;
  for (int i = 0; i < l; ++i) face_step[ns.faces[i]] = i;

  // Local cut corners at each noose vertex: where the curve leaves (a) and
  // enters (b) in the rotation.
  std::vector<int> a(l), b(l);
  std::vector<std::map<EdgeId, int>> pos_at(l);
  for (int i = 0; i < l; ++i) {
    VertexId v = ns.vertices[i];
    int fi = ns.faces[i];
    int fprev = ns.faces[(i + l - 1) % l];
    a[i] = e.walk_corners[fi][s[i]] - e.corner_offset[v];
    b[i] = e.walk_corners[fprev][t[(i + l - 1) % l]] - e.corner_offset[v];
    if (a[i] == b[i])
      throw ContractViolation("noose realization does not cross a vertex");
    const std::vector<EdgeId>& rot = e.rotation.rotation[v];
    for (int j = 0; j < static_cast<int>(rot.size()); ++j) pos_at[i][rot[j]] = j;
  }

  // Cell ids and their Euler weights.
  int next = 0;
  std::vector<int> weight;
  auto cell = [&](int w) {
    weight.push_back(w);
    return next++;
  };
  std::vector<int> vcell(n, -1);
  std::vector<std::array<int, 2>> vcut(l), fcut(l), arc(l);
  for (VertexId v = 0; v < n; ++v)
    if (on_noose[v] < 0) vcell[v] = cell(+1);
  for (int i = 0; i < l; ++i) vcut[i] = {cell(+1), cell(+1)};
  std::vector<int> ecell(m);
  for (EdgeId ed = 0; ed < m; ++ed) ecell[ed] = cell(-1);
  std::vector<int> fcell(F, -1);
  for (int f = 0; f < F; ++f)
    if (face_step[f] < 0) fcell[f] = cell(+1);
  for (int i = 0; i < l; ++i) fcut[i] = {cell(+1), cell(+1)};
  for (int i = 0; i < l; ++i) arc[i] = {cell(-1), cell(-1)};

  // Side 0 of a cut vertex holds rotation positions (a, b]; side A of a cut
  // face holds walk positions [s, t).
  auto vertex_cell = [&](VertexId v, EdgeId via) {
    int i = on_noose[v];
    if (i < 0) return vcell[v];
    int d = g.degree(v);
    int j = pos_at[i].at(via);
    int qa = ((j - a[i]) % d + d) % d;
    int span = ((b[i] - a[i]) % d + d) % d;
    return vcut[i][qa >= 1 && qa <= span ? 0 : 1];
  };
  auto face_cell = [&](int f, int pos) {
    int i = face_step[f];
    if (i < 0) return fcell[f];
    int L = static_cast<int>(e.faces.faces[f].size());
    int qp = ((pos - s[i]) % L + L) % L;
    int span = ((t[i] - s[i]) % L + L) % L;
    return fcut[i][qp < span ? 0 : 1];
  };

  Dsu dsu(next);
  for (EdgeId ed = 0; ed < m; ++ed) {
    auto [lo, hi] = g.ends(ed);
    dsu.join(ecell[ed], vertex_cell(lo, ed));
    dsu.join(ecell[ed], vertex_cell(hi, ed));
  }
  for (int f = 0; f < F; ++f) {
    const FaceWalk& w = e.faces.faces[f];
    for (int p = 0; p < static_cast<int>(w.size()); ++p)
      dsu.join(ecell[w[p].second], face_cell(f, p));
  }
  for (int i = 0; i < l; ++i) {
    int f = ns.faces[i];
    const FaceWalk& w = e.faces.faces[f];
    int L = static_cast<int>(w.size());
    VertexId vi = ns.vertices[i];
    VertexId vn = ns.vertices[(i + 1) % l];
    EdgeId dep_s = w[s[i]].second;
    EdgeId arr_s = w[(s[i] + L - 1) % L].second;
    EdgeId dep_t = w[t[i]].second;
    EdgeId arr_t = w[(t[i] + L - 1) % L].second;
    dsu.join(arc[i][0], fcut[i][0]);
    dsu.join(arc[i][0], vertex_cell(vi, dep_s));
    dsu.join(arc[i][0], vertex_cell(vn, arr_t));
    dsu.join(arc[i][1], fcut[i][1]);
    dsu.join(arc[i][1], vertex_cell(vi, arr_s));
    dsu.join(arc[i][1], vertex_cell(vn, dep_t));
  }

  std::vector<int> chi(next, 0);
  std::vector<int> arcs_in(next, 0);
  for (int id = 0; id < next; ++id) chi[dsu.find(id)] += weight[id];
  for (int i = 0; i < l; ++i) {
    ++arcs_in[dsu.find(arc[i][0])];
    ++arcs_in[dsu.find(arc[i][1])];
  }
  int total = 0;
  for (int id = 0; id < next; ++id)
    if (dsu.find(id) == id) total += chi[id];
  if (total != n - m + F)
    throw ContractViolation("cut complex lost Euler characteristic");
  // A witness side must be a disk whose boundary runs along the curve once:
  // characteristic 1 and exactly one copy of each arc. A disk carrying both
  // copies is the one-sided case (boundary covers the curve twice), which
  // certifies nothing.
  for (int id = 0; id < next; ++id)
    if (dsu.find(id) == id && arcs_in[id] == l && chi[id] == 1) return true;
  return false;
}

// Visits corner realizations in lexicographic order until the visitor returns
// true; returns whether any visit did.
bool for_each_realization(const EmbeddedGraph& e, const Noose& ns, const OccIndex& occ,
                          const std::function<bool(const std::vector<int>&,
                                                   const std::vector<int>&)>& visit) {
  int l = ns.length();
  std::vector<const std::vector<int>*> exits(l), entries(l);
  long long count = 1;
  for (int i = 0; i < l; ++i) {
    exits[i] = occ.positions(ns.faces[i], ns.vertices[i]);
    entries[i] = occ.positions(ns.faces[i], ns.vertices[(i + 1) % l]);
    if (!exits[i] || !entries[i])
      throw ContractViolation("noose step without an incidence");
    count *= static_cast<long long>(exits[i]->size()) * entries[i]->size();
    if (count > kRealizationCap)
      throw ContractViolation("noose has too many corner realizations");
  }
  std::vector<size_t> ei(l, 0), ti(l, 0);
  std::vector<int> s(l), t(l);
  while (true) {
    bool ok = true;
    for (int i = 0; i < l; ++i) {
      s[i] = (*exits[i])[ei[i]];
      t[i] = (*entries[i])[ti[i]];
    }
    if (l == 1) {
      int f = ns.faces[0];
      ok = s[0] != t[0] && e.walk_corners[f][s[0]] != e.walk_corners[f][t[0]];
    }
    if (ok && visit(s, t)) return true;
    // Odometer over (s[0], t[0], s[1], t[1], ...), last digit fastest.
    int d = 2 * l - 1;
    for (; d >= 0; --d) {
      int i = d / 2;
      std::vector<size_t>& digit = d % 2 == 0 ? ei : ti;
      size_t limit = (d % 2 == 0 ? exits[i] : entries[i])->size();
      if (++digit[i] < limit) break;
      digit[i] = 0;
    }
    if (d < 0) return false;
  }
}

// Lexicographically least (vertex sequence first, then face sequence)
// non-contractible noose of exactly the given length, if any.
std::optional<Noose> least_noncontractible_impl(const EmbeddedGraph& e,
                                                const OccIndex& occ, int k) {
  const Graph& g = e.graph();
  int n = g.vertex_count();
  if (k == 1) {
    for (VertexId v = 0; v < n; ++v)
      for (int f : occ.faces_at_vertex[v]) {
        const std::vector<int>* ps = occ.positions(f, v);
        if (!ps || ps->size() < 2) continue;
        Noose ns{{v}, {f}};
        if (validate_noose(e, ns)) continue;
        if (!is_contractible(e, ns)) return ns;
      }
    return std::nullopt;
  }
  auto shared_faces = [&](VertexId x, VertexId y) {
    std::vector<int> out;
    const std::vector<int>& fa = occ.faces_at_vertex[x];
    const std::vector<int>& fb = occ.faces_at_vertex[y];
    std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                          std::back_inserter(out));
    return out;
  };

  std::vector<VertexId> path;
  std::vector<char> used(n, 0);
  std::vector<int> chosen_faces(k, -1);
  std::vector<char> face_used;
  std::optional<Noose> found;

  std::function<bool(int)> assign_face = [&](int step) {
    if (step == k) {
      Noose ns{path, chosen_faces};
      if (!is_contractible(e, ns)) {
        found = ns;
        return true;
      }
      return false;
    }
    for (int f : shared_faces(path[step], path[(step + 1) % k])) {
      if (face_used[f]) continue;
      face_used[f] = 1;
      chosen_faces[step] = f;
      if (assign_face(step + 1)) return true;
      face_used[f] = 0;
    }
    return false;
  };

  std::function<bool(VertexId)> extend = [&](VertexId start) {
    if (static_cast<int>(path.size()) == k) {
      if (shared_faces(path.back(), start).empty()) return false;
      face_used.assign(e.faces.count(), 0);
      return assign_face(0);
    }
    for (VertexId u = start + 1; u < n; ++u) {
      if (used[u] || shared_faces(path.back(), u).empty()) continue;
      used[u] = 1;
      path.push_back(u);
      if (extend(start)) return true;
      path.pop_back();
      used[u] = 0;
    }
    return false;
  };

  for (VertexId s = 0; s < n; ++s) {
    path.assign(1, s);
    used.assign(n, 0);
    used[s] = 1;
    if (extend(s)) return found;
  }
  return std::nullopt;
}

// Simple cycles (length >= 4) inside a closed radial walk, canonicalized over
// rotation and reflection.
void harvest_cycles(const std::vector<int>& walk, int radial_n,
                    std::set<std::vector<int>>* out) {
  std::vector<int> stack;
  std::vector<int> pos(radial_n, -1);
  for (int w : walk) {
    if (pos[w] < 0) {
      pos[w] = static_cast<int>(stack.size());
      stack.push_back(w);
      continue;
    }
    int from = pos[w];
    int len = static_cast<int>(stack.size()) - from;
    if (len >= 4) {
      std::vector<int> cyc(stack.begin() + from, stack.end());
      std::vector<int> best = cyc;
      std::vector<int> rev(cyc.rbegin(), cyc.rend());
      for (int r = 0; r < len; ++r) {
        std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
        if (cyc < best) best = cyc;
        std::rotate(rev.begin(), rev.begin() + 1, rev.end());
        if (rev < best) best = rev;
      }
      out->insert(std::move(best));
    }
    while (static_cast<int>(stack.size()) > from + 1) {
      pos[stack.back()] = -1;
      stack.pop_back();
    }
  }
}

Noose noose_from_radial_cycle(const RadialGraph& rg, std::vector<int> cyc) {
  if (rg.is_face_node(cyc.front()))
    std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  Noose ns;
  for (size_t i = 0; i < cyc.size(); i += 2) {
    ns.vertices.push_back(cyc[i]);
    ns.faces.push_back(rg.face_of_node(cyc[i + 1]));
  }
  return ns;
}

}  // namespace

RadialGraph radial_graph(const EmbeddedGraph& e) {
  const Graph& g = e.graph();
  if (components(g).size() > 1)
    throw InputError("radial graph requires a connected embedding");
  int n = g.vertex_count();
  int F = e.faces.count();

  // Mark each corner with the direction the face walk crosses it: along the
  // vertex rotation (the corner position holds the arriving edge) or against
  // it. A crossing along the rotation hands the face disk the opposite local
  // orientation through that spoke, so the radial edge sign is -1 on mark 0
  // and +1 on mark 1; that keeps the radial embedding on the surface of e no
  // matter which way each stored walk happens to run. Collapsing repeated
  // incidences to one edge can only lower the genus, never raise it.
  std::vector<int> corner_mark(e.corner_count(), -1);
  for (int f = 0; f < F; ++f) {
    const FaceWalk& w = e.faces.faces[f];
    int L = static_cast<int>(w.size());
    for (int k = 0; k < L; ++k) {
      VertexId v = w[k].first;
      EdgeId dep = w[k].second;
      EdgeId arr = w[(k - 1 + L) % L].second;
      int c = e.walk_corners[f][k];
      EdgeId at_corner = e.rotation.rotation[v][c - e.corner_id(v, 0)];
      if (at_corner == arr)
        corner_mark[c] = 0;
      else if (at_corner == dep)
        corner_mark[c] = 1;
      else
        throw ContractViolation("face walk corner detached from its rotation");
    }
  }

  std::map<std::pair<int, int>, int> kept;  // (vertex, face) -> lowest corner
  for (VertexId v = 0; v < n; ++v)
    for (int i = 0; i < g.degree(v); ++i) {
      int c = e.corner_id(v, i);
      kept.try_emplace(std::pair{static_cast<int>(v), e.face_of_corner[c]}, c);
    }

  std::map<std::pair<int, int>, EdgeId> eid;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<int> signs;
  for (const auto& [vf, c] : kept) {
    eid[vf] = static_cast<EdgeId>(edges.size());
    edges.emplace_back(vf.first, n + vf.second);
    signs.push_back(corner_mark[c] == 0 ? -1 : 1);
  }
  Graph rg(n + F, edges);
  RotationSystem rs;
  rs.graph = rg;
  rs.sign = signs;
  rs.rotation.resize(n + F);
  for (VertexId v = 0; v < n; ++v)
    for (int i = 0; i < g.degree(v); ++i) {
      int c = e.corner_id(v, i);
      std::pair<int, int> key{static_cast<int>(v), e.face_of_corner[c]};
      if (kept.at(key) == c) rs.rotation[v].push_back(eid.at(key));
    }
  for (int f = 0; f < F; ++f) {
    const FaceWalk& w = e.faces.faces[f];
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
      int c = e.walk_corners[f][k];
      std::pair<int, int> key{static_cast<int>(w[k].first), f};
      if (kept.at(key) == c) rs.rotation[n + f].push_back(eid.at(key));
    }
  }

  RadialGraph out;
  out.embedding = embed(rs);
  out.primal_count = n;
  return out;
}

std::optional<std::string> validate_noose(const EmbeddedGraph& e, const Noose& ns) {
  const Graph& g = e.graph();
  int l = ns.length();
  if (l == 0) return "empty noose";
  if (static_cast<int>(ns.faces.size()) != l)
    return "vertex and face counts differ";
  for (VertexId v : ns.vertices)
    if (v < 0 || v >= g.vertex_count()) return "vertex id out of range";
  for (int f : ns.faces)
    if (f < 0 || f >= e.faces.count()) return "face id out of range";
  std::vector<VertexId> vs = ns.vertices;
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    return "repeated vertex";
  std::vector<int> fs = ns.faces;
  std::sort(fs.begin(), fs.end());
  if (std::adjacent_find(fs.begin(), fs.end()) != fs.end())
    return "repeated face";

  OccIndex occ(e);
  for (int i = 0; i < l; ++i) {
    if (!occ.positions(ns.faces[i], ns.vertices[i]))
      return "vertex " + std::to_string(ns.vertices[i]) + " does not touch face " +
             std::to_string(ns.faces[i]);
    if (!occ.positions(ns.faces[i], ns.vertices[(i + 1) % l]))
      return "vertex " + std::to_string(ns.vertices[(i + 1) % l]) +
             " does not touch face " + std::to_string(ns.faces[i]);
  }
  if (l == 1) {
    const std::vector<int>& ps = *occ.positions(ns.faces[0], ns.vertices[0]);
    bool transverse = false;
    for (size_t x = 0; x < ps.size() && !transverse; ++x)
      for (size_t y = x + 1; y < ps.size() && !transverse; ++y)
        transverse = e.walk_corners[ns.faces[0]][ps[x]] !=
                     e.walk_corners[ns.faces[0]][ps[y]];
    if (!transverse) return "noose cannot cross its only vertex";
  }
  return std::nullopt;
}

bool is_contractible(const EmbeddedGraph& e, const Noose& ns) {
  if (auto why = validate_noose(e, ns)) throw InputError("noose: " + *why);
  if (e.genus == 0) return true;
  OccIndex occ(e);
  bool noncontractible = for_each_realization(
      e, ns, occ, [&](const std::vector<int>& s, const std::vector<int>& t) {
        return !realization_has_disk(e, ns, s, t);
      });
  return !noncontractible;
}

std::optional<Noose> shortest_noncontractible_noose(const EmbeddedGraph& e) {
  if (e.genus == 0) return std::nullopt;
  const Graph& g = e.graph();
  if (components(g).size() > 1)
    throw InputError("noose search requires a connected embedding");
  OccIndex occ(e);

  if (auto one = least_noncontractible_impl(e, occ, 1)) return one;

  // Candidate pool: for every radial root, BFS-tree loops through each
  // non-tree edge, decomposed into simple cycles. Some minimum-length
  // non-contractible cycle always lands in the pool, which pins the length;
  // the final answer is then re-derived by exhaustive enumeration at that
  // length so the tie-break is canonical.
  RadialGraph rg = radial_graph(e);
  const Graph& R = rg.embedding.graph();
  int rn = R.vertex_count();

  auto collect = [&](int lo, int hi, std::set<std::vector<int>>* out) {
    std::vector<int> parent_edge(rn), dist(rn);
    for (int r0 = lo; r0 < hi; ++r0) {
      std::fill(parent_edge.begin(), parent_edge.end(), -2);
      parent_edge[r0] = -1;
      std::vector<int> queue = {r0};
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (EdgeId ed : R.incident(u)) {
          int w = R.other_end(ed, u);
          if (parent_edge[w] != -2) continue;
          parent_edge[w] = ed;
          queue.push_back(w);
        }
      }
      auto path_to_root = [&](int x) {
        std::vector<int> p = {x};
        while (parent_edge[x] >= 0) {
          x = R.other_end(parent_edge[x], x);
          p.push_back(x);
        }
        return p;  // x .. r0
      };
      for (EdgeId ed = 0; ed < R.edge_count(); ++ed) {
        auto [x, y] = R.ends(ed);
        if (parent_edge[x] == ed || parent_edge[y] == ed) continue;
        std::vector<int> px = path_to_root(x);  // x .. r0
        std::vector<int> py = path_to_root(y);  // y .. r0
        std::vector<int> walk(px.rbegin(), px.rend());  // r0 .. x
        walk.insert(walk.end(), py.begin(), py.end());  // + y .. r0
        harvest_cycles(walk, rn, out);
      }
    }
  };

  int workers = std::max(1, std::min(thread_cap(), rn));
  std::vector<std::set<std::vector<int>>> pools(workers);
  if (workers == 1) {
    collect(0, rn, &pools[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      int lo = rn * w / workers;
      int hi = rn * (w + 1) / workers;
      threads.emplace_back(collect, lo, hi, &pools[w]);
    }
    for (std::thread& th : threads) th.join();
  }
  std::set<std::vector<int>> pool;
  for (auto& p : pools) pool.merge(p);

  std::vector<const std::vector<int>*> ordered;
  for (const auto& cyc : pool) ordered.push_back(&cyc);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const std::vector<int>* a, const std::vector<int>* b) {
                     return a->size() < b->size();
                   });
  int k = -1;
  for (const std::vector<int>* cyc : ordered) {
    Noose ns = noose_from_radial_cycle(rg, *cyc);
    if (validate_noose(e, ns)) continue;
    if (!is_contractible(e, ns)) {
      k = ns.length();
      break;
    }
  }
  if (k < 0)
    throw ContractViolation("positive genus but no non-contractible noose found");
  std::optional<Noose> best = least_noncontractible_impl(e, occ, k);
  if (!best)
    throw ContractViolation("noose enumeration missed the pooled length");
  return best;
}

std::optional<Noose> least_noncontractible_of_length(const EmbeddedGraph& e, int length) {
  if (length < 1) throw InputError("noose length must be positive");
  OccIndex occ(e);
  return least_noncontractible_impl(e, occ, length);
}

std::vector<CutPiece> cut_along_noose(const EmbeddedGraph& e, const Noose& ns) {
  if (auto why = validate_noose(e, ns)) throw InputError("noose: " + *why);
  if (is_contractible(e, ns))
    throw ContractViolation("cutting along a contractible noose");
  const Graph& g = e.graph();

  std::vector<char> gone(g.vertex_count(), 0);
  for (VertexId v : ns.vertices) gone[v] = 1;
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!gone[v]) keep.push_back(v);

  std::vector<CutPiece> pieces;
  if (!keep.empty()) {
    InducedSubgraph rem = induced_subgraph(g, keep);
    for (const std::vector<VertexId>& comp : components(rem.graph)) {
      InducedSubgraph sub = induced_subgraph(rem.graph, comp);
      CutPiece piece;
      piece.vertex_map.resize(sub.graph.vertex_count());
      for (VertexId v = 0; v < sub.graph.vertex_count(); ++v)
        piece.vertex_map[v] = rem.vertex_map[sub.vertex_map[v]];
      piece.edge_map.resize(sub.graph.edge_count());
      std::map<EdgeId, EdgeId> local_of;
      for (EdgeId ed = 0; ed < sub.graph.edge_count(); ++ed) {
        piece.edge_map[ed] = rem.edge_map[sub.edge_map[ed]];
        local_of[piece.edge_map[ed]] = ed;
      }
      RotationSystem rs;
      rs.graph = sub.graph;
      rs.rotation.resize(sub.graph.vertex_count());
      for (VertexId v = 0; v < sub.graph.vertex_count(); ++v)
        for (EdgeId orig : e.rotation.rotation[piece.vertex_map[v]]) {
          auto it = local_of.find(orig);
          if (it != local_of.end()) rs.rotation[v].push_back(it->second);
        }
      rs.sign.resize(sub.graph.edge_count());
      for (EdgeId ed = 0; ed < sub.graph.edge_count(); ++ed)
        rs.sign[ed] = e.rotation.sign[piece.edge_map[ed]];
      piece.embedding = embed(rs);
      if (piece.embedding.genus > 0)
        if (auto flat = planar_embed(sub.graph)) piece.embedding = embed(*flat);
      pieces.push_back(std::move(piece));
    }
  }
  int total = 0;
  for (const CutPiece& p : pieces) total += p.embedding.genus;
  if (total >= e.genus)
    throw ContractViolation("cut along the noose did not reduce total genus");
  return pieces;
}

}  // namespace ratnest
