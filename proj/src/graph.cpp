#include "ratnest/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

namespace ratnest {

int thread_cap() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const char* env = std::getenv("RATNEST_THREADS");
  if (env && *env) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) return cap;
    if (cap >= 1) return cap;
  }
  return hw;
}

Graph::Graph(int n, std::vector<std::pair<VertexId, VertexId>> edges) : n_(n) {
  if (n < 1) throw InputError("graph must contain at least one vertex");
  ends_.reserve(edges.size());
  inc_.assign(n, {});
  std::map<std::pair<VertexId, VertexId>, int> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("loop edge rejected");
    auto key = std::minmax(u, v);
    if (!seen.emplace(key, 1).second) throw InputError("parallel edge rejected");
    EdgeId id = static_cast<EdgeId>(ends_.size());
    ends_.push_back(key);
    inc_[key.first].push_back(id);
    inc_[key.second].push_back(id);
  }
  // Insertion is in increasing edge id, so incident lists are already sorted.
}

VertexId Graph::check_vertex(VertexId v) const {
  if (v < 0 || v >= n_) throw InputError("vertex id out of range: " + std::to_string(v));
  return v;
}

EdgeId Graph::check_edge(EdgeId e) const {
  if (e < 0 || e >= edge_count()) throw InputError("edge id out of range: " + std::to_string(e));
  return e;
}

VertexId Graph::other_end(EdgeId e, VertexId v) const {
  auto [a, b] = ends(e);
  if (v == a) return b;
  if (v == b) return a;
  throw InputError("vertex not an end of edge");
}

bool Graph::is_end(EdgeId e, VertexId v) const {
  auto [a, b] = ends(e);
  return v == a || v == b;
}

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  for (EdgeId e : inc_[u])
    if (other_end(e, u) == v) return e;
  return -1;
}

std::vector<VertexId> boundary(const Graph& g, const std::vector<EdgeId>& s) {
  std::vector<char> in(g.edge_count(), 0);
  for (EdgeId e : s) in[g.check_edge(e)] = 1;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    bool ins = false, outs = false;
    for (EdgeId e : g.incident(v)) (in[e] ? ins : outs) = true;
    if (ins && outs) out.push_back(v);
  }
  return out;
}

namespace {

struct BlockDfs {
  const Graph& g;
  std::vector<int> num, low;
  std::vector<EdgeId> stack;
  std::vector<char> cut;
  std::vector<std::vector<EdgeId>> block_edges;
  int timer = 0;

  explicit BlockDfs(const Graph& g_)
      : g(g_), num(g_.vertex_count(), -1), low(g_.vertex_count(), 0), cut(g_.vertex_count(), 0) {}

  void run(VertexId root) {
    // Iterative lowpoint DFS; children counted at the root for the cut test.
    struct Frame {
      VertexId v;
      EdgeId via;
      size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({root, -1});
    num[root] = low[root] = timer++;
    int root_children = 0;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < g.incident(f.v).size()) {
        EdgeId e = g.incident(f.v)[f.next++];
        if (e == f.via) continue;
        VertexId w = g.other_end(e, f.v);
        if (num[w] == -1) {
          stack.push_back(e);
          num[w] = low[w] = timer++;
          if (f.v == root) ++root_children;
          frames.push_back({w, e});
        } else if (num[w] < num[f.v]) {
          stack.push_back(e);
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        Frame done = f;
        frames.pop_back();
        if (frames.empty()) break;
        Frame& parent = frames.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (low[done.v] >= num[parent.v]) {
          if (parent.v != root || root_children > 1) cut[parent.v] = 1;
          // Everything pushed after done.via belongs to this block.
          std::vector<EdgeId> blk;
          for (;;) {
            EdgeId e = stack.back();
            stack.pop_back();
            blk.push_back(e);
            if (e == done.via) break;
          }
          block_edges.push_back(std::move(blk));
        }
      }
    }
  }
};

}  // namespace

BlockForest blocks(const Graph& g) {
  BlockDfs dfs(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dfs.num[v] == -1 && g.degree(v) > 0) dfs.run(v);

  BlockForest out;
  for (auto& blk : dfs.block_edges) {
    std::sort(blk.begin(), blk.end());
    std::vector<VertexId> verts;
    for (EdgeId e : blk) {
      auto [a, b] = g.ends(e);
      verts.push_back(a);
      verts.push_back(b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (blk.size() == 1) out.bridges.push_back(blk[0]);
    out.blocks.push_back(std::move(verts));
    out.block_edges.push_back(std::move(blk));
  }
  std::vector<size_t> order(out.blocks.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return out.blocks[a] < out.blocks[b];
  });
  BlockForest sorted;
  sorted.bridges = out.bridges;
  std::sort(sorted.bridges.begin(), sorted.bridges.end());
  for (size_t i : order) {
    sorted.blocks.push_back(std::move(out.blocks[i]));
    sorted.block_edges.push_back(std::move(out.block_edges[i]));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dfs.cut[v]) sorted.cut_vertices.push_back(v);
  return sorted;
}

std::vector<std::vector<VertexId>> components(const Graph& g) {
  std::vector<int> comp(g.vertex_count(), -1);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<VertexId> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other_end(e, v);
        if (comp[w] == -1) {
          comp[w] = comp[v];
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
  std::vector<int> newid(g.vertex_count(), -1);
  for (size_t i = 0; i < keep.size(); ++i) newid[g.check_vertex(keep[i])] = static_cast<int>(i);
  InducedSubgraph out;
  out.vertex_map = keep;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    if (newid[a] != -1 && newid[b] != -1) {
      edges.emplace_back(newid[a], newid[b]);
      out.edge_map.push_back(e);
    }
  }
  out.graph = Graph(static_cast<int>(keep.size()), std::move(edges));
  return out;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> m) || kind != "graph" || n < 1 || m < 0)
        throw ParseError(lineno, "bad problem line");
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw ParseError(lineno, "bad edge line");
      if (n < 0) throw ParseError(lineno, "edge before problem line");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "edge endpoint out of range");
      if (u == v) throw ParseError(lineno, "loop edge");
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  if (static_cast<int>(edges.size()) != m) throw ParseError(lineno, "edge count mismatch");
  try {
    return Graph(n, std::move(edges));
  } catch (const InputError& err) {
    throw ParseError(lineno, err.what());
  }
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p graph " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    out << "e " << a + 1 << " " << b + 1 << "\n";
  }
  return out.str();
}

}  // namespace ratnest
