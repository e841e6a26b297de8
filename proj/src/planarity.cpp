#include "ratnest/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

#include "ratnest/util.hpp"

namespace ratnest {
namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

BoostGraph to_boost(const Graph& g) {
  BoostGraph bg(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.ends(e);
    boost::add_edge(u, v, e, bg);
  }
  return bg;
}

}  // namespace

bool is_planar(const Graph& g) {
  BoostGraph bg = to_boost(g);
  return boost::boyer_myrvold_planarity_test(bg);
}

std::optional<RotationSystem> planar_embed(const Graph& g) {
  BoostGraph bg = to_boost(g);
  using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> order(boost::num_vertices(bg));
  auto order_map = boost::make_iterator_property_map(
      order.begin(), boost::get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(
          boost::boyer_myrvold_params::graph = bg,
          boost::boyer_myrvold_params::embedding = order_map))
    return std::nullopt;

  RotationSystem rs;
  rs.graph = g;
  rs.rotation.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const EdgeDesc& ed : order[v])
      rs.rotation[v].push_back(boost::get(boost::edge_index, bg, ed));
  rs.sign.assign(g.edge_count(), 1);
  if (embed(rs).genus != 0)
    throw ContractViolation("planar embedding came back with positive genus");
  return rs;
}

}  // namespace ratnest
