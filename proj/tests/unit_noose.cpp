#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "ratnest/graph.hpp"
#include "ratnest/noose.hpp"
#include "ratnest/planarity.hpp"
#include "ratnest/surface.hpp"
#include "ratnest/util.hpp"

using namespace ratnest;
using fixtures::complete;
using fixtures::cycle;
using fixtures::projective_triangle;
using fixtures::torus_grid;

namespace {

int face_of_quad(const EmbeddedGraph& e, std::vector<VertexId> want) {
  int f = fixtures::face_of_quad(e, std::move(want));
  REQUIRE(f >= 0);
  return f;
}

}  // namespace

TEST_CASE("radial graph of the triangle") {
  EmbeddedGraph e = embed(plain_rotation(cycle(3)));
  RadialGraph rg = radial_graph(e);
  CHECK(rg.primal_count == 3);
  CHECK(rg.embedding.graph().vertex_count() == 5);
  CHECK(rg.embedding.graph().edge_count() == 6);
  CHECK(rg.embedding.genus == 0);
  for (EdgeId edge = 0; edge < rg.embedding.graph().edge_count(); ++edge) {
    auto [u, v] = rg.embedding.graph().ends(edge);
    CHECK(rg.is_face_node(u) != rg.is_face_node(v));
  }
  CHECK(rg.node_of_face(1) == 4);
  CHECK(rg.face_of_node(4) == 1);
}

TEST_CASE("radial graph of a single edge") {
  EmbeddedGraph e = embed(plain_rotation(Graph(2, {{0, 1}})));
  RadialGraph rg = radial_graph(e);
  CHECK(rg.embedding.graph().vertex_count() == 3);
  CHECK(rg.embedding.graph().edge_count() == 2);
  CHECK(rg.embedding.genus == 0);
}

TEST_CASE("radial graph of the three by three torus grid") {
  EmbeddedGraph e = torus_grid(3);
  REQUIRE(e.faces.count() == 9);
  REQUIRE(e.genus == 2);
  RadialGraph rg = radial_graph(e);
  CHECK(rg.embedding.graph().vertex_count() == 18);
  CHECK(rg.embedding.graph().edge_count() == 36);
  CHECK(rg.embedding.genus == 2);
}

TEST_CASE("radial graphs of sphere embeddings stay on the sphere") {
  Rng rng(7207);
  int seen = 0;
  for (int trial = 0; trial < 200 && seen < 60; ++trial) {
    int n = rng.range(3, 8);
    Graph g = fixtures::random_simple(rng, n, rng.range(n - 1, 3 * n - 6));
    if (components(g).size() > 1) continue;
    auto rs = planar_embed(g);
    if (!rs) continue;
    ++seen;
    EmbeddedGraph e = embed(*rs);
    REQUIRE(e.genus == 0);
    RadialGraph rg = radial_graph(e);
    CHECK(rg.embedding.genus == 0);
    CHECK(rg.embedding.graph().vertex_count() == n + e.faces.count());

    // Resigning one vertex changes the sign pattern but not the surface, and
    // must not change the radial surface either.
    RotationSystem flipped = *rs;
    VertexId v = rng.range(0, n - 1);
    std::reverse(flipped.rotation[v].begin(), flipped.rotation[v].end());
    for (EdgeId ed : flipped.rotation[v]) flipped.sign[ed] = -flipped.sign[ed];
    EmbeddedGraph ef = embed(flipped);
    REQUIRE(ef.genus == 0);
    RadialGraph rf = radial_graph(ef);
    CHECK(rf.embedding.genus == 0);
    CHECK(rf.embedding.graph().edge_count() == rg.embedding.graph().edge_count());
  }
  CHECK(seen >= 30);
}

TEST_CASE("noose validation") {
  EmbeddedGraph e = torus_grid(3);
  int f00 = face_of_quad(e, {0, 1, 3, 4});
  int f01 = face_of_quad(e, {1, 2, 4, 5});
  int f20 = face_of_quad(e, {6, 7, 0, 1});
  SUBCASE("a valid two step noose") {
    CHECK(validate_noose(e, Noose{{0, 1}, {f00, f20}}) == std::nullopt);
  }
  SUBCASE("repeated vertex") {
    CHECK(validate_noose(e, Noose{{0, 0}, {f00, f20}}).has_value());
  }
  SUBCASE("repeated face") {
    CHECK(validate_noose(e, Noose{{0, 1}, {f00, f00}}).has_value());
  }
  SUBCASE("missing incidence") {
    CHECK(validate_noose(e, Noose{{0, 1}, {f00, f01}}).has_value());  // 0 not on f01
  }
  SUBCASE("sizes must match") {
    CHECK(validate_noose(e, Noose{{0, 1}, {f00}}).has_value());
    CHECK(validate_noose(e, Noose{{}, {}}).has_value());
  }
  SUBCASE("single step needs a doubled incidence") {
    CHECK(validate_noose(e, Noose{{0}, {f00}}).has_value());
  }
  SUBCASE("out of range ids") {
    CHECK(validate_noose(e, Noose{{0, 99}, {f00, f20}}).has_value());
    CHECK(validate_noose(e, Noose{{0, 1}, {f00, 99}}).has_value());
  }
}

TEST_CASE("every noose on a sphere is contractible") {
  EmbeddedGraph e = embed(plain_rotation(cycle(3)));
  Noose ns{{0, 1}, {0, 1}};
  REQUIRE(validate_noose(e, ns) == std::nullopt);
  CHECK(is_contractible(e, ns));
  CHECK(shortest_noncontractible_noose(e) == std::nullopt);
  CHECK(least_noncontractible_of_length(e, 2) == std::nullopt);
}

TEST_CASE("circling one edge of the torus grid is contractible") {
  EmbeddedGraph e = torus_grid(3);
  Noose ns{{0, 3}, {face_of_quad(e, {0, 1, 3, 4}), face_of_quad(e, {2, 0, 5, 3})}};
  REQUIRE(validate_noose(e, ns) == std::nullopt);
  CHECK(is_contractible(e, ns));
  CHECK_THROWS_AS(cut_along_noose(e, ns), ContractViolation);
}

TEST_CASE("the meridian of the torus grid is not contractible") {
  EmbeddedGraph e = torus_grid(3);
  Noose meridian{{0, 3, 6},
                 {face_of_quad(e, {0, 1, 3, 4}), face_of_quad(e, {3, 4, 6, 7}),
                  face_of_quad(e, {6, 7, 0, 1})}};
  REQUIRE(validate_noose(e, meridian) == std::nullopt);
  CHECK_FALSE(is_contractible(e, meridian));
}

TEST_CASE("cutting the meridian leaves a planar cylinder") {
  EmbeddedGraph e = torus_grid(3);
  Noose meridian{{0, 3, 6},
                 {face_of_quad(e, {0, 1, 3, 4}), face_of_quad(e, {3, 4, 6, 7}),
                  face_of_quad(e, {6, 7, 0, 1})}};
  auto pieces = cut_along_noose(e, meridian);
  REQUIRE(pieces.size() == 1);
  const CutPiece& p = pieces[0];
  CHECK(p.embedding.graph().vertex_count() == 6);
  CHECK(p.embedding.graph().edge_count() == 9);
  CHECK(p.embedding.genus == 0);
  std::vector<VertexId> originals = p.vertex_map;
  std::sort(originals.begin(), originals.end());
  CHECK(originals == std::vector<VertexId>{1, 2, 4, 5, 7, 8});
  for (EdgeId edge = 0; edge < p.embedding.graph().edge_count(); ++edge) {
    auto [u, v] = p.embedding.graph().ends(edge);
    auto [ou, ov] = e.graph().ends(p.edge_map[edge]);
    CHECK(std::minmax(p.vertex_map[u], p.vertex_map[v]) == std::minmax(ou, ov));
  }
}

TEST_CASE("shortest noncontractible noose on the three by three torus grid") {
  EmbeddedGraph e = torus_grid(3);
  auto ns = shortest_noncontractible_noose(e);
  REQUIRE(ns.has_value());
  CHECK(ns->length() == 3);
  CHECK(ns->vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(validate_noose(e, *ns) == std::nullopt);
  CHECK_FALSE(is_contractible(e, *ns));
  auto again = shortest_noncontractible_noose(e);
  REQUIRE(again.has_value());
  CHECK(again->vertices == ns->vertices);
  CHECK(again->faces == ns->faces);
}

TEST_CASE("shortest noncontractible noose on the four by four torus grid") {
  EmbeddedGraph e = torus_grid(4);
  REQUIRE(e.genus == 2);
  auto ns = shortest_noncontractible_noose(e);
  REQUIRE(ns.has_value());
  CHECK(ns->length() == 4);
  CHECK(ns->vertices == std::vector<VertexId>{0, 1, 2, 3});
  CHECK_FALSE(is_contractible(e, *ns));
}

TEST_CASE("exhaustive lengths agree with the search on the torus grid") {
  EmbeddedGraph e = torus_grid(3);
  CHECK(least_noncontractible_of_length(e, 1) == std::nullopt);
  CHECK(least_noncontractible_of_length(e, 2) == std::nullopt);
  auto exact = least_noncontractible_of_length(e, 3);
  auto search = shortest_noncontractible_noose(e);
  REQUIRE(exact.has_value());
  REQUIRE(search.has_value());
  CHECK(exact->vertices == search->vertices);
  CHECK(exact->faces == search->faces);
}

TEST_CASE("the projective plane triangle pinches at one vertex") {
  EmbeddedGraph e = projective_triangle();
  REQUIRE(e.genus == 1);
  REQUIRE(e.faces.count() == 1);
  auto ns = shortest_noncontractible_noose(e);
  REQUIRE(ns.has_value());
  CHECK(ns->length() == 1);
  CHECK(ns->vertices == std::vector<VertexId>{0});
  CHECK_FALSE(is_contractible(e, *ns));
  auto exact = least_noncontractible_of_length(e, 1);
  REQUIRE(exact.has_value());
  CHECK(exact->vertices == ns->vertices);
  CHECK(exact->faces == ns->faces);
}

TEST_CASE("cutting the projective triangle leaves one edge") {
  EmbeddedGraph e = projective_triangle();
  auto ns = shortest_noncontractible_noose(e);
  REQUIRE(ns.has_value());
  auto pieces = cut_along_noose(e, *ns);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].embedding.graph().vertex_count() == 2);
  CHECK(pieces[0].embedding.graph().edge_count() == 1);
  CHECK(pieces[0].embedding.genus == 0);
  std::vector<VertexId> originals = pieces[0].vertex_map;
  std::sort(originals.begin(), originals.end());
  CHECK(originals == std::vector<VertexId>{1, 2});
}

TEST_CASE("a noose through every vertex cuts the graph away entirely") {
  EmbeddedGraph e = torus_grid(3);
  Noose spiral;
  spiral.vertices = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  spiral.faces = {face_of_quad(e, {0, 1, 3, 4}), face_of_quad(e, {1, 2, 4, 5}),
                  face_of_quad(e, {2, 0, 5, 3}), face_of_quad(e, {3, 4, 6, 7}),
                  face_of_quad(e, {4, 5, 7, 8}), face_of_quad(e, {5, 3, 8, 6}),
                  face_of_quad(e, {6, 7, 0, 1}), face_of_quad(e, {7, 8, 1, 2}),
                  face_of_quad(e, {8, 6, 2, 0})};
  REQUIRE(validate_noose(e, spiral) == std::nullopt);
  CHECK_FALSE(is_contractible(e, spiral));
  CHECK(cut_along_noose(e, spiral).empty());
}

TEST_CASE("searching a disconnected embedding is refused") {
  RotationSystem r = plain_rotation(Graph(4, {{0, 1}, {1, 2}, {2, 0}}));
  r.sign[1] = -1;
  EmbeddedGraph e = embed(r);
  REQUIRE(e.genus == 1);
  CHECK_THROWS_AS(shortest_noncontractible_noose(e), InputError);
}

TEST_CASE("invalid nooses are refused by the contractibility test") {
  EmbeddedGraph e = torus_grid(3);
  CHECK_THROWS_AS(is_contractible(e, Noose{{0, 0}, {0, 1}}), InputError);
  CHECK_THROWS_AS(cut_along_noose(e, Noose{{0, 0}, {0, 1}}), InputError);
}

TEST_CASE("planarity wrapper embeds what it accepts") {
  auto k4 = planar_embed(complete(4));
  REQUIRE(k4.has_value());
  CHECK(embed(*k4).genus == 0);
  CHECK(is_planar(complete(4)));

  CHECK(planar_embed(complete(5)) == std::nullopt);
  CHECK_FALSE(is_planar(complete(5)));

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) edges.emplace_back(i, 3 + j);
  CHECK(planar_embed(Graph(6, edges)) == std::nullopt);

  auto id = [](int r, int c) { return 3 * r + c; };
  std::vector<std::pair<VertexId, VertexId>> grid_edges;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) grid_edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < 3) grid_edges.emplace_back(id(r, c), id(r + 1, c));
    }
  auto grid = planar_embed(Graph(9, grid_edges));
  REQUIRE(grid.has_value());
  CHECK(embed(*grid).genus == 0);

  auto two = planar_embed(Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}));
  REQUIRE(two.has_value());
  CHECK(embed(*two).genus == 0);
}
