#include <bit>
#include <set>

#include "doctest.h"
#include "hsm/hsg.hpp"

using namespace hsm;

namespace {

// srg(50,7,0,1): adjacent pairs have no common neighbour, others exactly one.
bool strongly_regular_0_1(const Graph& g) {
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b = a + 1; b < g.vertex_count(); ++b) {
      const int common = std::popcount(g.neighbor_mask(a) & g.neighbor_mask(b));
      if (common != (g.adjacent(a, b) ? 0 : 1)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("Petersen invariants") {
  const auto p = build_petersen();
  const auto inv = graph_invariants(p);
  CHECK(inv.vertex_count == 10);
  CHECK(inv.edge_count == 15);
  CHECK(inv.min_degree == 3);
  CHECK(inv.max_degree == 3);
  CHECK(inv.girth == 5);
  CHECK(inv.diameter == 2);
  CHECK(automorphism_order(p) == 120);
}

TEST_CASE("HSG invariants") {
  const auto g = build_hsg();
  const auto inv = graph_invariants(g);
  CHECK(inv.vertex_count == 50);
  CHECK(inv.edge_count == 175);
  CHECK(inv.min_degree == 7);
  CHECK(inv.max_degree == 7);
  CHECK(inv.girth == 5);
  CHECK(inv.diameter == 2);
  CHECK(strongly_regular_0_1(g));
}

TEST_CASE("small graphs and disconnected input") {
  Graph k1(1);
  CHECK(graph_invariants(k1).diameter == 0);
  CHECK_FALSE(graph_invariants(k1).girth.has_value());
  const auto k2 = Graph::from_edges(2, {{0, 1}});
  CHECK(graph_invariants(k2).diameter == 1);
  CHECK(automorphism_order(k2) == 2);
  const auto c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(automorphism_order(c5) == 10);
  CHECK(girth(c5) == 5);
  CHECK_THROWS_AS(graph_invariants(Graph(2)), DisconnectedGraph);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("HSG automorphism group and vertex transitivity") {
  const auto g = build_hsg();
  CHECK(automorphism_order(g) == 252000);
  std::set<int> orbit;
  for (int w = 0; w < 50; ++w) {
    const auto a = find_automorphism(g, {{0, w}});
    if (a && is_automorphism(g, *a)) orbit.insert((*a)[0]);
  }
  CHECK(orbit.size() == 50);
}

TEST_CASE("pentagon census") {
  const auto g = build_hsg();
  const auto c = pentagon_census(g);
  CHECK(c.three_paths == 6300);
  CHECK(c.unique_completion);
  CHECK(c.pentagon_count() == 1260);
  CHECK(enumerate_pentagons(build_petersen()).size() == 12);
}

TEST_CASE("Petersen extension: single case and exhaustive census") {
  const auto g = build_hsg();
  const auto pents = enumerate_pentagons(g);
  const auto& p = pents.front();
  int out = -1;
  for (int y : g.neighbors(p[0]))
    if (std::find(p.begin(), p.end(), y) == p.end()) out = y;
  const auto m = petersen_extension(g, p, {p[0], out});
  CHECK(std::popcount(m) == 10);
  CHECK(induces_petersen(g, m));
  CHECK_THROWS_AS(petersen_extension(g, p, {p[0], p[1]}), std::invalid_argument);

  const auto census = petersen_census(g, 2);
  CHECK(census.cases == 31500);
  CHECK(census.unique_cases == 31500);
  CHECK(census.subgraph_count == 525);
  CHECK(census.min_per_pentagon == 5);
  CHECK(census.max_per_pentagon == 5);
  CHECK(census.pentagons_per_subgraph == 12);
}

TEST_CASE("edge frame and W structure") {
  const auto g = build_hsg();
  const auto f = edge_frame(g, 0, 1);
  CHECK(std::is_sorted(f.u_nbrs.begin(), f.u_nbrs.end()));
  CHECK(std::is_sorted(f.v_nbrs.begin(), f.v_nbrs.end()));
  std::set<int> ws;
  for (const auto& row : f.w_at)
    for (int w : row) ws.insert(w);
  CHECK(ws.size() == 36);
  CHECK_THROWS_AS(edge_frame(g, 0, 2), std::invalid_argument);

  const auto syl = sylvester_checks(g, f);
  const auto inv = graph_invariants(syl);
  CHECK(inv.vertex_count == 36);
  CHECK(inv.edge_count == 90);
  CHECK(inv.min_degree == 5);
  CHECK(inv.max_degree == 5);
  CHECK(inv.girth == 5);
}

TEST_CASE("frames from different edges are isomorphic") {
  const auto g = build_hsg();
  const auto e = g.edges();
  const auto a = find_automorphism(g, {{e[0].first, e.back().first}, {e[0].second, e.back().second}});
  REQUIRE(a.has_value());
  CHECK(is_automorphism(g, *a));
  CHECK((*a)[e[0].first] == e.back().first);
  CHECK((*a)[e[0].second] == e.back().second);
}

TEST_CASE("hexagon decomposition for all 20 row triples") {
  const auto g = build_hsg();
  const auto f = edge_frame(g, 0, 1);
  const auto triples = all_row_triples();
  CHECK(triples.size() == 20);
  for (const auto& t : triples) {
    const auto hexes = hexagon_decomposition(g, f, t);
    std::set<int> covered;
    for (const auto& h : hexes) {
      for (int k = 0; k < 6; ++k) {
        CHECK(g.adjacent(h.cycle[k], h.cycle[(k + 1) % 6]));
        CHECK(std::find(t.begin(), t.end(), f.row(h.cycle[k])) != t.end());
        covered.insert(h.cycle[k]);
      }
    }
    CHECK(covered.size() == 18);
  }
}

TEST_CASE("W checks reject a broken frame") {
  const auto g = build_hsg();
  auto f = edge_frame(g, 0, 1);
  std::swap(f.w_at[0][0], f.w_at[0][1]);  // relabel two W vertices inconsistently
  std::swap(f.w_at[0][1], f.w_at[1][0]);
  CHECK_THROWS_AS(sylvester_checks(g, f), VerificationError);
}
