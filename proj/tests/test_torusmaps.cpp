#include <map>
#include <set>

#include "doctest.h"
#include "hsm/h3geom.hpp"
#include "hsm/torusmaps.hpp"

using namespace hsm;

namespace {

struct Fixture {
  Graph g = build_hsg();
  EdgeFrame f = edge_frame(g, 0, 1);
};

const Fixture& fx() {
  static const Fixture instance;
  return instance;
}

bool slot_pairing_is_involution(const TorusMap& m) {
  for (int f = 0; f < m.face_count(); ++f)
    for (int p = 0; p < 6; ++p) {
      const Slot s = m.slot_pairing[f][p];
      if (s == Slot{f, p} || m.partner(s) != Slot{f, p}) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("small maps are (6,9,3) tori") {
  for (const auto& t : all_row_triples()) {
    const auto m = small_map(fx().g, fx().f, t);
    CHECK(m.vertex_count == 6);
    CHECK(m.edge_count() == 9);
    CHECK(m.face_count() == 3);
    CHECK(m.euler_characteristic() == 0);
    CHECK(slot_pairing_is_involution(m));
    // Paired slots carry the same column pair and come from different W-edges.
    std::map<std::tuple<int, int, int, int>, int> per_row_pair;
    for (int f = 0; f < 3; ++f)
      for (int p = 0; p < 6; ++p) {
        const auto& h = m.faces[f];
        const int x = h.cycle[p], y = h.cycle[(p + 1) % 6];
        const Slot s = m.partner({f, p});
        const int x2 = m.faces[s.face].cycle[s.pos], y2 = m.faces[s.face].cycle[(s.pos + 1) % 6];
        CHECK(std::set<int>{fx().f.col(x), fx().f.col(y)} == std::set<int>{fx().f.col(x2), fx().f.col(y2)});
        CHECK(std::set<int>{x, y} != std::set<int>{x2, y2});
        // Opposite traversal in projected columns.
        CHECK(fx().f.col(x) == fx().f.col(y2));
        const int r0 = std::min(fx().f.row(x), fx().f.row(y)), r1 = std::max(fx().f.row(x), fx().f.row(y));
        const int c0 = std::min(fx().f.col(x), fx().f.col(y)), c1 = std::max(fx().f.col(x), fx().f.col(y));
        per_row_pair[{r0, r1, c0, c1}]++;
      }
    // Each map edge is covered by exactly two W-edges, each column pair once per row pair.
    CHECK(per_row_pair.size() == 9);
    for (const auto& [k, n] : per_row_pair) CHECK(n == 2);
  }
}

TEST_CASE("big map is a (24,36,12) torus") {
  const auto m = big_map(fx().g, fx().f, {0, 1, 2, 3});
  CHECK(m.vertex_count == 24);
  CHECK(m.edge_count() == 36);
  CHECK(m.face_count() == 12);
  CHECK(m.euler_characteristic() == 0);
  CHECK(slot_pairing_is_involution(m));
  std::map<int, int> per_vertex;
  std::map<std::tuple<int, int, int, int>, int> labels;
  for (int f = 0; f < 12; ++f)
    for (int p = 0; p < 6; ++p) {
      const int x = m.faces[f].cycle[p], y = m.faces[f].cycle[(p + 1) % 6];
      per_vertex[x]++;
      const Slot s = m.partner({f, p});
      // Shared W-edge traversed in the opposite direction.
      CHECK(m.faces[s.face].cycle[s.pos] == y);
      CHECK(m.faces[s.face].cycle[(s.pos + 1) % 6] == x);
      if (Slot{f, p} < s) {
        const int r0 = std::min(fx().f.row(x), fx().f.row(y)), r1 = std::max(fx().f.row(x), fx().f.row(y));
        const int c0 = std::min(fx().f.col(x), fx().f.col(y)), c1 = std::max(fx().f.col(x), fx().f.col(y));
        labels[{r0, r1, c0, c1}]++;
      }
    }
  CHECK(per_vertex.size() == 24);
  for (const auto& [v, n] : per_vertex) CHECK(n == 3);
  CHECK(labels.size() == 18);
  for (const auto& [k, n] : labels) CHECK(n == 2);
}

TEST_CASE("maniplex membership and identified multigraph") {
  const auto m = build_maniplex(fx().g, fx().f, {0, 1, 2, 3});
  CHECK(m.hexagon_count() == 12);
  for (int h = 0; h < 12; ++h) {
    CHECK(m.hexagon_membership[h][1] == 4);
    const auto& sm = m.small_maps[m.small_map_of(h)];
    int found = 0;
    for (int k = 0; k < 3; ++k)
      if (sm.hexagon_ids[k] == h) {
        ++found;
        CHECK(sm.faces[k].cycle == m.hexagon(h).cycle);
      }
    CHECK(found == 1);
  }
  CHECK(m.identified_edges().size() == 18);
  const auto mult = m.column_multigraph();
  int simple = 0, doubled = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      CHECK(mult[a][b] >= 1);
      CHECK(mult[a][b] <= 2);
      (mult[a][b] == 2 ? doubled : simple)++;
    }
  CHECK(simple == 12);
  CHECK(doubled == 3);
  std::set<int> covered;
  for (const auto& d : m.doubled_pairs()) covered.insert({d[0], d[1]});
  CHECK(covered.size() == 6);
}

TEST_CASE("canonical relabel") {
  // {1,4},{2,6},{3,5} in 1-based labels.
  const auto perm = canonical_column_permutation({{0, 3}, {1, 5}, {2, 4}});
  CHECK(perm == std::array<int, 6>{0, 2, 4, 1, 5, 3});
  CHECK(canonical_column_permutation({{0, 1}, {2, 3}, {4, 5}}) == std::array<int, 6>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(canonical_column_permutation({{0, 1}, {1, 2}, {4, 5}}), VerificationError);

  const auto m = canonical_relabel(build_maniplex(fx().g, fx().f, {0, 1, 2, 3}));
  CHECK(m.doubled_pairs() == std::vector<std::array<int, 2>>{{0, 1}, {2, 3}, {4, 5}});
  const auto again = canonical_relabel(m);
  CHECK(again.column_label == m.column_label);
}

TEST_CASE("canonical maniplex is independent of the base edge") {
  const auto ref = maniplex_signature(canonical_relabel(build_maniplex(fx().g, fx().f, {0, 1, 2, 3})));
  int checked = 0;
  for (const auto& [u, v] : fx().g.edges()) {
    const auto frame = edge_frame(fx().g, u, v);
    const auto m = canonical_relabel(build_maniplex(fx().g, frame, {0, 1, 2, 3}));
    CHECK(maniplex_signature(m) == ref);
    ++checked;
  }
  CHECK(checked == 175);
}

TEST_CASE("Eisenstein arithmetic") {
  const Eisenstein one{1, 0};
  CHECK(one.rotated(6) == one);
  CHECK(one.rotated(3) == Eisenstein{-1, 0});
  CHECK(std::abs(one.rotated(1).value() - kOmega) < 1e-15);
  CHECK(std::abs(Eisenstein{2, 3}.conj().value() - std::conj(Eisenstein{2, 3}.value())) < 1e-14);
  CHECK(color_class(Eisenstein{1, 1}) == 0);
  CHECK(color_class(one) == 1);
  CHECK(color_class(Eisenstein{0, 1}) == 2);
  CHECK(reduce_mod_period(Eisenstein{-1, 7}) == Eisenstein{5, 1});
}

TEST_CASE("planar layout") {
  const auto m = canonical_relabel(build_maniplex(fx().g, fx().f, {0, 1, 2, 3}));
  const auto lay = develop_layout(m);
  REQUIRE(lay.centers.size() == 12);
  CHECK(lay.centers[0] == Eisenstein{0, 0});
  for (int k = 0; k < 6; ++k) CHECK(lay.corners[0][k] == Eisenstein{1, 0}.rotated(k));
  std::set<Eisenstein> centers(lay.centers.begin(), lay.centers.end());
  CHECK(centers.size() == 12);
  for (int h = 0; h < 12; ++h) {
    CHECK(color_class(lay.centers[h]) == 0);
    for (int k = 0; k < 6; ++k) {
      CHECK(color_class(lay.corners[h][k]) != 0);
      CHECK(std::abs(std::abs(lay.corner(h, k) - lay.center(h)) - kLambda) < 1e-12);
      // Counterclockwise order.
      CHECK(lay.corners[h][(k + 1) % 6] - lay.centers[h] == (lay.corners[h][k] - lay.centers[h]).rotated());
    }
  }
  // Area ratio: period covolume over hexagon area.
  const double covolume = 36 * kLambda * kLambda * std::sqrt(3.0) / 2;
  const double hex_area = 1.5 * std::sqrt(3.0) * kLambda * kLambda;
  CHECK(covolume / hex_area == doctest::Approx(12.0));

  // Neighbours across every slot sit at P + Q - c up to a boundary translation.
  const std::set<Eisenstein> allowed{{0, 0}, {6, 0}, {-6, 0}, {0, 6}, {0, -6}, {6, 6}, {-6, -6}};
  for (int h = 0; h < 12; ++h)
    for (int p = 0; p < 6; ++p) {
      const Slot s = m.big_map.partner({h, p});
      const auto expected = lay.corners[h][p] + lay.corners[h][(p + 1) % 6] - lay.centers[h];
      const auto d = expected - lay.centers[s.face];
      CHECK(allowed.count(d) == 1);
      CHECK(lay.corners[s.face][s.pos] + d == lay.corners[h][(p + 1) % 6]);
      CHECK(lay.corners[s.face][(s.pos + 1) % 6] + d == lay.corners[h][p]);
    }
  for (int h = 0; h < 12; ++h)
    for (int c = 0; c < 6; ++c) CHECK(lay.corner_columns[h][lay.corner_of_column(h, c)] == c);

  const auto svg = render_layout_svg(lay, m);
  CHECK(svg.find("<svg") != std::string::npos);
  int groups = 0;
  for (std::size_t pos = 0; (pos = svg.find("<g id=\"hex", pos)) != std::string::npos; ++pos) ++groups;
  CHECK(groups == 12);
}
