#pragma once

// Hexagonal torus maps built from the row triples of an edge frame, the
// maniplex they form, and the planar development of the 12-hexagon map.

#include <array>
#include <complex>
#include <compare>
#include <string>
#include <vector>

#include "hsm/hsg.hpp"

namespace hsm {

struct Slot {
  int face = -1;
  int pos = -1;  // edge from cycle[pos] to cycle[pos + 1]
  auto operator<=>(const Slot&) const = default;
};

/// A map on a surface whose faces are W-hexagons. Corners are glued across
/// paired slots by `corner_label` (W-vertex id for the big map, column for
/// the small maps).
struct TorusMap {
  std::vector<WHexagon> faces;  // oriented cyclic lists
  std::vector<int> hexagon_ids;
  std::vector<std::array<int, 6>> corner_label;
  std::vector<std::array<Slot, 6>> slot_pairing;
  std::vector<int> corner_vertex;  // face * 6 + pos -> map vertex id
  int vertex_count = 0;

  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const { return 3 * face_count(); }
  int euler_characteristic() const { return vertex_count - edge_count() + face_count(); }
  Slot partner(Slot s) const { return slot_pairing[s.face][s.pos]; }
};

/// Three hexagons of one row triple glued along crosses-partner W-edges.
TorusMap small_map(const Graph& hsg, const EdgeFrame& frame, const RowTriple& triple);
/// The 12 hexagons of the four triples inside `rows4`, glued along shared W-edges.
TorusMap big_map(const Graph& hsg, const EdgeFrame& frame, const std::array<int, 4>& rows4);

/// An edge of the identified column multigraph: a row pair and a column pair.
struct ColumnEdge {
  std::array<int, 2> rows{};
  std::array<int, 2> cols{};  // current column labels, ascending
  auto operator<=>(const ColumnEdge&) const = default;
};

struct Maniplex {
  EdgeFrame frame;
  std::array<int, 4> rows4{};
  std::array<RowTriple, 4> triples{};
  std::array<TorusMap, 4> small_maps;
  TorusMap big_map;
  // hexagon id -> the two maps containing it (small map index, 4 for the big map)
  std::vector<std::array<int, 2>> hexagon_membership;
  std::array<int, 6> column_label{0, 1, 2, 3, 4, 5};  // frame column -> label

  int column(int w) const { return column_label[frame.col(w)]; }
  int hexagon_count() const { return big_map.face_count(); }
  const WHexagon& hexagon(int h) const { return big_map.faces[h]; }
  /// Small map index containing hexagon h.
  int small_map_of(int h) const { return hexagon_membership[h][0]; }

  /// The 18 distinct (row pair, column pair) edges, sorted.
  std::vector<ColumnEdge> identified_edges() const;
  /// Edge multiplicities of the identified multigraph on the 6 columns.
  std::array<std::array<int, 6>, 6> column_multigraph() const;
  /// Column pairs joined by two edges, ascending.
  std::vector<std::array<int, 2>> doubled_pairs() const;
};

Maniplex build_maniplex(const Graph& hsg, const EdgeFrame& frame, const std::array<int, 4>& rows4);

/// Lexicographically least permutation (old label -> new label) sending the
/// three given disjoint pairs to {0,1}, {2,3}, {4,5}.
std::array<int, 6> canonical_column_permutation(const std::vector<std::array<int, 2>>& doubled);
Maniplex canonical_relabel(const Maniplex& m);

/// Label-independent fingerprint: hexagon column cycles grouped by small map,
/// minimised over relabelings that preserve the doubled-pair matching.
std::vector<int> maniplex_signature(const Maniplex& m);

/// Eisenstein integer a + b*omega, omega = e^{i pi / 3}.
struct Eisenstein {
  long a = 0;
  long b = 0;
  auto operator<=>(const Eisenstein&) const = default;
  Eisenstein operator+(const Eisenstein& o) const { return {a + o.a, b + o.b}; }
  Eisenstein operator-(const Eisenstein& o) const { return {a - o.a, b - o.b}; }
  Eisenstein operator-() const { return {-a, -b}; }
  Eisenstein operator*(long k) const { return {a * k, b * k}; }
  /// Multiplication by omega.
  Eisenstein rotated() const { return {-b, a + b}; }
  Eisenstein rotated(int k) const;
  /// Complex conjugation.
  Eisenstein conj() const { return {a + b, -b}; }
  std::complex<double> value() const;  // a + b*omega, unscaled
};

/// 3-colouring of the hexagonal grid: 0 on centers, 1 or 2 on vertices.
inline int color_class(const Eisenstein& e) { return static_cast<int>((((e.a - e.b) % 3) + 3) % 3); }

/// Reduce the coordinates of e into [0, 6) modulo 6Z[omega].
Eisenstein reduce_mod_period(const Eisenstein& e);

/// Planar development of the big map with edge length lambda; coordinates
/// are exact in units of lambda.
struct PlanarLayout {
  double lambda = 0;
  std::complex<double> omega;
  std::vector<Eisenstein> centers;                  // per hexagon, reduced
  std::vector<std::array<Eisenstein, 6>> corners;   // position of hexagon cycle[k]
  std::vector<std::array<int, 6>> corner_columns;   // column label at corner k
  std::array<Eisenstein, 2> periods{};

  std::complex<double> center(int h) const;
  std::complex<double> corner(int h, int k) const;
  int corner_of_column(int h, int column) const;
  std::complex<double> vertex_pos(int h, int column) const { return corner(h, corner_of_column(h, column)); }
  /// Hexagon whose reduced center is c, or -1.
  int hexagon_at(const Eisenstein& c) const;
};

PlanarLayout develop_layout(const Maniplex& m);

/// SVG of the 12 hexagons in the period parallelogram with column labels.
std::string render_layout_svg(const PlanarLayout& layout, const Maniplex& m);

}  // namespace hsm
