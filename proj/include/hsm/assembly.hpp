#pragma once

// The fundamental region: 12 upward and 12 downward hexagonal cones over the
// developed layout, cut into 288 characteristic tetrahedra, with the 39 face
// pairings and the Poincare-condition checks of the resulting manifold.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hsm/h3geom.hpp"
#include "hsm/torusmaps.hpp"

namespace hsm {

/// Corner types of a region tetrahedron. The face opposite V, E, H, I is
/// B, C, D, A respectively.
enum class Corner { V = 0, E = 1, H = 2, I = 3 };
Face opposite_face(Corner c);
Corner opposite_corner(Face f);

inline constexpr int kTetCount = 288;
inline constexpr int kUp = 0;
inline constexpr int kDown = 1;

/// Tetrahedron id: hexagon * 24 + direction * 12 + slot * 2 + half.
/// Half 0 has its V corner at cycle[slot], half 1 at cycle[slot + 1].
inline int tet_id(int hexagon, int dir, int slot, int half) { return hexagon * 24 + dir * 12 + slot * 2 + half; }

struct Tetrahedron {
  int hexagon = 0, dir = 0, slot = 0, half = 0;
  Pointd v, e, h;
  Boundaryd ideal;
  std::array<Planed, 4> faces;  // indexed by Face, oriented inward
  Pointd interior;

  double dihedral(Face x, Face y) const;
};

/// Wall of a cone over the edge cycle[slot] -> cycle[slot + 1].
struct WallRef {
  int hexagon = 0, dir = 0, slot = 0;
  auto operator<=>(const WallRef&) const = default;
};

struct Wall {
  Pointd p1, p2;
  Boundaryd apex;
  Planed plane;  // oriented toward the cone interior
};

struct HexCone {
  int hexagon = 0, dir = 0;
  Boundaryd apex;
  std::array<Wall, 6> walls;
  std::array<int, 12> tetrahedra{};
};

struct Region {
  Maniplex maniplex;
  PlanarLayout layout;
  std::vector<HexCone> cones;  // hexagon * 2 + dir
  std::vector<Tetrahedron> tets;

  const HexCone& cone(int hexagon, int dir) const { return cones[hexagon * 2 + dir]; }
  const Wall& wall(const WallRef& w) const { return cone(w.hexagon, w.dir).walls[w.slot]; }
  /// Big-map vertex id of the V corner of tetrahedron t.
  int region_vertex(int t) const;
};

Region build_region(const Maniplex& m, const PlanarLayout& layout);

/// Orientation-preserving isometry sending (p1, p2, apex) to (q1, q2, apex')
/// via the canonical frame of each wall. Throws when the walls are not congruent.
Isometryd synthesize_pairing(const Pointd& p1, const Pointd& p2, const Boundaryd& apex, const Pointd& q1,
                             const Pointd& q2, const Boundaryd& apex2);

enum class PairingKind { Translation, Downward };

struct FacePairing {
  PairingKind kind = PairingKind::Downward;
  WallRef source, target;          // downward pairings
  Eisenstein translation;          // translation generators, units of lambda
  Isometryd iso;
};

struct PairingGroup {
  std::vector<FacePairing> generators;     // 3 translations, then 36 downward
  std::array<Isometryd, 72> slot_pairing;  // hexagon * 6 + slot -> downward pairing from that wall
  std::vector<int> reduced;                // indices into generators
  std::vector<std::vector<int>> witnesses; // per generator: word in signed 1-based indices
};

PairingGroup build_face_pairings(const Region& region);

struct PairingReport {
  int generator_count = 0;
  int wall_matches = 0;
  int wall_failures = 0;
  bool inverse_pairs = false;
  bool orientation_preserving = false;
  bool interior_to_exterior = false;
  double max_error = 0;
  bool ok() const {
    return wall_failures == 0 && inverse_pairs && orientation_preserving && interior_to_exterior;
  }
};

PairingReport verify_pairings(const PairingGroup& pg, const Region& region);

/// Neighbour of each tetrahedron across each face: the neighbour's region
/// copy mapped by `map` is the tetrahedron adjacent across that face.
struct Gluing {
  std::vector<std::array<int, 4>> neighbor;
  std::vector<std::array<Isometryd, 4>> map;

  int across(int t, Face f) const { return neighbor[t][static_cast<int>(f)]; }
  const Isometryd& map_across(int t, Face f) const { return map[t][static_cast<int>(f)]; }
};

/// Builds and geometrically checks the face gluing of all 288 tetrahedra.
Gluing build_gluing(const Region& region, const PairingGroup& pg);

struct EdgeClass {
  Corner x = Corner::V, y = Corner::E;
  int size = 0;
  int up_tets = 0, down_tets = 0;
  double angle = 0;      // dihedral angle of each member
  double angle_sum = 0;
  bool trivial_holonomy = false;
};

struct EdgeCycleReport {
  std::vector<EdgeClass> classes;
  bool all_sums_2pi = false;
  bool all_holonomy_trivial = false;
  int orange_fans = 0;  // hexagon-edge classes, 8 x pi/4
  int blue_fans = 0;    // below-vertex classes, 6 x pi/3
  double max_error = 0;
};

EdgeCycleReport edge_cycle_check(const Region& region, const Gluing& gluing);

struct VertexClass {
  std::vector<int> region_vertices;
  int tetrahedra = 0;
  int link_vertices = 0, link_edges = 0, link_faces = 0;
  int euler() const { return link_vertices - link_edges + link_faces; }
};

struct VertexLinkReport {
  std::vector<VertexClass> classes;
  bool ok = false;
};

VertexLinkReport vertex_link_check(const Region& region, const Gluing& gluing);

struct Cusp {
  std::vector<int> hexagons;   // hexagons whose cone apex lies in the class
  bool contains_infinity = false;
  int tetrahedra = 0;
  std::array<Eisenstein, 2> lattice{};  // reduced basis, units of lambda
  std::complex<double> shape;
  double area = 0;             // cross-section area of the height-1 horosphere
  double horoball_volume = 0;  // area / 2
  bool parabolic = false;
};

struct CuspData {
  std::vector<Cusp> cusps;  // big cusp first
  double volume_ratio = 0;
  bool ok = false;
};

CuspData cusp_analysis(const Region& region, const Gluing& gluing);

double total_volume();

struct ReductionResult {
  std::vector<int> kept;                   // generator indices
  std::vector<std::vector<int>> witness;   // per generator; empty for kept ones
  bool covered = false;
  int max_word_length = 0;
};

/// Greedy removal of generators expressible as words of length <= max_len
/// (signed 1-based generator indices, inverse when negative) in the rest.
ReductionResult generator_reduction(const PairingGroup& pg, int max_len = 6);

Isometryd evaluate_word(const PairingGroup& pg, const std::vector<int>& word);

/// Pairing = I_target o E o I_source with sphere inversions about the two
/// cone apexes; E fixes infinity. Returns the rotation angle of E.
double pairing_rotation_angle(const FacePairing& p, const Region& region);

struct WorkedExample {
  Isometryd composition;        // inversion(C) o inversion(F) o translation
  bool composition_maps_points = false;
  bool synthesized_matches = false;
  double max_error = 0;
};

/// The hexagon A -> F -> C example with the source wall
/// lambda(3+4w), lambda(4+3w), apex 3lambda(1+w) and target wall
/// lambda(w-3), -2lambda, apex lambda(w-2).
WorkedExample worked_example();

}  // namespace hsm
