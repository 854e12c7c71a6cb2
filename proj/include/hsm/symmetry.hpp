#pragma once

// Isometry group of the manifold as the automorphism group of the flag graph
// on its 288 tetrahedra, with induced actions and geometric reflections.

#include <array>
#include <vector>

#include "hsm/assembly.hpp"

namespace hsm {

using Perm = std::vector<int>;

struct FlagGraph {
  std::array<std::vector<int>, 4> s;  // indexed by Face
  bool connected = false;

  int size() const { return static_cast<int>(s[0].size()); }
};

FlagGraph build_flag_graph(const Gluing& gluing);
FlagGraph build_flag_graph(const Region& region, const PairingGroup& pg);

struct SymmetryGroup {
  std::vector<Perm> elements;  // sorted by image of tetrahedron 0; identity first
  bool commutes = false;       // every element commutes with s_A..s_D
  bool free_action = false;

  int order() const { return static_cast<int>(elements.size()); }
  /// +1 for elements preserving the 2-colouring of the flag graph, -1 otherwise.
  std::vector<int> orientation;
  int index_of(const Perm& p) const;
};

SymmetryGroup automorphism_group(const FlagGraph& fg, int jobs = 1);

Perm compose(const Perm& a, const Perm& b);  // a after b
int perm_order(const Perm& p);
/// Size of the group generated by gens (closure by BFS).
int generated_order(const std::vector<Perm>& gens);

struct CoxeterWitness {
  std::array<int, 3> generators{-1, -1, -1};  // element indices
  std::array<int, 3> product_orders{};        // g0g2, g0g1, g1g2
  int generated = 0;
  bool ok = false;
};

CoxeterWitness coxeter_presentation_check(const SymmetryGroup& sg);

/// Corner classes of the manifold: hexagons (H), edges (E), vertices (V), cusps (I).
struct CornerClasses {
  std::vector<int> hexagon, edge, vertex, cusp;  // per tetrahedron
  int hexagons = 0, edges = 0, vertices = 0, cusps = 0;
  std::vector<bool> edge_doubled;  // per edge class
  std::vector<int> vertex_column;  // per vertex class
  int big_cusp = -1;
};

CornerClasses corner_classes(const Region& region, const Gluing& gluing);

struct OrbitReport {
  std::vector<std::vector<int>> hexagon_orbits, edge_orbits, vertex_orbits, cusp_orbits;
  bool well_defined = false;  // each element maps corner classes to corner classes
  bool big_cusp_fixed = false;
  bool doubled_edges_one_orbit = false;
  bool vertex_22_element = false;  // cycle type (2,2) with two fixed vertices
  bool big_cusp_tets_preserved = false;
};

OrbitReport orbit_report(const SymmetryGroup& sg, const Region& region, const Gluing& gluing);

struct Mirror {
  Cd point;      // on the mirror line
  double angle;  // direction of the line
  Isometryd iso;
  Perm perm;     // empty when the reflection does not preserve the tiling
  bool in_group = false;
};

struct ReflectionResult {
  std::vector<Mirror> candidates;
  int distinct_realized = 0;               // distinct permutations in the group
  std::array<int, 3> chosen{-1, -1, -1};  // indices into candidates
  std::array<int, 3> product_orders{};    // r0r2, r0r1, r1r2
  bool cube_profile = false;              // product orders (2, 4, 3)
  int generated = 0;
  int rejected = 0;
  bool walls_preserved = false;
  bool ok = false;  // three realized reflections generate the whole group
};

/// Reflections in vertical planes over lines through layout centers and
/// vertices at multiples of pi/6. Prefers a triple with product orders
/// (2, 4, 3), otherwise any generating triple.
ReflectionResult geometric_reflections(const Region& region, const SymmetryGroup& sg);

}  // namespace hsm
