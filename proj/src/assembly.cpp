#include "hsm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace hsm {

namespace {

const double kVertexHeight = 1 / std::sqrt(3.0);

Planed face_plane(const Pointd* finite, int nf, const Boundaryd* ideal, int ni, const Pointd& inside) {
  Planed pl = Planed::through(finite, nf, ideal, ni);
  return pl.side(inside) > 0 ? pl : pl.flipped();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool same_point(const Pointd& p, const Pointd& q, double tol) { return dist(p, q) < tol; }

// Local face index within the small map containing hexagon h.
Slot small_partner(const Maniplex& m, int h, int k) {
  const auto& sm = m.small_maps[m.small_map_of(h)];
  const int f = static_cast<int>(std::find(sm.hexagon_ids.begin(), sm.hexagon_ids.end(), h) - sm.hexagon_ids.begin());
  const Slot s = sm.slot_pairing[f][k];
  return {sm.hexagon_ids[s.face], s.pos};
}

Eisenstein boundary_shift(const Region& r, int h, int k, int g) {
  const auto& c = r.layout.corners[h];
  return c[k] + c[(k + 1) % 6] - r.layout.centers[h] - r.layout.centers[g];
}

}  // namespace

Face opposite_face(Corner c) {
  switch (c) {
    case Corner::V: return Face::B;
    case Corner::E: return Face::C;
    case Corner::H: return Face::D;
    case Corner::I: return Face::A;
  }
  return Face::A;
}

Corner opposite_corner(Face f) {
  switch (f) {
    case Face::A: return Corner::I;
    case Face::B: return Corner::V;
    case Face::C: return Corner::E;
    case Face::D: return Corner::H;
  }
  return Corner::I;
}

double Tetrahedron::dihedral(Face x, Face y) const {
  return interior_angle(faces[static_cast<int>(x)], faces[static_cast<int>(y)]);
}

int Region::region_vertex(int t) const {
  const auto& tt = tets[t];
  return maniplex.big_map.corner_vertex[tt.hexagon * 6 + (tt.slot + tt.half) % 6];
}

Region build_region(const Maniplex& m, const PlanarLayout& layout) {
  Region r;
  r.maniplex = m;
  r.layout = layout;
  const int nh = m.hexagon_count();
  const auto ref = CharacteristicTetrahedron::standard();
  r.tets.resize(static_cast<std::size_t>(nh) * 24);
  r.cones.resize(static_cast<std::size_t>(nh) * 2);
  for (int h = 0; h < nh; ++h) {
    const Cd c = layout.center(h);
    std::array<Pointd, 6> p;
    for (int k = 0; k < 6; ++k) p[k] = Pointd(layout.corner(h, k), kVertexHeight);
    const Pointd top(c, 1.0);
    for (int dir : {kUp, kDown}) {
      HexCone& cone = r.cones[h * 2 + dir];
      cone.hexagon = h;
      cone.dir = dir;
      cone.apex = dir == kUp ? Boundaryd::infinity() : Boundaryd(c);
      const Pointd inside(c, dir == kUp ? 2.0 : 0.5);
      for (int k = 0; k < 6; ++k) {
        Wall& w = cone.walls[k];
        w.p1 = p[k];
        w.p2 = p[(k + 1) % 6];
        w.apex = cone.apex;
        const Pointd fin[2] = {w.p1, w.p2};
        w.plane = face_plane(fin, 2, &w.apex, 1, inside);
      }
      for (int k = 0; k < 6; ++k) {
        const Pointd e = midpoint(p[k], p[(k + 1) % 6]);
        for (int half = 0; half < 2; ++half) {
          const int id = tet_id(h, dir, k, half);
          cone.tetrahedra[k * 2 + half] = id;
          Tetrahedron& t = r.tets[id];
          t.hexagon = h;
          t.dir = dir;
          t.slot = k;
          t.half = half;
          t.v = p[(k + half) % 6];
          t.e = e;
          t.h = top;
          t.ideal = cone.apex;
          t.interior = geodesic_point(midpoint(midpoint(t.v, t.e), t.h), t.ideal, 0.2);
          const Pointd fa[3] = {t.v, t.e, t.h};
          t.faces[0] = face_plane(fa, 3, nullptr, 0, t.interior);
          const Pointd fb[2] = {t.e, t.h};
          t.faces[1] = face_plane(fb, 2, &t.ideal, 1, t.interior);
          const Pointd fc[2] = {t.v, t.h};
          t.faces[2] = face_plane(fc, 2, &t.ideal, 1, t.interior);
          const Pointd fd[2] = {t.v, t.e};
          t.faces[3] = face_plane(fd, 2, &t.ideal, 1, t.interior);
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
              const double want = ref.dihedral(static_cast<Face>(x), static_cast<Face>(y));
              if (std::abs(t.dihedral(static_cast<Face>(x), static_cast<Face>(y)) - want) > kGeomTol)
                throw GeometryError("region tetrahedron not congruent to the characteristic tetrahedron");
            }
        }
      }
    }
  }
  return r;
}

namespace {

struct WallFrame {
  Isometryd to_canonical;
  double tau;
};

// Sends apex to infinity and (p1, p2) to (0, tau), (1, tau).
WallFrame wall_frame(const Pointd& p1, const Pointd& p2, const Boundaryd& apex) {
  Isometryd m1;
  if (!apex.is_infinite()) {
    Matrix2c<double> m;
    m << Cd(0), Cd(1), Cd(1), -apex.value();
    m1 = Isometryd(m, 1);
  }
  const Pointd a = m1.apply(p1), b = m1.apply(p2);
  const Cd d = b.z - a.z;
  if (std::abs(d) < 1e-12) throw GeometryError("degenerate wall");
  Matrix2c<double> s;
  s << Cd(1), -a.z, Cd(0), d;
  const double tau1 = a.t / std::abs(d), tau2 = b.t / std::abs(d);
  if (std::abs(tau1 - tau2) > kGeomTol * std::max(1.0, tau1))
    throw GeometryError("wall finite vertices are not equidistant from the apex");
  return {Isometryd(s, 1) * m1, tau1};
}

}  // namespace

Isometryd synthesize_pairing(const Pointd& p1, const Pointd& p2, const Boundaryd& apex, const Pointd& q1,
                             const Pointd& q2, const Boundaryd& apex2) {
  const auto src = wall_frame(p1, p2, apex);
  const auto dst = wall_frame(q1, q2, apex2);
  if (std::abs(src.tau - dst.tau) > kGeomTol * std::max(1.0, src.tau))
    throw GeometryError("pairing synthesis: walls are not congruent");
  return dst.to_canonical.inverse() * src.to_canonical;
}

PairingGroup build_face_pairings(const Region& region) {
  const Maniplex& m = region.maniplex;
  const PlanarLayout& lay = region.layout;
  PairingGroup pg;
  for (const Eisenstein& d : {Eisenstein{6, 0}, Eisenstein{0, 6}, Eisenstein{6, 6}}) {
    FacePairing fp;
    fp.kind = PairingKind::Translation;
    fp.translation = d;
    fp.iso = Isometryd::translation(lay.lambda * d.value());
    pg.generators.push_back(fp);
  }
  for (int h = 0; h < m.hexagon_count(); ++h)
    for (int k = 0; k < 6; ++k) {
      const Slot s = small_partner(m, h, k);
      const auto& src = region.cone(h, kDown).walls[k];
      const auto& dst = region.cone(s.face, kDown).walls[s.pos];
      // Column-preserving: cycle[k] matches the far end of the partner edge.
      if (lay.corner_columns[h][k] != lay.corner_columns[s.face][(s.pos + 1) % 6] ||
          lay.corner_columns[h][(k + 1) % 6] != lay.corner_columns[s.face][s.pos])
        throw VerificationError("pairing synthesis: partner wall has different column labels");
      pg.slot_pairing[h * 6 + k] = synthesize_pairing(src.p1, src.p2, src.apex, dst.p2, dst.p1, dst.apex);
      if (std::make_pair(h, k) < std::make_pair(s.face, s.pos)) {
        FacePairing fp;
        fp.kind = PairingKind::Downward;
        fp.source = {h, kDown, k};
        fp.target = {s.face, kDown, s.pos};
        fp.iso = pg.slot_pairing[h * 6 + k];
        pg.generators.push_back(fp);
      }
    }
  return pg;
}

PairingReport verify_pairings(const PairingGroup& pg, const Region& region) {
  PairingReport rep;
  rep.generator_count = static_cast<int>(pg.generators.size());
  rep.inverse_pairs = true;
  rep.orientation_preserving = true;
  rep.interior_to_exterior = true;
  const Maniplex& m = region.maniplex;

  auto record = [&rep](double err) {
    rep.max_error = std::max(rep.max_error, err);
    if (err < kGeomTol) {
      ++rep.wall_matches;
    } else {
      ++rep.wall_failures;
    }
  };
  // A point on the wall pushed slightly into the cone.
  auto inside_near = [&](const WallRef& w) {
    const auto& wall = region.wall(w);
    const auto& cone = region.cone(w.hexagon, w.dir);
    const Pointd on = geodesic_point(midpoint(wall.p1, wall.p2), wall.apex, 0.5);
    const Cd c = region.layout.center(cone.hexagon);
    return geodesic_point(on, Pointd(c, w.dir == kUp ? 2.0 : 0.5), 0.05);
  };

  for (int h = 0; h < m.hexagon_count(); ++h)
    for (int k = 0; k < 6; ++k) {
      const Slot s = small_partner(m, h, k);
      const Isometryd& p = pg.slot_pairing[h * 6 + k];
      const auto& src = region.cone(h, kDown).walls[k];
      const auto& dst = region.cone(s.face, kDown).walls[s.pos];
      double err = std::max(dist(p.apply(src.p1), dst.p2), dist(p.apply(src.p2), dst.p1));
      const Boundaryd ap = p.apply(src.apex);
      err = std::max(err, ap.is_infinite() ? 1.0 : std::abs(ap.value() - dst.apex.value()));
      record(err);
      if (p.orientation() != 1) rep.orientation_preserving = false;
      if (!(p * pg.slot_pairing[s.face * 6 + s.pos]).is_identity(kGeomTol)) rep.inverse_pairs = false;
      if (dst.plane.side(p.apply(inside_near({h, kDown, k}))) >= 0) rep.interior_to_exterior = false;
    }

  // Up-cone walls on the boundary of the layout are matched by translations.
  for (int h = 0; h < m.hexagon_count(); ++h)
    for (int k = 0; k < 6; ++k) {
      const Slot s = m.big_map.partner({h, k});
      const Eisenstein d = boundary_shift(region, h, k, s.face);
      if (d == Eisenstein{0, 0}) continue;
      const auto t = Isometryd::translation(region.layout.lambda * d.value());
      const auto& here = region.cone(h, kUp).walls[k];
      const auto& there = region.cone(s.face, kUp).walls[s.pos];
      record(std::max(dist(t.apply(there.p1), here.p2), dist(t.apply(there.p2), here.p1)));
      if (here.plane.side(t.apply(inside_near({s.face, kUp, s.pos}))) >= 0) rep.interior_to_exterior = false;
    }
  for (const auto& g : pg.generators)
    if (g.iso.orientation() != 1) rep.orientation_preserving = false;
  return rep;
}

Gluing build_gluing(const Region& region, const PairingGroup& pg) {
  const Maniplex& m = region.maniplex;
  const int n = static_cast<int>(region.tets.size());
  Gluing g;
  g.neighbor.assign(n, {-1, -1, -1, -1});
  g.map.assign(n, {});
  for (int id = 0; id < n; ++id) {
    const auto& t = region.tets[id];
    auto set = [&](Face f, int other, const Isometryd& iso) {
      g.neighbor[id][static_cast<int>(f)] = other;
      g.map[id][static_cast<int>(f)] = iso;
    };
    set(Face::A, tet_id(t.hexagon, 1 - t.dir, t.slot, t.half), Isometryd());
    set(Face::B, tet_id(t.hexagon, t.dir, t.slot, 1 - t.half), Isometryd());
    if (t.half == 1) {
      set(Face::C, tet_id(t.hexagon, t.dir, (t.slot + 1) % 6, 0), Isometryd());
    } else {
      set(Face::C, tet_id(t.hexagon, t.dir, (t.slot + 5) % 6, 1), Isometryd());
    }
    if (t.dir == kUp) {
      const Slot s = m.big_map.partner({t.hexagon, t.slot});
      const Eisenstein d = boundary_shift(region, t.hexagon, t.slot, s.face);
      set(Face::D, tet_id(s.face, kUp, s.pos, 1 - t.half), Isometryd::translation(region.layout.lambda * d.value()));
    } else {
      const Slot s = small_partner(m, t.hexagon, t.slot);
      set(Face::D, tet_id(s.face, kDown, s.pos, 1 - t.half), pg.slot_pairing[s.face * 6 + s.pos]);
    }
  }

  // Corners of the shared face must coincide with matching types, the
  // neighbour must lie on the far side, and the gluing must be symmetric.
  for (int id = 0; id < n; ++id) {
    const auto& t = region.tets[id];
    for (int f = 0; f < 4; ++f) {
      const int o = g.neighbor[id][f];
      const auto& u = region.tets[o];
      const Isometryd& iso = g.map[id][f];
      const Corner skip = opposite_corner(static_cast<Face>(f));
      bool ok = true;
      if (skip != Corner::V) ok = ok && same_point(iso.apply(u.v), t.v, kGeomTol);
      if (skip != Corner::E) ok = ok && same_point(iso.apply(u.e), t.e, kGeomTol);
      if (skip != Corner::H) ok = ok && same_point(iso.apply(u.h), t.h, kGeomTol);
      if (skip != Corner::I) ok = ok && iso.apply(u.ideal).approx_equal(t.ideal, kGeomTol);
      ok = ok && t.faces[f].side(iso.apply(u.interior)) < 0;
      ok = ok && g.neighbor[o][f] == id && (iso * g.map[o][f]).is_identity(kGeomTol);
      if (!ok) throw VerificationError("gluing inconsistency at tetrahedron " + std::to_string(id));
    }
  }
  return g;
}

namespace {

constexpr std::array<std::array<Corner, 2>, 6> kCornerPairs{{{Corner::V, Corner::E},
                                                             {Corner::V, Corner::H},
                                                             {Corner::V, Corner::I},
                                                             {Corner::E, Corner::H},
                                                             {Corner::E, Corner::I},
                                                             {Corner::H, Corner::I}}};

// The two faces containing the edge between corners x and y.
std::array<Face, 2> faces_at(Corner x, Corner y) {
  std::array<Face, 2> out{};
  int n = 0;
  for (int c = 0; c < 4; ++c)
    if (c != static_cast<int>(x) && c != static_cast<int>(y)) out[n++] = opposite_face(static_cast<Corner>(c));
  return out;
}

struct EdgeWalk {
  std::vector<int> members;
  Isometryd holonomy;
  double angle_sum = 0;
};

EdgeWalk walk_edge(const Region& region, const Gluing& gl, int t0, int pair) {
  const auto fs = faces_at(kCornerPairs[pair][0], kCornerPairs[pair][1]);
  EdgeWalk w;
  int cur = t0, which = 0;
  do {
    w.members.push_back(cur);
    w.angle_sum += region.tets[cur].dihedral(fs[0], fs[1]);
    w.holonomy = w.holonomy * gl.map_across(cur, fs[which]);
    cur = gl.across(cur, fs[which]);
    which ^= 1;
    if (w.members.size() > 4 * static_cast<std::size_t>(kTetCount))
      throw VerificationError("edge cycle does not close");
  } while (!(cur == t0 && which == 0));
  return w;
}

// Edge class id per (tetrahedron, corner pair).
std::vector<std::array<int, 6>> edge_class_ids(const Region& region, const Gluing& gl) {
  const int n = static_cast<int>(region.tets.size());
  std::vector<std::array<int, 6>> ids(n, {-1, -1, -1, -1, -1, -1});
  int next = 0;
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < 6; ++p) {
      if (ids[t][p] >= 0) continue;
      for (int m : walk_edge(region, gl, t, p).members) ids[m][p] = next;
      ++next;
    }
  return ids;
}

}  // namespace

EdgeCycleReport edge_cycle_check(const Region& region, const Gluing& gluing) {
  EdgeCycleReport rep;
  rep.all_sums_2pi = true;
  rep.all_holonomy_trivial = true;
  const int n = static_cast<int>(region.tets.size());
  std::vector<std::array<bool, 6>> seen(n, {false, false, false, false, false, false});
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < 6; ++p) {
      if (seen[t][p]) continue;
      const auto w = walk_edge(region, gluing, t, p);
      EdgeClass ec;
      ec.x = kCornerPairs[p][0];
      ec.y = kCornerPairs[p][1];
      for (int m : w.members) {
        seen[m][p] = true;
        (region.tets[m].dir == kUp ? ec.up_tets : ec.down_tets)++;
      }
      ec.size = static_cast<int>(w.members.size());
      const auto fs = faces_at(ec.x, ec.y);
      ec.angle = region.tets[t].dihedral(fs[0], fs[1]);
      ec.angle_sum = w.angle_sum;
      ec.trivial_holonomy = w.holonomy.is_identity(1e-8);
      const double err = std::abs(ec.angle_sum - 2 * kPi);
      rep.max_error = std::max(rep.max_error, err);
      if (err > 1e-8) rep.all_sums_2pi = false;
      if (!ec.trivial_holonomy) rep.all_holonomy_trivial = false;
      if (ec.x == Corner::V && ec.y == Corner::E && ec.size == 8 && std::abs(ec.angle - kPi / 4) < 1e-9)
        ++rep.orange_fans;
      if (ec.x == Corner::V && ec.y == Corner::I && ec.up_tets == 0 && ec.size == 6 &&
          std::abs(ec.angle - kPi / 3) < 1e-9)
        ++rep.blue_fans;
      rep.classes.push_back(ec);
    }
  return rep;
}

VertexLinkReport vertex_link_check(const Region& region, const Gluing& gluing) {
  const int n = static_cast<int>(region.tets.size());
  UnionFind uf(n);
  const Face through_v[3] = {Face::A, Face::C, Face::D};
  for (int t = 0; t < n; ++t)
    for (Face f : through_v) uf.unite(t, gluing.across(t, f));
  const auto ids = edge_class_ids(region, gluing);
  std::map<int, VertexClass> by_root;
  std::map<int, std::set<int>> verts, link_vertices;
  std::map<int, std::set<std::pair<int, int>>> link_edges;
  for (int t = 0; t < n; ++t) {
    const int r = uf.find(t);
    by_root[r].tetrahedra++;
    verts[r].insert(region.region_vertex(t));
    for (int p : {0, 1, 2}) link_vertices[r].insert(ids[t][p]);
    for (Face f : through_v) {
      const int o = gluing.across(t, f);
      link_edges[r].insert({std::min(t, o) * 4 + static_cast<int>(f), std::max(t, o) * 4 + static_cast<int>(f)});
    }
  }
  VertexLinkReport rep;
  rep.ok = true;
  for (auto& [r, vc] : by_root) {
    vc.region_vertices.assign(verts[r].begin(), verts[r].end());
    vc.link_faces = vc.tetrahedra;
    vc.link_edges = static_cast<int>(link_edges[r].size());
    vc.link_vertices = static_cast<int>(link_vertices[r].size());
    if (vc.euler() != 2) rep.ok = false;
    rep.classes.push_back(vc);
  }
  return rep;
}

namespace {

// Basis of the integer lattice spanned by vs, or nullopt when it has rank < 2.
std::optional<std::array<Eisenstein, 2>> lattice_basis(const std::vector<Eisenstein>& vs) {
  Eisenstein first{0, 0};
  long gb = 0;
  for (const auto& v : vs) {
    Eisenstein x = first, y = v;
    while (y.a != 0) {
      const long q = x.a / y.a;
      x = x - y * q;
      std::swap(x, y);
    }
    first = x;
    gb = std::gcd(gb, y.b);
  }
  if (first.a == 0 || gb == 0) return std::nullopt;
  return std::array<Eisenstein, 2>{first, Eisenstein{0, gb}};
}

long twice_inner(const Eisenstein& p, const Eisenstein& q) {
  return 2 * p.a * q.a + p.a * q.b + q.a * p.b + 2 * p.b * q.b;
}

std::array<Eisenstein, 2> gauss_reduce(std::array<Eisenstein, 2> b) {
  for (;;) {
    if (twice_inner(b[1], b[1]) < twice_inner(b[0], b[0])) std::swap(b[0], b[1]);
    const double mu = static_cast<double>(twice_inner(b[0], b[1])) / static_cast<double>(twice_inner(b[0], b[0]));
    if (std::abs(mu) <= 0.5) break;
    const long m = std::lround(mu);
    b[1] = b[1] - b[0] * m;
  }
  if (std::imag(b[1].value() / b[0].value()) < 0) b[1] = -b[1];
  return b;
}

}  // namespace

CuspData cusp_analysis(const Region& region, const Gluing& gluing) {
  const int n = static_cast<int>(region.tets.size());
  UnionFind uf(n);
  const Face through_i[3] = {Face::B, Face::C, Face::D};
  for (int t = 0; t < n; ++t)
    for (Face f : through_i) uf.unite(t, gluing.across(t, f));
  std::map<int, std::vector<int>> classes;
  for (int t = 0; t < n; ++t) classes[uf.find(t)].push_back(t);

  CuspData out;
  out.ok = true;
  const double lambda = region.layout.lambda;
  for (const auto& [root, members] : classes) {
    Cusp cusp;
    cusp.tetrahedra = static_cast<int>(members.size());
    std::set<int> hexes;
    for (int t : members) {
      if (region.tets[t].ideal.is_infinite()) {
        cusp.contains_infinity = true;
      } else {
        hexes.insert(region.tets[t].hexagon);
      }
    }
    cusp.hexagons.assign(hexes.begin(), hexes.end());

    // Develop the cusp with the ideal vertex sent to infinity.
    std::map<int, Isometryd> dev;
    const int t0 = members.front();
    if (!region.tets[t0].ideal.is_infinite()) {
      Matrix2c<double> m;
      m << Cd(0), Cd(-1), Cd(1), -region.tets[t0].ideal.value();
      dev[t0] = Isometryd(m, 1);
    } else {
      dev[t0] = Isometryd();
    }
    std::deque<int> queue{t0};
    std::vector<Eisenstein> periods;
    cusp.parabolic = true;
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      for (Face f : through_i) {
        const int o = gluing.across(t, f);
        const Isometryd cand = dev[t] * gluing.map_across(t, f);
        auto it = dev.find(o);
        if (it == dev.end()) {
          if (!cand.apply(region.tets[o].ideal).approx_equal(Boundaryd::infinity(), 1e-9)) cusp.parabolic = false;
          dev[o] = cand;
          queue.push_back(o);
          continue;
        }
        const Isometryd hol = cand * it->second.inverse();
        const auto& mm = hol.matrix();
        if (std::abs(mm(1, 0)) > 1e-9 || std::abs(mm(0, 0) - mm(1, 1)) > 1e-9) {
          cusp.parabolic = false;
          continue;
        }
        const Cd b = mm(0, 1) / mm(1, 1) / lambda;
        const double y = b.imag() / std::sin(kPi / 3);
        const double x = b.real() - y / 2;
        const Eisenstein e{std::lround(x), std::lround(y)};
        if (std::abs(x - e.a) > 1e-7 || std::abs(y - e.b) > 1e-7) {
          cusp.parabolic = false;
          continue;
        }
        if (e != Eisenstein{0, 0}) periods.push_back(e);
      }
    }
    const auto basis = lattice_basis(periods);
    if (!basis || !cusp.parabolic) {
      out.ok = false;
      out.cusps.push_back(cusp);
      continue;
    }
    cusp.lattice = gauss_reduce(*basis);
    const Cd w1 = lambda * cusp.lattice[0].value(), w2 = lambda * cusp.lattice[1].value();
    cusp.shape = w2 / w1;
    if (std::abs(cusp.shape.real() + 0.5) < 1e-9) cusp.shape += 1.0;
    cusp.area = std::abs((std::conj(w1) * w2).imag());
    cusp.horoball_volume = cusp.area / 2;
    if (std::abs(cusp.shape - kOmega) > 1e-9) out.ok = false;
    out.cusps.push_back(cusp);
  }
  std::stable_sort(out.cusps.begin(), out.cusps.end(),
                   [](const Cusp& a, const Cusp& b) { return a.contains_infinity && !b.contains_infinity; });
  if (out.cusps.size() != 5 || !out.cusps[0].contains_infinity) {
    out.ok = false;
  } else {
    out.volume_ratio = out.cusps[0].horoball_volume / out.cusps[1].horoball_volume;
    for (std::size_t i = 1; i < out.cusps.size(); ++i)
      if (out.cusps[i].hexagons.size() != 3 || std::abs(out.cusps[i].area - out.cusps[1].area) > 1e-9)
        out.ok = false;
  }
  return out;
}

double total_volume() { return kTetCount * tetrahedron_volume(); }

Isometryd evaluate_word(const PairingGroup& pg, const std::vector<int>& word) {
  Isometryd g;
  for (int letter : word) {
    const Isometryd& x = pg.generators[std::abs(letter) - 1].iso;
    g = g * (letter > 0 ? x : x.inverse());
  }
  return g;
}

namespace {

using WordKey = std::array<long long, 8>;

struct WordKeyHash {
  std::size_t operator()(const WordKey& k) const {
    std::size_t h = 0;
    for (long long v : k) h = h * 1000003u ^ std::hash<long long>{}(v);
    return h;
  }
};

WordKey word_key(const Isometryd& g) {
  const auto& m = g.matrix();
  double sign = 1;
  for (int i = 0; i < 4; ++i) {
    const Cd v = m(i / 2, i % 2);
    if (std::abs(v) > 1e-6) {
      sign = (v.real() > 1e-9 || (std::abs(v.real()) <= 1e-9 && v.imag() > 0)) ? 1 : -1;
      break;
    }
  }
  WordKey k{};
  for (int i = 0; i < 4; ++i) {
    const Cd v = sign * m(i / 2, i % 2);
    k[2 * i] = std::llround(v.real() * 1e6);
    k[2 * i + 1] = std::llround(v.imag() * 1e6);
  }
  return k;
}

struct WordTable {
  std::unordered_map<WordKey, std::vector<int>, WordKeyHash> words;
  std::vector<std::pair<Isometryd, std::vector<int>>> list;
};

WordTable build_table(const PairingGroup& pg, const std::vector<int>& letters_from, int len) {
  WordTable tab;
  std::vector<int> letters;
  for (int g : letters_from) {
    letters.push_back(g + 1);
    letters.push_back(-(g + 1));
  }
  std::vector<std::pair<Isometryd, std::vector<int>>> frontier{{Isometryd(), {}}};
  tab.words.emplace(word_key(Isometryd()), std::vector<int>{});
  tab.list.push_back(frontier.front());
  for (int l = 1; l <= len; ++l) {
    std::vector<std::pair<Isometryd, std::vector<int>>> next;
    for (const auto& [g, w] : frontier)
      for (int x : letters) {
        if (!w.empty() && w.back() == -x) continue;
        auto word = w;
        word.push_back(x);
        const Isometryd hh = x > 0 ? g * pg.generators[x - 1].iso : g * pg.generators[-x - 1].iso.inverse();
        if (tab.words.emplace(word_key(hh), word).second) {
          tab.list.emplace_back(hh, word);
          next.emplace_back(hh, std::move(word));
        }
      }
    frontier = std::move(next);
  }
  return tab;
}

std::optional<std::vector<int>> express(const PairingGroup& pg, const WordTable& tab, const Isometryd& x,
                                        int max_len) {
  auto check = [&](const std::vector<int>& w) -> std::optional<std::vector<int>> {
    if (static_cast<int>(w.size()) <= max_len && evaluate_word(pg, w).approx_equal(x, 1e-8)) return w;
    return std::nullopt;
  };
  if (auto it = tab.words.find(word_key(x)); it != tab.words.end())
    if (auto w = check(it->second)) return w;
  std::optional<std::vector<int>> best;
  for (const auto& [u, wu] : tab.list) {
    auto it = tab.words.find(word_key(u.inverse() * x));
    if (it == tab.words.end()) continue;
    auto w = wu;
    w.insert(w.end(), it->second.begin(), it->second.end());
    if (auto ok = check(w); ok && (!best || ok->size() < best->size())) best = ok;
    if (best && static_cast<int>(best->size()) <= 2) break;
  }
  return best;
}

}  // namespace

ReductionResult generator_reduction(const PairingGroup& pg, int max_len) {
  const int n = static_cast<int>(pg.generators.size());
  const int half = (max_len + 1) / 2;
  ReductionResult res;
  res.witness.assign(n, {});
  std::vector<int> kept(n);
  std::iota(kept.begin(), kept.end(), 0);
  std::vector<int> removed;
  for (int cand = n - 1; cand >= 0; --cand) {
    std::vector<int> trial;
    for (int g : kept)
      if (g != cand) trial.push_back(g);
    const WordTable tab = build_table(pg, trial, half);
    auto w = express(pg, tab, pg.generators[cand].iso, max_len);
    if (!w) continue;
    // Witnesses that used the candidate must be re-expressed without it.
    std::vector<std::pair<int, std::vector<int>>> found;
    bool ok = true;
    for (int r : removed) {
      const auto& old = res.witness[r];
      if (std::none_of(old.begin(), old.end(), [cand](int l) { return std::abs(l) - 1 == cand; })) continue;
      auto rw = express(pg, tab, pg.generators[r].iso, max_len);
      if (!rw) {
        ok = false;
        break;
      }
      found.emplace_back(r, *rw);
    }
    if (!ok) continue;
    for (auto& [r, rw] : found) res.witness[r] = std::move(rw);
    res.witness[cand] = *w;
    removed.push_back(cand);
    kept = std::move(trial);
  }
  res.kept = kept;
  res.covered = true;
  for (int r : removed) {
    res.max_word_length = std::max(res.max_word_length, static_cast<int>(res.witness[r].size()));
    if (!evaluate_word(pg, res.witness[r]).approx_equal(pg.generators[r].iso, 1e-8)) res.covered = false;
    for (int letter : res.witness[r])
      if (std::find(kept.begin(), kept.end(), std::abs(letter) - 1) == kept.end()) res.covered = false;
  }
  return res;
}

double pairing_rotation_angle(const FacePairing& p, const Region& region) {
  const Cd c = region.layout.center(p.source.hexagon), c2 = region.layout.center(p.target.hexagon);
  const auto e = Isometryd::sphere_inversion(c2, 1) * p.iso * Isometryd::sphere_inversion(c, 1);
  const auto& m = e.matrix();
  if (std::abs(m(1, 0)) > 1e-9) throw GeometryError("pairing does not factor through inversions");
  return std::arg(m(0, 0) / m(1, 1));
}

WorkedExample worked_example() {
  const double l = kLambda;
  const Cd w = kOmega;
  const Cd a_center = l * (3.0 + 3.0 * w), f_center = -3.0 * l, c_center = l * (w - 2.0);
  const auto t = Isometryd::translation(-3.0 * l * (w + 2.0));
  WorkedExample ex;
  ex.composition = Isometryd::sphere_inversion(c_center, 1) * Isometryd::sphere_inversion(f_center, 1) * t;
  const double h = kVertexHeight;
  const Pointd p1(l * (3.0 + 4.0 * w), h), p2(l * (4.0 + 3.0 * w), h);
  const Pointd q1(l * (w - 3.0), h), q2(-2.0 * l, h);
  // The source edge runs counterclockwise around A; its image runs clockwise around C.
  const Pointd i1 = ex.composition.apply(p1), i2 = ex.composition.apply(p2);
  const Boundaryd ia = ex.composition.apply(Boundaryd(a_center));
  const double err_a = std::max(dist(i1, q2), dist(i2, q1));
  const double err_b = std::max(dist(i1, q1), dist(i2, q2));
  ex.max_error = std::min(err_a, err_b);
  ex.max_error = std::max(ex.max_error, ia.is_infinite() ? 1.0 : std::abs(ia.value() - c_center));
  ex.composition_maps_points = ex.max_error < 1e-9;
  const bool forward = err_b < err_a;
  const auto syn = forward ? synthesize_pairing(p1, p2, Boundaryd(a_center), q1, q2, Boundaryd(c_center))
                           : synthesize_pairing(p1, p2, Boundaryd(a_center), q2, q1, Boundaryd(c_center));
  ex.synthesized_matches = syn.approx_equal(ex.composition, 1e-9);
  return ex;
}

}  // namespace hsm
