#include "hsm/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>

namespace hsm {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Dense class ids, numbered in order of first appearance.
std::vector<int> classes_over(const FlagGraph& fg, std::initializer_list<Face> faces, int& count) {
  UnionFind uf(fg.size());
  for (int t = 0; t < fg.size(); ++t)
    for (Face f : faces) uf.unite(t, fg.s[static_cast<int>(f)][t]);
  std::map<int, int> ids;
  std::vector<int> out(fg.size());
  for (int t = 0; t < fg.size(); ++t) out[t] = ids.emplace(uf.find(t), static_cast<int>(ids.size())).first->second;
  count = static_cast<int>(ids.size());
  return out;
}

std::optional<Perm> propagate(const FlagGraph& fg, int target) {
  const int n = fg.size();
  Perm p(n, -1);
  std::vector<bool> used(n, false);
  p[0] = target;
  used[target] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& s : fg.s) {
      const int y = s[x], img = s[p[x]];
      if (p[y] < 0) {
        if (used[img]) return std::nullopt;
        p[y] = img;
        used[img] = true;
        queue.push_back(y);
      } else if (p[y] != img) {
        return std::nullopt;
      }
    }
  }
  return p;
}

std::optional<Eisenstein> to_eisenstein(Cd z, double lambda) {
  const Cd w = z / lambda;
  const double y = w.imag() / std::sin(kPi / 3);
  const double x = w.real() - y / 2;
  const Eisenstein e{std::lround(x), std::lround(y)};
  if (std::abs(x - static_cast<double>(e.a)) > 1e-7 || std::abs(y - static_cast<double>(e.b)) > 1e-7)
    return std::nullopt;
  return e;
}

// Orbits of an action given per element as a permutation of `count` points.
std::vector<std::vector<int>> orbits(const std::vector<std::vector<int>>& actions, int count) {
  UnionFind uf(count);
  for (const auto& a : actions)
    for (int i = 0; i < count; ++i) uf.unite(i, a[i]);
  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < count; ++i) by_root[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [r, o] : by_root) out.push_back(std::move(o));
  return out;
}

// Action of each element on the classes; empty when not well defined.
std::vector<std::vector<int>> induced(const SymmetryGroup& sg, const std::vector<int>& cls, int count) {
  std::vector<std::vector<int>> out;
  for (const auto& g : sg.elements) {
    std::vector<int> a(count, -1);
    for (std::size_t t = 0; t < g.size(); ++t) {
      const int img = cls[g[t]];
      if (a[cls[t]] >= 0 && a[cls[t]] != img) return {};
      a[cls[t]] = img;
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

FlagGraph build_flag_graph(const Gluing& gluing) {
  FlagGraph fg;
  const int n = static_cast<int>(gluing.neighbor.size());
  for (int f = 0; f < 4; ++f) {
    fg.s[f].resize(n);
    for (int t = 0; t < n; ++t) {
      const int o = gluing.neighbor[t][f];
      if (o < 0 || o == t) throw VerificationError("flag graph: missing or fixed neighbour");
      fg.s[f][t] = o;
    }
    for (int t = 0; t < n; ++t)
      if (fg.s[f][fg.s[f][t]] != t) throw VerificationError("flag graph: face adjacency is not an involution");
  }
  int comps = 0;
  classes_over(fg, {Face::A, Face::B, Face::C, Face::D}, comps);
  fg.connected = comps == 1;
  return fg;
}

FlagGraph build_flag_graph(const Region& region, const PairingGroup& pg) {
  return build_flag_graph(build_gluing(region, pg));
}

int SymmetryGroup::index_of(const Perm& p) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return static_cast<int>(i);
  return -1;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

int perm_order(const Perm& p) {
  Perm id(p.size());
  std::iota(id.begin(), id.end(), 0);
  Perm q = p;
  int k = 1;
  while (q != id) {
    q = compose(p, q);
    ++k;
  }
  return k;
}

int generated_order(const std::vector<Perm>& gens) {
  if (gens.empty()) return 1;
  Perm id(gens[0].size());
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    const Perm x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm y = compose(g, x);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return static_cast<int>(seen.size());
}

SymmetryGroup automorphism_group(const FlagGraph& fg, int jobs) {
  const int n = fg.size();
  std::vector<std::optional<Perm>> found(n);
  const int workers = std::max(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int y = w; y < n; y += workers) found[y] = propagate(fg, y);
    });
  for (auto& th : pool) th.join();

  SymmetryGroup sg;
  for (auto& p : found)
    if (p) sg.elements.push_back(std::move(*p));
  sg.commutes = true;
  sg.free_action = true;
  std::vector<int> colour(n, -1);
  colour[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& s : fg.s)
      if (colour[s[x]] < 0) {
        colour[s[x]] = 1 - colour[x];
        queue.push_back(s[x]);
      }
  }
  for (const auto& g : sg.elements) sg.orientation.push_back(colour[g[0]] == colour[0] ? 1 : -1);
  for (std::size_t i = 0; i < sg.elements.size(); ++i) {
    const auto& g = sg.elements[i];
    for (const auto& s : fg.s)
      for (int t = 0; t < n; ++t)
        if (g[s[t]] != s[g[t]]) sg.commutes = false;
    if (i > 0)
      for (int t = 0; t < n; ++t)
        if (g[t] == t) sg.free_action = false;
  }
  return sg;
}

CoxeterWitness coxeter_presentation_check(const SymmetryGroup& sg) {
  CoxeterWitness w;
  std::vector<int> involutions;
  for (int i = 1; i < sg.order(); ++i)
    if (perm_order(sg.elements[i]) == 2) involutions.push_back(i);
  for (int a : involutions)
    for (int b : involutions)
      for (int c : involutions) {
        const auto& g0 = sg.elements[a];
        const auto& g1 = sg.elements[b];
        const auto& g2 = sg.elements[c];
        if (perm_order(compose(g0, g2)) != 2 || perm_order(compose(g0, g1)) != 4 ||
            perm_order(compose(g1, g2)) != 3)
          continue;
        const int gen = generated_order({g0, g1, g2});
        if (gen != sg.order()) continue;
        w.generators = {a, b, c};
        w.product_orders = {2, 4, 3};
        w.generated = gen;
        w.ok = gen == 48;
        return w;
      }
  return w;
}

CornerClasses corner_classes(const Region& region, const Gluing& gluing) {
  const FlagGraph fg = build_flag_graph(gluing);
  CornerClasses cc;
  // A class of corners of type X is glued across the three faces containing X.
  cc.hexagon = classes_over(fg, {Face::A, Face::B, Face::C}, cc.hexagons);
  cc.edge = classes_over(fg, {Face::A, Face::B, Face::D}, cc.edges);
  cc.vertex = classes_over(fg, {Face::A, Face::C, Face::D}, cc.vertices);
  cc.cusp = classes_over(fg, {Face::B, Face::C, Face::D}, cc.cusps);
  const auto doubled = region.maniplex.doubled_pairs();
  cc.edge_doubled.assign(cc.edges, false);
  cc.vertex_column.assign(cc.vertices, -1);
  for (int t = 0; t < fg.size(); ++t) {
    const auto& tt = region.tets[t];
    const auto& cols = region.layout.corner_columns[tt.hexagon];
    std::array<int, 2> pair{cols[tt.slot], cols[(tt.slot + 1) % 6]};
    std::sort(pair.begin(), pair.end());
    if (std::find(doubled.begin(), doubled.end(), pair) != doubled.end()) cc.edge_doubled[cc.edge[t]] = true;
    cc.vertex_column[cc.vertex[t]] = cols[(tt.slot + tt.half) % 6];
    if (tt.dir == kUp) cc.big_cusp = cc.cusp[t];
  }
  return cc;
}

OrbitReport orbit_report(const SymmetryGroup& sg, const Region& region, const Gluing& gluing) {
  const CornerClasses cc = corner_classes(region, gluing);
  OrbitReport rep;
  const auto hex = induced(sg, cc.hexagon, cc.hexagons);
  const auto edge = induced(sg, cc.edge, cc.edges);
  const auto vert = induced(sg, cc.vertex, cc.vertices);
  const auto cusp = induced(sg, cc.cusp, cc.cusps);
  rep.well_defined = !sg.elements.empty() && !hex.empty() && !edge.empty() && !vert.empty() && !cusp.empty();
  if (!rep.well_defined) return rep;
  rep.hexagon_orbits = orbits(hex, cc.hexagons);
  rep.edge_orbits = orbits(edge, cc.edges);
  rep.vertex_orbits = orbits(vert, cc.vertices);
  rep.cusp_orbits = orbits(cusp, cc.cusps);
  rep.big_cusp_fixed = std::all_of(cusp.begin(), cusp.end(), [&](const auto& a) { return a[cc.big_cusp] == cc.big_cusp; });
  rep.big_cusp_tets_preserved = std::all_of(sg.elements.begin(), sg.elements.end(), [&](const Perm& g) {
    for (std::size_t t = 0; t < g.size(); ++t)
      if ((region.tets[t].dir == kUp) != (region.tets[g[t]].dir == kUp)) return false;
    return true;
  });
  for (const auto& o : rep.edge_orbits) {
    const int doubled = static_cast<int>(std::count_if(o.begin(), o.end(), [&](int e) { return cc.edge_doubled[e]; }));
    if (doubled == 6 && o.size() == 6) rep.doubled_edges_one_orbit = true;
  }
  for (const auto& a : vert) {
    int fixed = 0, swaps = 0;
    for (int v = 0; v < cc.vertices; ++v) {
      if (a[v] == v) {
        ++fixed;
      } else if (a[a[v]] == v) {
        ++swaps;
      }
    }
    if (fixed == 2 && swaps == 4) rep.vertex_22_element = true;
  }
  return rep;
}

namespace {

// Tetrahedron of the region equivalent to iso(t) under a period translation.
std::optional<int> image_tet(const Region& region, const Isometryd& iso, int t) {
  const auto& tt = region.tets[t];
  const auto& lay = region.layout;
  const auto c = to_eisenstein(iso.apply(Boundaryd(lay.center(tt.hexagon))).value(), lay.lambda);
  const auto p0 = to_eisenstein(iso.apply(Boundaryd(lay.corner(tt.hexagon, tt.slot))).value(), lay.lambda);
  const auto p1 = to_eisenstein(iso.apply(Boundaryd(lay.corner(tt.hexagon, (tt.slot + 1) % 6))).value(), lay.lambda);
  if (!c || !p0 || !p1) return std::nullopt;
  const int h = lay.hexagon_at(*c);
  if (h < 0) return std::nullopt;
  const Eisenstein shift = lay.centers[h] - *c;
  const auto& corners = lay.corners[h];
  const int k0 = static_cast<int>(std::find(corners.begin(), corners.end(), *p0 + shift) - corners.begin());
  const int k1 = static_cast<int>(std::find(corners.begin(), corners.end(), *p1 + shift) - corners.begin());
  if (k0 == 6 || k1 == 6) return std::nullopt;
  const int v = tt.half == 0 ? k0 : k1;
  int slot = -1;
  if ((k0 + 1) % 6 == k1) slot = k0;
  if ((k1 + 1) % 6 == k0) slot = k1;
  if (slot < 0) return std::nullopt;
  return tet_id(h, tt.dir, slot, v == slot ? 0 : 1);
}

}  // namespace

ReflectionResult geometric_reflections(const Region& region, const SymmetryGroup& sg) {
  ReflectionResult res;
  const auto& lay = region.layout;
  std::set<Eisenstein> points;
  for (std::size_t h = 0; h < lay.centers.size(); ++h) {
    points.insert(lay.centers[h]);
    for (const auto& c : lay.corners[h]) points.insert(reduce_mod_period(c));
  }
  const int n = static_cast<int>(region.tets.size());
  res.walls_preserved = true;
  for (const auto& e : points)
    for (int j = 0; j < 6; ++j) {
      Mirror m;
      m.point = lay.lambda * e.value();
      m.angle = j * kPi / 6;
      const Cd normal = Cd(0, 1) * std::polar(1.0, m.angle);
      m.iso = reflection_in_plane(Planed::vertical(normal, (std::conj(normal) * m.point).real()));
      Perm perm(n);
      bool ok = true;
      for (int t = 0; t < n && ok; ++t) {
        const auto img = image_tet(region, m.iso, t);
        if (img) {
          perm[t] = *img;
        } else {
          ok = false;
        }
      }
      if (ok) {
        m.perm = std::move(perm);
        m.in_group = sg.index_of(m.perm) >= 0;
        // Every wall lands on a wall of the translated region.
        for (const auto& cone : region.cones)
          for (const auto& w : cone.walls) {
            const auto a = to_eisenstein(m.iso.apply(w.p1).z, lay.lambda);
            const auto b = to_eisenstein(m.iso.apply(w.p2).z, lay.lambda);
            if (!a || !b || color_class(*a) == 0 || color_class(*b) == 0) res.walls_preserved = false;
          }
      }
      if (!m.in_group) ++res.rejected;
      res.candidates.push_back(std::move(m));
    }

  std::vector<int> distinct;
  std::set<Perm> seen;
  for (int i = 0; i < static_cast<int>(res.candidates.size()); ++i)
    if (res.candidates[i].in_group && seen.insert(res.candidates[i].perm).second) distinct.push_back(i);
  res.distinct_realized = static_cast<int>(distinct.size());
  for (bool want_cube : {true, false})
    for (int a : distinct)
      for (int b : distinct)
        for (int c : distinct) {
          if (a == b || b == c || a == c) continue;
          const auto& r0 = res.candidates[a].perm;
          const auto& r1 = res.candidates[b].perm;
          const auto& r2 = res.candidates[c].perm;
          const std::array<int, 3> orders{perm_order(compose(r0, r2)), perm_order(compose(r0, r1)),
                                          perm_order(compose(r1, r2))};
          const bool cube = orders == std::array<int, 3>{2, 4, 3};
          if (want_cube && !cube) continue;
          const int gen = generated_order({r0, r1, r2});
          if (gen != sg.order()) continue;
          res.chosen = {a, b, c};
          res.product_orders = orders;
          res.cube_profile = cube;
          res.generated = gen;
          res.ok = res.walls_preserved;
          return res;
        }
  return res;
}

}  // namespace hsm
