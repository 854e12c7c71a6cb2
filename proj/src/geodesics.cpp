#include "hsm/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

namespace hsm {

namespace {

constexpr double kSideTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Six walls, then the hexagon hemisphere, all oriented into the cone.
std::array<Planed, 7> cone_planes(const Region& region, int cone) {
  const auto& c = region.cones[cone];
  std::array<Planed, 7> out;
  for (int k = 0; k < 6; ++k) out[k] = c.walls[k].plane;
  const Cd z = region.layout.center(c.hexagon);
  const Planed floor = Planed::hemisphere(z, 1.0);
  out[6] = floor.side(Pointd(z, c.dir == kUp ? 2.0 : 0.5)) > 0 ? floor : floor.flipped();
  return out;
}

struct Crossing {
  int cone;
  Isometryd map;  // neighbour copy -> current coordinates
};

Crossing cross(const Region& region, const Gluing& gluing, int cone, int plane) {
  const auto& c = region.cones[cone];
  const int t = tet_id(c.hexagon, c.dir, plane == 6 ? 0 : plane, 0);
  const Face f = plane == 6 ? Face::A : Face::D;
  const int o = gluing.across(t, f);
  return {region.tets[o].hexagon * 2 + region.tets[o].dir, gluing.map_across(t, f)};
}

// Distance along the line toward `forward` before the side function of pl
// turns negative; the side function is a e^s + b e^-s along a geodesic.
double plane_exit(const Planed& pl, const Pointd& x, const Boundaryd& forward) {
  const double f0 = pl.side(x);
  const double f1 = pl.side(geodesic_point(x, forward, 1.0));
  const double e = std::exp(1.0);
  const double a = (f1 - f0 / e) / (e - 1 / e);
  const double b = f0 - a;
  if (std::abs(a) < kSideTol && std::abs(b) < kSideTol) return kInf;
  // Asymptotic to the plane: the line runs into an ideal vertex of it.
  if (a >= -1e-10 * std::max(1.0, std::abs(b))) return kInf;
  if (b <= 0) return 0;
  return std::max(0.0, 0.5 * std::log(-b / a));
}

bool contains(const std::array<Planed, 7>& planes, const Pointd& x) {
  return std::all_of(planes.begin(), planes.end(), [&](const Planed& p) { return p.side(x) >= -kSideTol; });
}

double cone_exit(const std::array<Planed, 7>& planes, const Pointd& x, const Boundaryd& forward) {
  double s = kInf;
  for (const auto& p : planes) s = std::min(s, plane_exit(p, x, forward));
  return s;
}

struct StarState {
  int cone;
  Isometryd phi;  // state coordinates -> base coordinates
  Pointd x;
  GeodesicLine line;
};

// Every region copy around the point x of `cone`, reached by crossing faces through x.
std::vector<StarState> star(const Region& region, const Gluing& gluing, int cone, const Pointd& x,
                            const GeodesicLine& line) {
  std::vector<StarState> out{{cone, Isometryd(), x, line}};
  std::map<std::tuple<int, long long, long long, long long>, bool> seen;
  auto key = [](int c, const Pointd& p) {
    return std::make_tuple(c, std::llround(p.z.real() * 1e7), std::llround(p.z.imag() * 1e7),
                           std::llround(p.t * 1e7));
  };
  seen[key(cone, x)] = true;
  for (std::size_t i = 0; i < out.size() && out.size() < 400; ++i) {
    const StarState cur = out[i];
    const auto planes = cone_planes(region, cur.cone);
    for (int p = 0; p < 7; ++p) {
      if (std::abs(planes[p].side(cur.x)) > 1e-8) continue;
      const Crossing c = cross(region, gluing, cur.cone, p);
      const Isometryd inv = c.map.inverse();
      const Pointd y = inv.apply(cur.x);
      if (!seen.emplace(key(c.cone, y), true).second) continue;
      out.push_back({c.cone, cur.phi * c.map, y, {inv.apply(cur.line.back), inv.apply(cur.line.forward)}});
    }
  }
  return out;
}

bool same_line(const GeodesicLine& a, const GeodesicLine& b) {
  return a.back.approx_equal(b.back, 1e-8) && a.forward.approx_equal(b.forward, 1e-8);
}

}  // namespace

GeodesicLine line_through(const Pointd& p, const Pointd& q) {
  const auto [back, forward] = geodesic_endpoints(p, q);
  return {back, forward};
}

SegmentLengths segment_lengths(const Region& region) {
  const auto& c = region.cone(0, kUp);
  const auto& w = c.walls;
  SegmentLengths s;
  s.edge = dist(w[0].p1, w[0].p2);
  s.diagonal = dist(w[0].p1, w[3].p1);
  s.height = dist(midpoint(w[0].p1, w[0].p2), midpoint(w[3].p1, w[3].p2));
  return s;
}

bool is_purple(const Region& region, int hexagon) {
  const auto doubled = region.maniplex.doubled_pairs();
  const auto& cols = region.layout.corner_columns[hexagon];
  for (int k = 0; k < 6; ++k) {
    std::array<int, 2> pair{cols[k], cols[(k + 1) % 6]};
    std::sort(pair.begin(), pair.end());
    if (std::find(doubled.begin(), doubled.end(), pair) != doubled.end()) return true;
  }
  return false;
}

PlaneTessellation classify_plane(const Region& region, const Gluing& gluing, int hexagon) {
  PlaneTessellation pt;
  pt.hexagon = hexagon;
  pt.kind = is_purple(region, hexagon) ? TessellationKind::TypeI : TessellationKind::TypeII;
  // Rotating by pi about an edge crosses a wall, the hexagon plane, then a wall.
  auto flip = [&](int t) {
    return gluing.across(gluing.across(gluing.across(t, Face::D), Face::A), Face::D);
  };
  pt.uniform = true;
  for (int k = 0; k < 6; ++k) {
    pt.neighbors[k] = region.tets[flip(tet_id(hexagon, kUp, k, 0))].hexagon;
    if (is_purple(region, pt.neighbors[k]) != (pt.kind == TessellationKind::TypeI)) pt.uniform = false;
  }
  const int start = tet_id(hexagon, kUp, 0, 0);
  int u = start;
  do {
    u = gluing.across(flip(u), Face::C);
    ++pt.hexagons_per_vertex;
  } while (u != start && pt.hexagons_per_vertex < 64);
  return pt;
}

bool same_manifold_point(const Region& region, const Gluing& gluing, int cone, const Pointd& p, const Pointd& q) {
  const GeodesicLine dummy{Boundaryd::infinity(), Boundaryd(Cd(0))};
  for (const auto& s : star(region, gluing, cone, p, dummy))
    if (dist(s.x, q) < 1e-7) return true;
  return false;
}

TraceResult trace_geodesic(const GeodesicLine& line, const Pointd& start, const Region& region,
                           const Gluing& gluing, const TraceOptions& opt) {
  TraceResult r;
  const int ncones = static_cast<int>(region.cones.size());
  int first = -1;
  for (int c = 0; c < ncones && first < 0; ++c)
    if (contains(cone_planes(region, c), start)) first = c;
  if (first < 0) throw GeometryError("trace start point is outside the fundamental region");

  const auto reps = star(region, gluing, first, start, line);
  // Current state: cone, coordinates of the line in that cone, developing map G.
  int cone = -1;
  Isometryd g;
  Pointd x;
  GeodesicLine cur;
  auto advance_from = [&](const std::vector<StarState>& states) {
    double best = 0;
    const StarState* pick = nullptr;
    for (const auto& s : states) {
      const auto planes = cone_planes(region, s.cone);
      if (!contains(planes, s.x)) continue;
      const double e = cone_exit(planes, s.x, s.line.forward);
      if (e > best + 1e-12) {
        best = e;
        pick = &s;
      }
    }
    if (!pick || best < 1e-10) return false;
    cone = pick->cone;
    g = g * pick->phi;
    x = pick->x;
    cur = pick->line;
    return true;
  };
  if (!advance_from(reps)) throw GeometryError("trace cannot leave its start point");

  std::size_t next_mark = 0;
  auto marks = opt.marks;
  std::sort(marks.begin(), marks.end());
  for (r.steps = 0; r.steps < opt.max_steps; ++r.steps) {
    const auto planes = cone_planes(region, cone);
    const double s = cone_exit(planes, x, cur.forward);
    while (next_mark < marks.size() && marks[next_mark] <= r.traveled + s) {
      r.marked.emplace_back(cone, geodesic_point(x, cur.forward, marks[next_mark] - r.traveled));
      ++next_mark;
    }
    if (std::isinf(s)) {
      r.cusp = true;
      r.segments.push_back({cone, x, x});
      return r;
    }
    const Pointd y = geodesic_point(x, cur.forward, s);
    r.segments.push_back({cone, x, y});
    r.traveled += s;
    x = y;
    if (!advance_from(star(region, gluing, cone, x, cur))) throw GeometryError("trace is stuck at a wall");
    for (const auto& rep : reps) {
      if (rep.cone != cone || !same_line(rep.line, cur)) continue;
      const Isometryd h = g * rep.phi.inverse();
      if (h.is_identity(1e-8)) continue;
      r.holonomy = h;
      r.translation_length = complex_length(h).real();
      r.closed = true;
      return r;
    }
  }
  return r;
}

bool is_bicuspid(const GeodesicLine& line, const Pointd& start, const Region& region, const Gluing& gluing) {
  const auto fwd = trace_geodesic(line, start, region, gluing);
  const auto bwd = trace_geodesic({line.forward, line.back}, start, region, gluing);
  return fwd.cusp && bwd.cusp;
}

std::vector<GeodesicClaim> closed_geodesic_suite(const Region& region, const Gluing& gluing) {
  int green = -1, purple = -1;
  for (int h = 0; h < region.maniplex.hexagon_count(); ++h) {
    if (is_purple(region, h)) {
      if (purple < 0) purple = h;
    } else if (green < 0) {
      green = h;
    }
  }
  const SegmentLengths len = segment_lengths(region);
  auto corner = [&](int h, int k) { return Pointd(region.layout.corner(h, k % 6), 1 / std::sqrt(3.0)); };
  auto mid = [&](int h, int k) { return midpoint(corner(h, k), corner(h, k + 1)); };
  auto center = [&](int h) { return Pointd(region.layout.center(h), 1.0); };
  auto run = [&](const std::string& name, double expected, const Pointd& a, const Pointd& b, const Pointd& s) {
    const auto t = trace_geodesic(line_through(a, b), s, region, gluing);
    GeodesicClaim c{name, expected, t.closed ? t.translation_length : 0.0, t.steps, false};
    c.ok = t.closed && std::abs(c.measured - expected) < 1e-8;
    return c;
  };
  std::vector<GeodesicClaim> out;
  out.push_back(run("two diagonals, type II", 2 * std::log(5 + 2 * std::sqrt(6.0)), corner(green, 0),
                    corner(green, 3), center(green)));
  out.push_back(run("two heights, type II", 4 * std::log(1 + std::sqrt(2.0)), mid(green, 0), mid(green, 3),
                    center(green)));
  out.push_back(run("four edges, type II", 4 * std::log(2 + std::sqrt(3.0)), corner(green, 0), corner(green, 1),
                    mid(green, 0)));
  int dk = 0;
  {
    const auto doubled = region.maniplex.doubled_pairs();
    const auto& cols = region.layout.corner_columns[purple];
    for (int k = 0; k < 6; ++k) {
      std::array<int, 2> pair{cols[k], cols[(k + 1) % 6]};
      std::sort(pair.begin(), pair.end());
      if (std::find(doubled.begin(), doubled.end(), pair) != doubled.end()) {
        dk = k;
        break;
      }
    }
  }
  out.push_back(run("two double edges, type I", 2 * std::log(2 + std::sqrt(3.0)), corner(purple, dk),
                    corner(purple, dk + 1), mid(purple, dk)));
  out.push_back(run("four heights, type I", 8 * std::log(1 + std::sqrt(2.0)), mid(purple, dk), mid(purple, dk + 3),
                    center(purple)));

  // The four-height geodesic crosses itself: two heights from a double-edge
  // midpoint it is back at the same point.
  TraceOptions opt;
  opt.marks = {2 * len.height};
  const auto t =
      trace_geodesic(line_through(mid(purple, dk), mid(purple, dk + 3)), mid(purple, dk), region, gluing, opt);
  GeodesicClaim self{"four heights, type I: midpoint meets start", 0, 0, t.steps, false};
  if (!t.marked.empty()) {
    self.ok = same_manifold_point(region, gluing, t.marked[0].first, t.marked[0].second, mid(purple, dk));
    self.measured = self.ok ? 0 : 1;
  }
  out.push_back(self);
  return out;
}

}  // namespace hsm
