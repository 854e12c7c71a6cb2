#include "hsm/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace hsm {

namespace {

class SectionBuilder {
 public:
  explicit SectionBuilder(bool timings) : timings_(timings), start_(std::chrono::steady_clock::now()) {
    out_["pass"] = true;
    out_["checks"] = Json::array();
    out_["values"] = Json::object();
  }

  void flag(const std::string& name, bool ok) { add(name, ok, Json(ok), Json(true), Json()); }

  void exact(const std::string& name, long measured, long expected) {
    add(name, measured == expected, Json(measured), Json(expected), Json());
  }

  void at_most(const std::string& name, long measured, long bound) {
    add(name, measured <= bound, Json(measured), Json("<= " + std::to_string(bound)), Json());
  }

  void approx(const std::string& name, double measured, double expected, double tol) {
    const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tol;
    add(name, ok, Json(round12(measured)), Json(round12(expected)), Json(tol));
  }

  void failure(const std::string& name, const std::string& what) {
    add(name, false, Json("error: " + what), Json(true), Json());
  }

  Json& values() { return out_["values"]; }

  Json finish() {
    if (timings_) {
      const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
      out_["runtime_s"] = round12(d.count());
    }
    return std::move(out_);
  }

 private:
  void add(const std::string& name, bool ok, Json measured, Json expected, Json tol) {
    Json c;
    c["name"] = name;
    c["pass"] = ok;
    c["measured"] = std::move(measured);
    c["expected"] = std::move(expected);
    if (!tol.is_null()) c["tolerance"] = std::move(tol);
    out_["checks"].push_back(std::move(c));
    if (!ok) out_["pass"] = false;
  }

  bool timings_;
  std::chrono::steady_clock::time_point start_;
  Json out_;
};

constexpr std::array<int, 4> kRows4{0, 1, 2, 3};

bool orientable(const TorusMap& m, const EdgeFrame& frame) {
  for (int f = 0; f < m.face_count(); ++f)
    for (int p = 0; p < 6; ++p) {
      const auto& h = m.faces[f];
      const Slot s = m.partner({f, p});
      const auto& g = m.faces[s.face];
      const int x = h.cycle[p], y = h.cycle[(p + 1) % 6];
      const int x2 = g.cycle[s.pos], y2 = g.cycle[(s.pos + 1) % 6];
      if (frame.col(x) != frame.col(y2) || frame.col(y) != frame.col(x2)) return false;
    }
  return true;
}

void invariants_checks(SectionBuilder& b, const std::string& prefix, const GraphInvariants& inv, int n, int m,
                       int degree, int girth, int diameter) {
  b.exact(prefix + ".vertices", inv.vertex_count, n);
  b.exact(prefix + ".edges", inv.edge_count, m);
  b.exact(prefix + ".min_degree", inv.min_degree, degree);
  b.exact(prefix + ".max_degree", inv.max_degree, degree);
  b.exact(prefix + ".girth", inv.girth.value_or(-1), girth);
  b.exact(prefix + ".diameter", inv.diameter, diameter);
}

Json cd_json(Cd z) { return Json::array({round12(z.real()), round12(z.imag())}); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x == 0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json graph_json(const Graph& g) {
  Json j;
  j["n"] = g.vertex_count();
  j["edges"] = Json::array();
  for (const auto& [a, b] : g.edges()) j["edges"].push_back(Json::array({a, b}));
  return j;
}

std::pair<int, int> resolve_base_edge(const Graph& g, int u, int v) {
  if (u < 0 && v < 0) {
    const auto e = g.edges();
    if (e.empty()) throw std::invalid_argument("graph has no edges");
    return e.front();
  }
  if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count() || !g.adjacent(u, v))
    throw std::invalid_argument("base edge " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
  return {u, v};
}

Pipeline::Pipeline(const ReportOptions& opt) : graph(build_hsg()) {
  const auto [u, v] = resolve_base_edge(graph, opt.base_u, opt.base_v);
  frame = edge_frame(graph, u, v);
  maniplex = canonical_relabel(build_maniplex(graph, frame, kRows4));
  region = build_region(maniplex, develop_layout(maniplex));
  pg = build_face_pairings(region);
  gluing = build_gluing(region, pg);
}

Json graph_section(const Graph& g, const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  invariants_checks(b, "hsg", graph_invariants(g), 50, 175, 7, 5, 2);
  const auto petersen = build_petersen();
  invariants_checks(b, "petersen", graph_invariants(petersen), 10, 15, 3, 5, 2);
  b.exact("hsg.automorphism_order", static_cast<long>(automorphism_order(g)), 252000);
  b.exact("petersen.automorphism_order", static_cast<long>(automorphism_order(petersen)), 120);

  const auto pc = pentagon_census(g);
  b.exact("pentagons.three_paths", pc.three_paths, 6300);
  b.flag("pentagons.unique_completion", pc.unique_completion);
  b.exact("pentagons.count", pc.pentagon_count(), 1260);

  const auto ext = petersen_census(g, opt.jobs);
  b.exact("petersen_extension.cases", ext.cases, 31500);
  b.exact("petersen_extension.unique", ext.unique_cases, 31500);
  b.exact("petersen_extension.subgraphs", ext.subgraph_count, 525);

  const auto [u, v] = resolve_base_edge(g, opt.base_u, opt.base_v);
  const auto frame = edge_frame(g, u, v);
  b.values()["base_edge"] = Json::array({u, v});
  try {
    const auto syl = sylvester_checks(g, frame);
    b.exact("sylvester.edges_with_crosses_partner", syl.edge_count(), 90);
  } catch (const VerificationError& e) {
    b.failure("sylvester.edges_with_crosses_partner", e.what());
  }

  int decomposed = 0;
  for (const auto& t : all_row_triples()) {
    std::set<int> covered;
    bool cyclic = true;
    for (const auto& h : hexagon_decomposition(g, frame, t))
      for (int k = 0; k < 6; ++k) {
        cyclic = cyclic && g.adjacent(h.cycle[k], h.cycle[(k + 1) % 6]);
        covered.insert(h.cycle[k]);
      }
    decomposed += cyclic && covered.size() == 18;
  }
  b.exact("hexagon_decomposition.triples", decomposed, 20);
  return b.finish();
}

Json maps_section(const Graph& g, const EdgeFrame& frame) {
  SectionBuilder b(false);
  int small_ok = 0;
  for (const auto& t : all_row_triples()) {
    const auto m = small_map(g, frame, t);
    small_ok += m.vertex_count == 6 && m.edge_count() == 9 && m.face_count() == 3 &&
                m.euler_characteristic() == 0 && orientable(m, frame);
  }
  b.exact("small_maps.(6,9,3)_orientable_tori", small_ok, 20);

  const auto mp = build_maniplex(g, frame, kRows4);
  const auto& big = mp.big_map;
  b.exact("big_map.vertices", big.vertex_count, 24);
  b.exact("big_map.edges", big.edge_count(), 36);
  b.exact("big_map.faces", big.face_count(), 12);
  b.exact("big_map.euler_characteristic", big.euler_characteristic(), 0);
  b.flag("big_map.orientable", orientable(big, frame));

  int in_two = 0;
  for (int h = 0; h < mp.hexagon_count(); ++h) {
    const auto& sm = mp.small_maps[mp.small_map_of(h)];
    const int found = static_cast<int>(std::count(sm.hexagon_ids.begin(), sm.hexagon_ids.end(), h));
    in_two += mp.hexagon_membership[h][1] == 4 && found == 1;
  }
  b.exact("maniplex.hexagons_in_two_maps", in_two, 12);

  const auto mult = mp.column_multigraph();
  int simple = 0, doubled = 0, missing = 0;
  for (int x = 0; x < 6; ++x)
    for (int y = x + 1; y < 6; ++y) {
      if (mult[x][y] == 1) ++simple;
      else if (mult[x][y] == 2) ++doubled;
      else ++missing;
    }
  b.exact("multigraph.simple_pairs", simple, 12);
  b.exact("multigraph.doubled_pairs", doubled, 3);
  b.exact("multigraph.missing_or_higher", missing, 0);
  std::set<int> matched;
  for (const auto& d : mp.doubled_pairs()) matched.insert(d.begin(), d.end());
  b.flag("multigraph.doubled_perfect_matching", doubled == 3 && matched.size() == 6);

  const auto canon = canonical_relabel(mp);
  Json pairs = Json::array();
  for (const auto& d : canon.doubled_pairs()) pairs.push_back(Json::array({d[0], d[1]}));
  b.values()["canonical_doubled_pairs"] = pairs;
  return b.finish();
}

Json manifold_section(const Pipeline& p, const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  const double tol = opt.tolerance;

  const auto tet = CharacteristicTetrahedron::standard();
  std::vector<double> angles;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) angles.push_back(tet.dihedral(Face(x), Face(y)));
  std::sort(angles.begin(), angles.end());
  const std::array<double, 6> expected{kPi / 6, kPi / 4, kPi / 3, kPi / 2, kPi / 2, kPi / 2};
  for (int i = 0; i < 6; ++i) b.approx("tetrahedron.dihedral_" + std::to_string(i), angles[i], expected[i], tol);

  int translations = 0, rotated = 0;
  for (const auto& g : p.pg.generators) {
    if (g.kind == PairingKind::Translation) {
      ++translations;
      continue;
    }
    rotated += std::abs(pairing_rotation_angle(g, p.region)) > kPi / 2;
  }
  b.exact("pairings.generators", static_cast<long>(p.pg.generators.size()), 39);
  b.exact("pairings.translations", translations, 3);
  const auto pr = verify_pairings(p.pg, p.region);
  b.flag("pairings.walls_matched", pr.ok());
  b.values()["pairing_max_error"] = round12(pr.max_error);
  b.flag("pairings.some_need_pi_rotation", rotated > 0);
  b.values()["pi_rotation_pairings"] = rotated;
  const auto ex = worked_example();
  b.flag("pairings.worked_example_maps_points", ex.composition_maps_points);
  b.flag("pairings.worked_example_matches_synthesized", ex.synthesized_matches);
  b.approx("pairings.worked_example_error", ex.max_error, 0, 1e-8);

  const auto ec = edge_cycle_check(p.region, p.gluing);
  b.flag("edge_cycles.angle_sums_2pi", ec.all_sums_2pi);
  b.approx("edge_cycles.max_error", ec.max_error, 0, tol);
  b.flag("edge_cycles.trivial_holonomy", ec.all_holonomy_trivial);
  int fans_pi4 = 0, fans_pi3 = 0;
  for (const auto& c : ec.classes) {
    fans_pi4 += c.size == 8 && std::abs(c.angle - kPi / 4) < tol;
    fans_pi3 += c.size == 6 && std::abs(c.angle - kPi / 3) < tol;
  }
  b.flag("edge_cycles.fan_8_x_pi/4", fans_pi4 > 0);
  b.flag("edge_cycles.fan_6_x_pi/3", fans_pi3 > 0);
  b.values()["edge_classes"] = ec.classes.size();

  const auto vl = vertex_link_check(p.region, p.gluing);
  b.exact("vertex_links.classes", static_cast<long>(vl.classes.size()), 6);
  int good = 0;
  for (const auto& c : vl.classes)
    good += c.region_vertices.size() == 4 && c.tetrahedra == 48 && c.euler() == 2;
  b.exact("vertex_links.4_vertices_48_tets_sphere", good, 6);

  const auto red = generator_reduction(p.pg, opt.max_word_length);
  b.flag("reduction.covers_all", red.covered);
  b.at_most("reduction.kept", static_cast<long>(red.kept.size()), 18);
  b.at_most("reduction.max_word_length", red.max_word_length, opt.max_word_length);
  int verified = 0, removed = 0;
  for (std::size_t g = 0; g < p.pg.generators.size(); ++g) {
    if (red.witness[g].empty()) continue;
    ++removed;
    verified += evaluate_word(p.pg, red.witness[g]).approx_equal(p.pg.generators[g].iso, 1e-8);
  }
  b.exact("reduction.witnesses_verified", verified, removed);
  b.values()["kept_generators"] = red.kept;
  return b.finish();
}

Json cusps_section(const Pipeline& p, const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  const auto cd = cusp_analysis(p.region, p.gluing);
  std::multiset<long> sizes;
  int square = 0, parabolic = 0;
  Json list = Json::array();
  for (const auto& c : cd.cusps) {
    sizes.insert(static_cast<long>(c.hexagons.size()) + c.contains_infinity);
    square += std::abs(c.shape - kOmega) <= opt.tolerance;
    parabolic += c.parabolic;
    Json e;
    e["contains_infinity"] = c.contains_infinity;
    e["hexagons"] = c.hexagons;
    e["tetrahedra"] = c.tetrahedra;
    e["shape"] = cd_json(c.shape);
    e["area"] = round12(c.area);
    e["horoball_volume"] = round12(c.horoball_volume);
    list.push_back(std::move(e));
  }
  b.exact("cusps.count", static_cast<long>(cd.cusps.size()), 5);
  b.flag("cusps.sizes_{1,3,3,3,3}", sizes == std::multiset<long>{1, 3, 3, 3, 3});
  b.exact("cusps.shape_exp(i*pi/3)", square, 5);
  b.exact("cusps.parabolic_stabilizers", parabolic, 5);
  b.approx("cusps.horoball_volume_ratio", cd.volume_ratio, 4, opt.tolerance);
  b.values()["cusps"] = std::move(list);
  return b.finish();
}

Json volume_section(const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  const double l = lobachevsky(kPi / 3);
  const double tv = tetrahedron_volume();
  b.approx("volume.total", total_volume(), 81.1953, 5e-4);
  b.approx("volume.288_tetrahedra", 288 * tv, total_volume(), 1e-10);
  b.approx("volume.240_lobachevsky(pi/3)", 240 * l, total_volume(), 1e-10);
  b.values()["lobachevsky_pi_over_3"] = round12(l);
  b.values()["tetrahedron_volume"] = round12(tv);
  b.values()["volume"] = round12(total_volume());
  return b.finish();
}

Json symmetry_section(const Pipeline& p, const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  const auto fg = build_flag_graph(p.gluing);
  b.flag("flag_graph.connected", fg.connected);
  const auto sg = automorphism_group(fg, opt.jobs);
  b.exact("group.order", sg.order(), 48);
  b.flag("group.commutes_with_flag_graph", sg.commutes);
  b.flag("group.free_action", sg.free_action);
  int preserving = 0;
  for (int o : sg.orientation) preserving += o > 0;
  b.values()["orientation_preserving"] = preserving;

  const auto w = coxeter_presentation_check(sg);
  b.flag("coxeter.(2,4,3)_triple_generates", w.ok && w.generated == 48);
  b.values()["coxeter_product_orders"] = w.product_orders;

  const auto orb = orbit_report(sg, p.region, p.gluing);
  std::multiset<long> hex;
  for (const auto& o : orb.hexagon_orbits) hex.insert(static_cast<long>(o.size()));
  b.flag("orbits.well_defined", orb.well_defined);
  b.flag("orbits.hexagons_{4,8}", hex == std::multiset<long>{4, 8});
  b.flag("orbits.doubled_edges_one_orbit", orb.doubled_edges_one_orbit);
  b.flag("orbits.big_cusp_fixed", orb.big_cusp_fixed);

  const auto refl = geometric_reflections(p.region, sg);
  b.flag("reflections.generate_group", refl.ok && refl.generated == 48);
  b.values()["reflections_realized"] = refl.distinct_realized;
  b.values()["reflection_product_orders"] = refl.product_orders;
  b.values()["reflection_cube_profile"] = refl.cube_profile;
  return b.finish();
}

Json geodesics_section(const Pipeline& p, const ReportOptions& opt) {
  SectionBuilder b(opt.timings);
  const auto sl = segment_lengths(p.region);
  b.approx("segment.edge", sl.edge, std::log(2 + std::sqrt(3.0)), 1e-12);
  b.approx("segment.height", sl.height, 2 * std::log(1 + std::sqrt(2.0)), 1e-12);
  b.approx("segment.diagonal", sl.diagonal, std::log(5 + 2 * std::sqrt(6.0)), 1e-12);

  const double tol = std::max(opt.tolerance, 1e-8);
  Json claims = Json::array();
  for (const auto& c : closed_geodesic_suite(p.region, p.gluing)) {
    if (c.expected > 0)
      b.approx("closed." + c.name, c.measured, c.expected, tol);
    else
      b.flag("closed." + c.name, c.ok);
    claims.push_back(Json{{"name", c.name}, {"steps", c.steps}});
  }
  int bicuspid = 0;
  for (int h = 0; h < p.region.maniplex.hexagon_count(); ++h) {
    const Cd c = p.region.layout.center(h);
    bicuspid += is_bicuspid({Boundaryd(c), Boundaryd::infinity()}, Pointd(c, 1.0), p.region, p.gluing);
  }
  b.exact("vertical_center_lines_bicuspid", bicuspid, 12);
  b.values()["claims"] = std::move(claims);
  b.values()["notes"] = Json::array({"edge length is ln(2+sqrt3); ln(2-sqrt3) is negative",
                                     "diagonal length is ln(5+2sqrt6), not ln(1+2/sqrt3)"});
  return b.finish();
}

Json build_report(const ReportOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Json r;
  r["schema_version"] = kSchemaVersion;
  Json o;
  o["base_edge"] = opt.base_u < 0 ? Json() : Json::array({opt.base_u, opt.base_v});
  o["tolerance"] = opt.tolerance;
  o["max_word_length"] = opt.max_word_length;
  r["options"] = o;

  const Pipeline p(opt);
  Json s;
  s["graph"] = graph_section(p.graph, opt);
  s["maps"] = maps_section(p.graph, p.frame);
  s["manifold"] = manifold_section(p, opt);
  s["cusps"] = cusps_section(p, opt);
  s["volume"] = volume_section(opt);
  s["symmetry"] = symmetry_section(p, opt);
  s["geodesics"] = geodesics_section(p, opt);
  bool pass = true;
  for (const auto& [k, v] : s.items()) pass = pass && v["pass"].get<bool>();
  r["pass"] = pass;
  r["sections"] = std::move(s);
  if (opt.timings) {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
    r["runtime_s"] = round12(d.count());
  }
  return r;
}

std::string render_tessellation_svg(TessellationKind kind, int depth) {
  using Hex = std::array<Cd, 6>;
  // Regular right-angled hexagon: cosh(circumradius) = cot(pi/6) cot(pi/4).
  const double r = std::tanh(std::acosh(std::sqrt(3.0)) / 2);
  Hex base;
  for (int k = 0; k < 6; ++k) base[k] = std::polar(r, kPi / 6 + k * kPi / 3);

  // Circle orthogonal to the unit circle through a and b; radius 0 for a diameter.
  const auto mirror = [](Cd a, Cd b) -> std::pair<Cd, double> {
    const Cd c3 = 1.0 / std::conj(a);
    const double d = 2 * (a.real() * (b.imag() - c3.imag()) + b.real() * (c3.imag() - a.imag()) +
                          c3.real() * (a.imag() - b.imag()));
    if (std::abs(d) < 1e-12) return {0, 0};
    const double x = (std::norm(a) * (b.imag() - c3.imag()) + std::norm(b) * (c3.imag() - a.imag()) +
                      std::norm(c3) * (a.imag() - b.imag())) / d;
    const double y = (std::norm(a) * (c3.real() - b.real()) + std::norm(b) * (a.real() - c3.real()) +
                      std::norm(c3) * (b.real() - a.real())) / d;
    const Cd c(x, y);
    return {c, std::abs(c - a)};
  };
  const auto reflect = [](Cd z, std::pair<Cd, double> m, Cd a, Cd b) {
    if (m.second == 0) {
      const Cd u = (b - a) / std::abs(b - a);
      return u * u * std::conj(z);
    }
    return m.first + m.second * m.second / std::conj(z - m.first);
  };
  const auto key = [](const Hex& h) {
    Cd s = 0;
    for (const Cd& z : h) s += z;
    return std::make_pair(std::lround(s.real() * 1e5), std::lround(s.imag() * 1e5));
  };

  std::vector<Hex> tiles{base};
  std::map<std::pair<long, long>, int> seen{{key(base), 0}};
  std::vector<int> frontier{0};
  for (int level = 0; level < depth; ++level) {
    std::vector<int> next;
    for (int t : frontier)
      for (int k = 0; k < 6; ++k) {
        const Hex& h = tiles[t];
        const auto m = mirror(h[k], h[(k + 1) % 6]);
        Hex img;
        for (int j = 0; j < 6; ++j) img[j] = reflect(h[j], m, h[k], h[(k + 1) % 6]);
        if (std::abs(img[0] - img[3]) < 2e-3) continue;
        if (seen.emplace(key(img), static_cast<int>(tiles.size())).second) {
          next.push_back(static_cast<int>(tiles.size()));
          tiles.push_back(img);
        }
      }
    frontier = std::move(next);
  }

  const bool purple = kind == TessellationKind::TypeI;
  const std::string fill = purple ? "#d7b8e8" : "#bfe6c8";
  const std::string stroke = purple ? "#6c2c91" : "#1e7b3a";
  const double scale = 250, off = 260;
  const auto px = [&](Cd z) { return fmt(off + scale * z.real()) + "," + fmt(off - scale * z.imag()); };
  const auto arc = [&](Cd a, Cd b) {
    const auto m = mirror(a, b);
    std::string pts = px(a);
    if (m.second != 0) {
      const double ta = std::arg(a - m.first);
      double dt = std::remainder(std::arg(b - m.first) - ta, 2 * kPi);
      for (int i = 1; i < 12; ++i) pts += " " + px(m.first + std::polar(m.second, ta + dt * i / 12));
    }
    return pts + " " + px(b);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n"
      << "<title>" << (purple ? "type I" : "type II") << " tessellation, 4 hexagons per vertex</title>\n"
      << "<circle cx=\"260\" cy=\"260\" r=\"250\" fill=\"white\" stroke=\"black\"/>\n";
  for (const Hex& h : tiles) {
    std::string poly;
    for (int k = 0; k < 6; ++k) poly += (k ? " " : "") + arc(h[k], h[(k + 1) % 6]);
    svg << "<polygon points=\"" << poly << "\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
    for (int k = 0; k < 6; ++k) {
      const std::string line = arc(h[k], h[(k + 1) % 6]);
      if (purple && k % 2 == 1) {
        svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"3.5\"/>\n"
            << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"white\" stroke-width=\"1.2\"/>\n";
      } else {
        svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hsm
