#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "hsm/report.hpp"

using namespace hsm;

namespace {

struct Settings {
  ReportOptions opt;
  std::vector<int> base_edge;
  std::string out;
  std::string dump_graph;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f.flush()) throw std::runtime_error("cannot write " + path);
}

std::string scalar(const Json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.is_string() ? v.get<std::string>() : v.dump();
}

bool print_section(const std::string& name, const Json& s) {
  const bool pass = s["pass"].get<bool>();
  std::cout << "[" << name << "] " << (pass ? "PASS" : "FAIL") << "\n";
  for (const auto& c : s["checks"]) {
    std::cout << "  " << (c["pass"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>() << " = "
              << scalar(c["measured"]) << " (expected " << scalar(c["expected"]);
    if (c.contains("tolerance")) std::cout << ", tol " << scalar(c["tolerance"]);
    std::cout << ")\n";
  }
  if (s.contains("runtime_s")) std::cout << "  runtime " << scalar(s["runtime_s"]) << " s\n";
  return pass;
}

int finish_section(const Settings& st, const std::string& name, const Json& s) {
  const bool pass = print_section(name, s);
  if (!st.out.empty()) write_file(st.out, dump_json(s));
  return pass ? 0 : 1;
}

Json complex_json(std::complex<double> z) { return Json::array({round12(z.real()), round12(z.imag())}); }

Json isometry_json(const Isometryd& g) {
  auto m = g.matrix();
  for (int i = 0; i < 4; ++i) {
    const auto z = m(i / 2, i % 2);
    if (std::abs(z) < 1e-12) continue;
    if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0)) m = -m;
    break;
  }
  Json j;
  j["orientation"] = g.orientation();
  j["matrix"] = Json::array({complex_json(m(0, 0)), complex_json(m(0, 1)), complex_json(m(1, 0)), complex_json(m(1, 1))});
  return j;
}

int build_manifold(const Settings& st) {
  const Pipeline p(st.opt);
  std::cout << "hexagons " << p.maniplex.hexagon_count() << ", cones " << p.region.cones.size() << ", tetrahedra "
            << p.region.tets.size() << ", generators " << p.pg.generators.size() << "\n";
  if (!st.out.empty()) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tetrahedra"] = p.region.tets.size();
    Json gens = Json::array();
    for (const auto& g : p.pg.generators) {
      Json e;
      if (g.kind == PairingKind::Translation) {
        e["kind"] = "translation";
        e["lambda_units"] = Json::array({g.translation.a, g.translation.b});
      } else {
        e["kind"] = "downward";
        e["source"] = Json::array({g.source.hexagon, g.source.dir, g.source.slot});
        e["target"] = Json::array({g.target.hexagon, g.target.dir, g.target.slot});
      }
      e["isometry"] = isometry_json(g.iso);
      gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    Json nb = Json::array();
    for (const auto& n : p.gluing.neighbor) nb.push_back(n);
    j["neighbors"] = std::move(nb);
    write_file(st.out, dump_json(j));
  }
  return 0;
}

int geodesics(const Settings& st) {
  const Pipeline p(st.opt);
  const auto s = geodesics_section(p, st.opt);
  std::printf("%-44s %-16s %-16s %s\n", "claim", "expected", "measured", "steps");
  bool ok = s["pass"].get<bool>();
  for (const auto& c : closed_geodesic_suite(p.region, p.gluing)) {
    std::printf("%-44s %-16.12g %-16.12g %d%s\n", c.name.c_str(), c.expected, c.measured, c.steps, c.ok ? "" : "  FAIL");
    ok = ok && c.ok;
  }
  return finish_section(st, "geodesics", s) | (ok ? 0 : 1);
}

int render(const Settings& st) {
  const std::string out = st.out.empty() ? "layout.svg" : st.out;
  const Pipeline p(st.opt);
  write_file(out, render_layout_svg(p.region.layout, p.maniplex));
  const auto dot = out.rfind('.');
  const std::string stem = dot == std::string::npos ? out : out.substr(0, dot);
  write_file(stem + "-type-I.svg", render_tessellation_svg(TessellationKind::TypeI));
  write_file(stem + "-type-II.svg", render_tessellation_svg(TessellationKind::TypeII));
  std::cout << "wrote " << out << ", " << stem << "-type-I.svg, " << stem << "-type-II.svg\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hoffman-Singleton manifold verification kit"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  app.add_option("--base-edge", st.base_edge, "HSG edge seeding the frame, as two vertex ids")->expected(2);
  app.add_option("--tolerance", st.opt.tolerance, "Tolerance for floating-point checks")->check(CLI::PositiveNumber);
  app.add_option("--max-word-length", st.opt.max_word_length, "Witness word bound for generator reduction")
      ->check(CLI::Range(2, 8));
  app.add_option("--jobs", st.opt.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--timings", st.opt.timings, "Record runtimes (output is then not reproducible)");
  app.add_option("--out", st.out, "Output file");

  std::function<int()> action;
  const auto add = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  auto* vg = add("verify-graph", "HSG and Petersen invariants, automorphisms, census, Sylvester checks", [&] {
    const Graph g = build_hsg();
    if (!st.dump_graph.empty()) write_file(st.dump_graph, dump_json(graph_json(g)));
    const auto s = graph_section(g, st.opt);
    std::cout << "automorphism order " << automorphism_order(g) << "\n";
    return finish_section(st, "graph", s);
  });
  vg->add_option("--dump-graph", st.dump_graph, "Write the graph as JSON");
  add("verify-maps", "Small and big torus maps and the maniplex", [&] {
    const Graph g = build_hsg();
    const auto [u, v] = resolve_base_edge(g, st.opt.base_u, st.opt.base_v);
    return finish_section(st, "maps", maps_section(g, edge_frame(g, u, v)));
  });
  add("build-manifold", "Build the fundamental region and its face pairings", [&] { return build_manifold(st); });
  add("verify-manifold", "Poincare conditions, pairings, generator reduction and cusps", [&] {
    const Pipeline p(st.opt);
    Json j;
    j["manifold"] = manifold_section(p, st.opt);
    j["cusps"] = cusps_section(p, st.opt);
    const bool a = print_section("manifold", j["manifold"]);
    const bool b = print_section("cusps", j["cusps"]);
    if (!st.out.empty()) write_file(st.out, dump_json(j));
    return a && b ? 0 : 1;
  });
  add("volume", "Hyperbolic volume", [&] { return finish_section(st, "volume", volume_section(st.opt)); });
  add("symmetry", "Isometry group from the flag graph", [&] {
    const Pipeline p(st.opt);
    return finish_section(st, "symmetry", symmetry_section(p, st.opt));
  });
  add("geodesics", "Closed geodesic lengths by holonomy tracing", [&] { return geodesics(st); });
  add("report", "Run everything and write the JSON report", [&] {
    const Json r = build_report(st.opt);
    const std::string text = dump_json(r);
    if (st.out.empty())
      std::cout << text;
    else
      write_file(st.out, text);
    std::cerr << "overall " << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return r["pass"].get<bool>() ? 0 : 1;
  });
  add("render", "SVG of the hexagon layout and the two plane tessellations", [&] { return render(st); });

  CLI11_PARSE(app, argc, argv);
  try {
    if (st.base_edge.size() == 2) {
      st.opt.base_u = st.base_edge[0];
      st.opt.base_v = st.base_edge[1];
    }
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
