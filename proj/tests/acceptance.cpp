// One PASS/FAIL line per acceptance criterion. Graph-level facts are
// recomputed from the edge list alone; geometric facts are cross-checked
// with closed forms and series oracles.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "hsm/report.hpp"
#include "oracles.hpp"

using namespace hsm;

namespace {

using Adj = std::vector<std::vector<bool>>;

Adj adjacency(const Graph& g) {
  Adj a(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
  for (const auto& [x, y] : g.edges()) a[x][y] = a[y][x] = true;
  return a;
}

std::vector<int> bfs(const Adj& a, int s) {
  std::vector<int> d(a.size(), -1);
  std::queue<int> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (std::size_t y = 0; y < a.size(); ++y)
      if (a[x][y] && d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(static_cast<int>(y));
      }
  }
  return d;
}

// Shortest cycle through BFS from every vertex.
int girth_oracle(const Adj& a) {
  int best = 1 << 30;
  const int n = static_cast<int>(a.size());
  for (int s = 0; s < n; ++s) {
    std::vector<int> d(n, -1), parent(n, -1);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y = 0; y < n; ++y) {
        if (!a[x][y]) continue;
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          parent[y] = x;
          q.push(y);
        } else if (parent[x] != y) {
          best = std::min(best, d[x] + d[y] + 1);
        }
      }
    }
  }
  return best;
}

// Pentagons in cyclic order from their least vertex, each counted once.
std::vector<std::array<int, 5>> pentagons_oracle(const Adj& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::array<int, 5>> out;
  for (int v0 = 0; v0 < n; ++v0)
    for (int v1 = v0 + 1; v1 < n; ++v1) {
      if (!a[v0][v1]) continue;
      for (int v2 = v0 + 1; v2 < n; ++v2) {
        if (!a[v1][v2] || v2 == v1) continue;
        for (int v3 = v0 + 1; v3 < n; ++v3) {
          if (!a[v2][v3] || v3 == v1) continue;
          for (int v4 = v1 + 1; v4 < n; ++v4) {
            if (!a[v3][v4] || !a[v4][v0] || v4 == v2) continue;
            out.push_back({v0, v1, v2, v3, v4});
          }
        }
      }
    }
  return out;
}

bool is_petersen(const Adj& a, const std::vector<int>& vs) {
  int edges = 0;
  for (int x : vs) {
    int deg = 0;
    for (int y : vs) deg += a[x][y];
    if (deg != 3) return false;
    edges += deg;
  }
  return edges == 30 && girth_oracle([&] {
           Adj s(10, std::vector<bool>(10, false));
           for (int i = 0; i < 10; ++i)
             for (int j = 0; j < 10; ++j) s[i][j] = a[vs[i]][vs[j]];
           return s;
         }()) == 5;
}

struct Line {
  std::string name;
  bool ok;
  std::string detail;
  double seconds;
};

std::vector<Line> lines;

void criterion(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::pair<bool, std::string> r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
  std::printf("%s  %-22s %s  [%.2f s]\n", r.first ? "PASS" : "FAIL", name.c_str(), r.second.c_str(), d.count());
  std::fflush(stdout);
  lines.push_back({name, r.first, r.second, d.count()});
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

bool section_checks(const Json& s, std::initializer_list<const char*> names, std::string& failed) {
  bool ok = true;
  for (const auto& c : s["checks"]) {
    const auto n = c["name"].get<std::string>();
    for (const char* want : names)
      if (n.rfind(want, 0) == 0 && !c["pass"].get<bool>()) {
        ok = false;
        failed += " " + n;
      }
  }
  return ok;
}

Cd to_complex(const Eisenstein& e) { return double(e.a) + double(e.b) * kOmega; }

}  // namespace

int main() {
  const Graph hsg = build_hsg();
  const Adj adj = adjacency(hsg);
  ReportOptions opt;
  opt.jobs = 2;

  criterion("hsg-invariants", [&] {
    int dmin = 99, dmax = 0, diam = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      const int deg = static_cast<int>(std::count(adj[v].begin(), adj[v].end(), true));
      dmin = std::min(dmin, deg);
      dmax = std::max(dmax, deg);
      const auto d = bfs(adj, static_cast<int>(v));
      diam = std::max(diam, *std::max_element(d.begin(), d.end()));
      if (*std::min_element(d.begin(), d.end()) < 0) diam = 1 << 20;
    }
    const int g = girth_oracle(adj);
    const auto t0 = std::chrono::steady_clock::now();
    const auto inv = graph_invariants(hsg);
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
    const bool ok = d.count() < 1 && adj.size() == 50 && hsg.edge_count() == 175 && dmin == 7 && dmax == 7 &&
                    g == 5 && diam == 2 && inv.girth == 5 && inv.diameter == 2 && inv.min_degree == 7 && inv.max_degree == 7;
    return std::pair{ok, "n=" + std::to_string(adj.size()) + " m=" + std::to_string(hsg.edge_count()) +
                             " degree=" + std::to_string(dmin) + ".." + std::to_string(dmax) +
                             " girth=" + std::to_string(g) + " diameter=" + std::to_string(diam)};
  });

  criterion("automorphism-orders", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto h = automorphism_order(hsg);
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
    const auto p = automorphism_order(build_petersen());
    return std::pair{h == 252000 && p == 120 && d.count() < 120,
                     "hsg=" + std::to_string(h) + " petersen=" + std::to_string(p)};
  });

  criterion("petersen-extension", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pents = pentagons_oracle(adj);
    std::set<std::vector<int>> subgraphs;
    long cases = 0, unique = 0;
    for (const auto& p : pents) {
      // Outer neighbours of each pentagon vertex.
      std::array<std::vector<int>, 5> outer;
      for (int i = 0; i < 5; ++i)
        for (int y = 0; y < 50; ++y)
          if (adj[p[i]][y] && std::find(p.begin(), p.end(), y) == p.end()) outer[i].push_back(y);
      for (int i = 0; i < 5; ++i)
        for (int x : outer[i]) {
          ++cases;
          int found = 0;
          std::array<int, 5> pick{};
          pick[i] = x;
          std::function<void(int)> rec = [&](int k) {
            if (k == 5) {
              std::vector<int> vs(p.begin(), p.end());
              vs.insert(vs.end(), pick.begin(), pick.end());
              std::set<int> distinct(vs.begin(), vs.end());
              if (distinct.size() != 10 || !is_petersen(adj, vs)) return;
              ++found;
              std::sort(vs.begin(), vs.end());
              subgraphs.insert(vs);
              return;
            }
            if (k == i) return rec(k + 1);
            for (int y : outer[k]) {
              pick[k] = y;
              rec(k + 1);
            }
          };
          rec(0);
          unique += found == 1;
        }
    }
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
    const auto census = petersen_census(hsg, opt.jobs);
    const auto pc = pentagon_census(hsg);
    const bool ok = cases == 31500 && unique == 31500 && pents.size() == 1260 && subgraphs.size() == 525 &&
                    census.cases == 31500 && census.unique_cases == 31500 && census.subgraph_count == 525 &&
                    pc.pentagon_count() == 1260 && d.count() < 60;
    return std::pair{ok, "cases=" + std::to_string(cases) + " unique=" + std::to_string(unique) +
                             " pentagons=" + std::to_string(pents.size()) +
                             " petersen=" + std::to_string(subgraphs.size()) + " (library " +
                             std::to_string(census.subgraph_count) + ")"};
  });

  criterion("crosses-and-hexagons", [&] {
    const auto [u, v] = hsg.edges().front();
    std::vector<int> un, vn, row(50, -1), col(50, -1);
    for (int y = 0; y < 50; ++y) {
      if (adj[u][y] && y != v) un.push_back(y);
      if (adj[v][y] && y != u) vn.push_back(y);
    }
    for (int w = 0; w < 50; ++w) {
      if (w == u || w == v || adj[u][w] || adj[v][w]) continue;
      for (int i = 0; i < 6; ++i) {
        if (adj[w][un[i]]) row[w] = i;
        if (adj[w][vn[i]]) col[w] = i;
      }
    }
    std::map<std::pair<int, int>, int> at;
    for (int w = 0; w < 50; ++w)
      if (row[w] >= 0) at[{row[w], col[w]}] = w;
    int sylvester = 0, crossed = 0;
    for (const auto& [x, y] : hsg.edges()) {
      if (row[x] < 0 || row[y] < 0) continue;
      ++sylvester;
      const auto it = at.find({row[x], col[y]});
      const auto jt = at.find({row[y], col[x]});
      crossed += it != at.end() && jt != at.end() && adj[it->second][jt->second];
    }
    int hex_ok = 0, triples = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c) {
          ++triples;
          std::vector<int> vs;
          for (int w = 0; w < 50; ++w)
            if (row[w] == a || row[w] == b || row[w] == c) vs.push_back(w);
          bool two_regular = vs.size() == 18;
          for (int x : vs) {
            int deg = 0;
            for (int y : vs) deg += adj[x][y];
            two_regular = two_regular && deg == 2;
          }
          std::set<int> seen;
          int components = 0;
          bool sixes = true;
          for (int s : vs) {
            if (seen.count(s)) continue;
            ++components;
            int size = 0;
            std::vector<int> stack{s};
            seen.insert(s);
            while (!stack.empty()) {
              const int x = stack.back();
              stack.pop_back();
              ++size;
              for (int y : vs)
                if (adj[x][y] && seen.insert(y).second) stack.push_back(y);
            }
            sixes = sixes && size == 6;
          }
          hex_ok += two_regular && components == 3 && sixes;
        }
    const auto lib = graph_section(hsg, opt);
    std::string failed;
    const bool lib_ok = section_checks(lib, {"sylvester", "hexagon_decomposition"}, failed);
    return std::pair{sylvester == 90 && crossed == 90 && triples == 20 && hex_ok == 20 && lib_ok,
                     "sylvester_edges=" + std::to_string(sylvester) + " crossed=" + std::to_string(crossed) +
                         " hexagon_triples=" + std::to_string(hex_ok) + "/" + std::to_string(triples) + failed};
  });

  const Pipeline p(opt);

  criterion("maps-and-maniplex", [&] {
    const auto count = [](const TorusMap& m) {
      std::set<int> vs(m.corner_vertex.begin(), m.corner_vertex.end());
      int slots = 0;
      for (int f = 0; f < m.face_count(); ++f)
        for (int k = 0; k < 6; ++k) slots += m.partner({f, k}) != Slot{f, k};
      const int v = static_cast<int>(vs.size()), e = slots / 2, f = m.face_count();
      return std::array<int, 4>{v, e, f, v - e + f};
    };
    bool ok = true;
    for (const auto& sm : p.maniplex.small_maps) ok = ok && count(sm) == std::array<int, 4>{6, 9, 3, 0};
    const auto big = count(p.maniplex.big_map);
    ok = ok && big == std::array<int, 4>{24, 36, 12, 0};
    std::vector<int> membership(12, 0);
    for (const auto& sm : p.maniplex.small_maps)
      for (int h : sm.hexagon_ids) ++membership[h];
    for (int m : membership) ok = ok && m == 1;  // plus the big map
    const auto mult = p.maniplex.column_multigraph();
    std::set<int> matched;
    int doubled = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        ok = ok && (mult[a][b] == 1 || mult[a][b] == 2);
        if (mult[a][b] == 2) {
          ++doubled;
          matched.insert({a, b});
        }
      }
    ok = ok && doubled == 3 && matched.size() == 6;
    std::string failed;
    ok = section_checks(maps_section(p.graph, p.frame), {"small_maps", "big_map"}, failed) && ok;
    return std::pair{ok, "small=(6,9,3) big=(" + std::to_string(big[0]) + "," + std::to_string(big[1]) + "," +
                             std::to_string(big[2]) + ") chi=" + std::to_string(big[3]) +
                             " doubled_pairs=" + std::to_string(doubled) + failed};
  });

  criterion("tetrahedron-angles", [&] {
    const auto tet = CharacteristicTetrahedron::standard();
    const Pointd v[3] = {tet.v0, tet.v1, tet.v2};
    // Face A is the hemisphere through v0, v1, v2; B, C, D are vertical.
    const auto e3 = [](const Pointd& q) { return Eigen::Vector3d(q.z.real(), q.z.imag(), q.t); };
    Eigen::Matrix2d m;
    Eigen::Vector2d rhs;
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector3d a = e3(v[0]), b = e3(v[i + 1]);
      m.row(i) << 2 * (b.x() - a.x()), 2 * (b.y() - a.y());
      rhs(i) = b.squaredNorm() - a.squaredNorm();
    }
    const Eigen::Vector2d c = m.colPivHouseholderQr().solve(rhs);
    const double radius = (e3(v[0]) - Eigen::Vector3d(c.x(), c.y(), 0)).norm();
    const std::array<std::array<int, 2>, 3> vertical{{{1, 2}, {0, 2}, {0, 1}}};
    std::vector<double> angles;
    std::array<Cd, 3> dir;
    for (int i = 0; i < 3; ++i) {
      const Cd a = v[vertical[i][0]].z, b = v[vertical[i][1]].z;
      dir[i] = (b - a) / std::abs(b - a);
      const Cd cc(c.x(), c.y());
      const double dist = std::abs(std::imag(std::conj(dir[i]) * (cc - a)));
      angles.push_back(std::acos(std::min(1.0, dist / radius)));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double t = std::acos(std::min(1.0, std::abs(std::real(std::conj(dir[i]) * dir[j]))));
        angles.push_back(t);
      }
    std::sort(angles.begin(), angles.end());
    std::vector<double> lib;
    for (int x = 0; x < 4; ++x)
      for (int y = x + 1; y < 4; ++y) lib.push_back(tet.dihedral(Face(x), Face(y)));
    std::sort(lib.begin(), lib.end());
    const std::array<double, 6> want{kPi / 6, kPi / 4, kPi / 3, kPi / 2, kPi / 2, kPi / 2};
    double err = 0;
    for (int i = 0; i < 6; ++i) err = std::max({err, std::abs(angles[i] - want[i]), std::abs(lib[i] - want[i])});
    return std::pair{err < 1e-9, "max_error=" + num(err)};
  });

  criterion("volume", [&] {
    const double series = oracle::lobachevsky_pi_over_3();
    const double quad = lobachevsky(kPi / 3);
    const double vol = 288 * (5.0 / 6) * series;
    const bool ok = std::abs(quad - series) < 1e-10 && std::abs(vol - 81.1953) < 5e-4 &&
                    std::abs(total_volume() - vol) < 1e-9;
    return std::pair{ok, "volume=" + num(total_volume()) + " oracle=" + num(vol) +
                             " quadrature_vs_series=" + num(std::abs(quad - series))};
  });

  criterion("pairings", [&] {
    int rotated = 0;
    for (const auto& g : p.pg.generators)
      if (g.kind == PairingKind::Downward) rotated += std::abs(pairing_rotation_angle(g, p.region)) > kPi / 2;
    const auto ex = worked_example();
    const auto rep = verify_pairings(p.pg, p.region);
    const bool ok = p.pg.generators.size() == 39 && ex.synthesized_matches && ex.composition_maps_points &&
                    ex.max_error < 1e-8 && rotated > 0 && rep.ok();
    return std::pair{ok, "generators=" + std::to_string(p.pg.generators.size()) +
                             " worked_example_error=" + num(ex.max_error) + " pi_rotation=" + std::to_string(rotated)};
  });

  criterion("poincare-conditions", [&] {
    const auto ec = edge_cycle_check(p.region, p.gluing);
    double err = 0;
    int fan8 = 0, fan6 = 0;
    for (const auto& c : ec.classes) {
      err = std::max(err, std::abs(c.angle * c.size - 2 * kPi));
      err = std::max(err, std::abs(c.angle_sum - 2 * kPi));
      fan8 += c.size == 8 && std::abs(c.angle - kPi / 4) < 1e-9;
      fan6 += c.size == 6 && std::abs(c.angle - kPi / 3) < 1e-9;
    }
    const auto vl = vertex_link_check(p.region, p.gluing);
    int spheres = 0;
    for (const auto& c : vl.classes)
      spheres += c.region_vertices.size() == 4 && c.tetrahedra == 48 && c.euler() == 2;
    const bool ok = err < 1e-9 && fan8 > 0 && fan6 > 0 && vl.classes.size() == 6 && spheres == 6;
    return std::pair{ok, "classes=" + std::to_string(ec.classes.size()) + " max_error=" + num(err) +
                             " fans(8xpi/4)=" + std::to_string(fan8) + " fans(6xpi/3)=" + std::to_string(fan6) +
                             " vertex_classes=" + std::to_string(vl.classes.size()) +
                             " sphere_links=" + std::to_string(spheres)};
  });

  criterion("cusps", [&] {
    const auto cd = cusp_analysis(p.region, p.gluing);
    std::multiset<int> sizes;
    double shape_err = 0;
    bool parabolic = true;
    for (const auto& c : cd.cusps) {
      sizes.insert(static_cast<int>(c.hexagons.size()) + c.contains_infinity);
      Cd tau = to_complex(c.lattice[1]) / to_complex(c.lattice[0]);
      if (tau.imag() < 0) tau = std::conj(tau);
      if (tau.real() < 0) tau += 1.0;
      shape_err = std::max({shape_err, std::abs(tau - kOmega), std::abs(c.shape - kOmega)});
      parabolic = parabolic && c.parabolic;
    }
    const double big = cd.cusps.empty() ? 0 : cd.cusps[0].horoball_volume;
    double ratio_err = 0;
    for (std::size_t i = 1; i < cd.cusps.size(); ++i)
      ratio_err = std::max(ratio_err, std::abs(big / cd.cusps[i].horoball_volume - 4));
    const bool ok = sizes == std::multiset<int>{1, 3, 3, 3, 3} && shape_err < 1e-9 && ratio_err < 1e-9 &&
                    std::abs(cd.volume_ratio - 4) < 1e-9 && parabolic;
    return std::pair{ok, "classes=" + std::to_string(cd.cusps.size()) + " shape_error=" + num(shape_err) +
                             " ratio=" + num(cd.volume_ratio) + " parabolic=" + (parabolic ? "yes" : "no")};
  });

  criterion("generator-reduction", [&] {
    const auto red = generator_reduction(p.pg, 6);
    bool ok = red.covered && red.kept.size() <= 18;
    int longest = 0;
    for (std::size_t g = 0; g < p.pg.generators.size(); ++g) {
      const bool kept = std::find(red.kept.begin(), red.kept.end(), static_cast<int>(g)) != red.kept.end();
      if (kept) continue;
      const auto& w = red.witness[g];
      longest = std::max(longest, static_cast<int>(w.size()));
      Isometryd prod;
      for (int s : w) {
        const int i = std::abs(s) - 1;
        ok = ok && std::find(red.kept.begin(), red.kept.end(), i) != red.kept.end();
        prod = prod * (s > 0 ? p.pg.generators[i].iso : p.pg.generators[i].iso.inverse());
      }
      ok = ok && !w.empty() && w.size() <= 6 && prod.approx_equal(p.pg.generators[g].iso, 1e-8);
    }
    return std::pair{ok, "kept=" + std::to_string(red.kept.size()) + " of " + std::to_string(p.pg.generators.size()) +
                             " longest_witness=" + std::to_string(longest)};
  });

  criterion("symmetry", [&] {
    const auto sg = automorphism_group(build_flag_graph(p.gluing), opt.jobs);
    const auto w = coxeter_presentation_check(sg);
    bool triple = w.ok;
    if (triple) {
      const auto& e = sg.elements;
      const Perm& a = e[w.generators[0]];
      const Perm& b = e[w.generators[1]];
      const Perm& c = e[w.generators[2]];
      const auto order = [](const Perm& x) {
        Perm y = x;
        for (int k = 1; k <= 48; ++k) {
          bool id = true;
          for (std::size_t i = 0; i < y.size(); ++i) id = id && y[i] == static_cast<int>(i);
          if (id) return k;
          Perm z(y.size());
          for (std::size_t i = 0; i < y.size(); ++i) z[i] = x[y[i]];
          y = z;
        }
        return -1;
      };
      const auto mul = [](const Perm& x, const Perm& y) {
        Perm z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[y[i]];
        return z;
      };
      std::set<Perm> closure{a, b, c};
      std::vector<Perm> todo{a, b, c};
      while (!todo.empty() && closure.size() <= 48) {
        const Perm x = todo.back();
        todo.pop_back();
        for (const Perm* g : {&a, &b, &c}) {
          Perm y = mul(*g, x);
          if (closure.insert(y).second) todo.push_back(std::move(y));
        }
      }
      triple = order(a) == 2 && order(b) == 2 && order(c) == 2 && order(mul(a, c)) == 2 && order(mul(a, b)) == 4 &&
               order(mul(b, c)) == 3 && closure.size() == 48;
    }
    const auto orb = orbit_report(sg, p.region, p.gluing);
    std::multiset<std::size_t> hex;
    for (const auto& o : orb.hexagon_orbits) hex.insert(o.size());
    const auto cc = corner_classes(p.region, p.gluing);
    std::set<int> doubled;
    for (int e = 0; e < cc.edges; ++e)
      if (cc.edge_doubled[e]) doubled.insert(e);
    bool doubled_orbit = false;
    for (const auto& o : orb.edge_orbits)
      doubled_orbit = doubled_orbit || (o.size() == 6 && std::set<int>(o.begin(), o.end()) == doubled);
    const bool ok = sg.order() == 48 && triple && hex == std::multiset<std::size_t>{4, 8} && doubled_orbit &&
                    orb.big_cusp_fixed;
    return std::pair{ok, "order=" + std::to_string(sg.order()) + " (2,4,3)_triple=" + (triple ? "yes" : "no") +
                             " hexagon_orbits={4,8}:" + (hex == std::multiset<std::size_t>{4, 8} ? "yes" : "no") +
                             " doubled_edge_orbit=" + std::to_string(doubled.size()) +
                             " big_cusp_fixed=" + (orb.big_cusp_fixed ? "yes" : "no")};
  });

  criterion("geodesics", [&] {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    const std::array<double, 5> want{2 * std::log(5 + 2 * s6), 4 * std::log(1 + s2), 4 * std::log(2 + s3),
                                     2 * std::log(2 + s3), 8 * std::log(1 + s2)};
    const std::array<double, 5> quoted{4.5848635, 3.5254943, 5.2678317, 2.6339158, 7.0509887};
    const auto claims = closed_geodesic_suite(p.region, p.gluing);
    bool ok = claims.size() == 6;
    double err = 0;
    for (int i = 0; i < 5 && ok; ++i) {
      err = std::max(err, std::abs(claims[i].measured - want[i]));
      // Quoted to 7 decimals, two of them off in the last place.
      ok = ok && std::abs(claims[i].measured - quoted[i]) < 1e-6;
    }
    ok = ok && err < 1e-8 && claims[5].ok;
    int bicuspid = 0;
    for (int h = 0; h < 12; ++h) {
      const Cd c = p.region.layout.center(h);
      bicuspid += is_bicuspid({Boundaryd(c), Boundaryd::infinity()}, Pointd(c, 1.0), p.region, p.gluing);
    }
    ok = ok && bicuspid == 12;
    return std::pair{ok, "max_length_error=" + num(err) + " bicuspid=" + std::to_string(bicuspid) + "/12"};
  });

  criterion("determinism", [&] {
    const std::string a = dump_json(build_report(opt));
    const std::string b = dump_json(build_report(opt));
    return std::pair{a == b && Json::parse(a)["pass"].get<bool>(), "bytes=" + std::to_string(a.size())};
  });

  const long failed = std::count_if(lines.begin(), lines.end(), [](const Line& l) { return !l.ok; });
  std::printf("%ld of %zu criteria passed\n", static_cast<long>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
