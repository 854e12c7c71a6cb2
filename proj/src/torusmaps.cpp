#include "hsm/torusmaps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "hsm/h3geom.hpp"

namespace hsm {

namespace {

using PairingFn = std::function<Slot(int face, int pos)>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Orients the faces (face 0 keeps its direction), reindexes slots accordingly
// and computes the vertex classes. With `fixed_orientation` every face must
// keep its given direction.
TorusMap assemble(std::vector<WHexagon> faces, std::vector<int> ids, std::vector<std::array<int, 6>> labels,
                  const PairingFn& raw_partner, bool fixed_orientation) {
  const int nf = static_cast<int>(faces.size());
  std::vector<std::array<Slot, 6>> raw(nf);
  for (int f = 0; f < nf; ++f)
    for (int p = 0; p < 6; ++p) raw[f][p] = raw_partner(f, p);
  for (int f = 0; f < nf; ++f)
    for (int p = 0; p < 6; ++p) {
      const Slot s = raw[f][p];
      if (s.face < 0 || (s.face == f && s.pos == p) || raw[s.face][s.pos] != Slot{f, p})
        throw VerificationError("map construction: slot pairing is not a fixed-point-free involution");
    }

  std::vector<int> flip(nf, 0);
  flip[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int p = 0; p < 6; ++p) {
      int from = labels[f][p], to = labels[f][(p + 1) % 6];
      if (flip[f] < 0) std::swap(from, to);
      const auto [g, q] = raw[f][p];
      const int a = labels[g][q], b = labels[g][(q + 1) % 6];
      int need;
      if (a == to && b == from) {
        need = 1;
      } else if (a == from && b == to) {
        need = -1;
      } else {
        throw VerificationError("map construction: paired slots carry different labels");
      }
      if (flip[g] == 0) {
        flip[g] = need;
        queue.push_back(g);
      } else if (flip[g] != need) {
        throw VerificationError("map construction: non-orientable gluing");
      }
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (flip[f] == 0) throw VerificationError("map construction: disconnected map");
    if (fixed_orientation && flip[f] < 0)
      throw VerificationError("map construction: orientation disagrees with the containing big map");
  }

  // Reversing a cycle sends slot p to slot 5 - p.
  auto new_pos = [&](int f, int p) { return flip[f] > 0 ? p : 5 - p; };
  TorusMap m;
  m.hexagon_ids = std::move(ids);
  m.faces.resize(nf);
  m.corner_label.resize(nf);
  m.slot_pairing.resize(nf);
  for (int f = 0; f < nf; ++f) {
    m.faces[f].triple = faces[f].triple;
    for (int k = 0; k < 6; ++k) {
      const int src = flip[f] > 0 ? k : (6 - k) % 6;
      m.faces[f].cycle[k] = faces[f].cycle[src];
      m.corner_label[f][k] = labels[f][src];
    }
    for (int p = 0; p < 6; ++p) m.slot_pairing[f][new_pos(f, p)] = {raw[f][p].face, new_pos(raw[f][p].face, raw[f][p].pos)};
  }

  UnionFind uf(6 * nf);
  for (int f = 0; f < nf; ++f)
    for (int p = 0; p < 6; ++p) {
      const auto [g, q] = m.slot_pairing[f][p];
      const int a0 = 6 * f + p, a1 = 6 * f + (p + 1) % 6;
      const int b0 = 6 * g + q, b1 = 6 * g + (q + 1) % 6;
      if (m.corner_label[f][p] != m.corner_label[g][(q + 1) % 6] || m.corner_label[f][(p + 1) % 6] != m.corner_label[g][q])
        throw VerificationError("map construction: oriented gluing does not match corner labels");
      uf.unite(a0, b1);
      uf.unite(a1, b0);
    }
  std::map<int, int> vertex_id;
  m.corner_vertex.resize(6 * nf);
  for (int c = 0; c < 6 * nf; ++c) {
    const auto it = vertex_id.emplace(uf.find(c), static_cast<int>(vertex_id.size())).first;
    m.corner_vertex[c] = it->second;
  }
  m.vertex_count = static_cast<int>(vertex_id.size());
  if (m.euler_characteristic() != 0) throw VerificationError("map construction: surface is not a torus");
  return m;
}

std::array<int, 6> column_labels(const EdgeFrame& frame, const WHexagon& h) {
  std::array<int, 6> out{};
  for (int k = 0; k < 6; ++k) out[k] = frame.col(h.cycle[k]);
  return out;
}

// Slot holding the W-edge {x, y} among `faces`, excluding `skip`.
std::optional<Slot> find_slot(const std::vector<WHexagon>& faces, int x, int y, Slot skip = {}) {
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int p = 0; p < 6; ++p) {
      if (Slot{f, p} == skip) continue;
      const int a = faces[f].cycle[p], b = faces[f].cycle[(p + 1) % 6];
      if ((a == x && b == y) || (a == y && b == x)) return Slot{f, p};
    }
  return std::nullopt;
}

PairingFn crosses_pairing(const EdgeFrame& frame, const std::vector<WHexagon>& faces) {
  return [&frame, &faces](int f, int p) -> Slot {
    const int x = faces[f].cycle[p], y = faces[f].cycle[(p + 1) % 6];
    const int px = frame.w_at[frame.row(x)][frame.col(y)], py = frame.w_at[frame.row(y)][frame.col(x)];
    const auto s = find_slot(faces, px, py);
    if (!s) throw VerificationError("small map: crosses partner edge missing from the row triple");
    return *s;
  };
}

PairingFn shared_edge_pairing(const std::vector<WHexagon>& faces) {
  return [&faces](int f, int p) -> Slot {
    const int x = faces[f].cycle[p], y = faces[f].cycle[(p + 1) % 6];
    std::vector<Slot> holders;
    for (int g = 0; g < static_cast<int>(faces.size()); ++g)
      for (int k = 0; k < 6; ++k) {
        const int a = faces[g].cycle[k], b = faces[g].cycle[(k + 1) % 6];
        if ((a == x && b == y) || (a == y && b == x)) holders.push_back({g, k});
      }
    if (holders.size() != 2) throw VerificationError("big map: an H4 edge does not lie in exactly two hexagons");
    return holders[0] == Slot{f, p} ? holders[1] : holders[0];
  };
}

std::array<RowTriple, 4> triples_of(const std::array<int, 4>& rows4) {
  auto r = rows4;
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(r.begin(), r.end()) != r.end() || r.front() < 0 || r.back() > 5)
    throw std::invalid_argument("rows4 must be four distinct rows");
  return {RowTriple{r[0], r[1], r[2]}, RowTriple{r[0], r[1], r[3]}, RowTriple{r[0], r[2], r[3]},
          RowTriple{r[1], r[2], r[3]}};
}

std::vector<WHexagon> big_map_faces(const Graph& hsg, const EdgeFrame& frame, const std::array<RowTriple, 4>& triples) {
  std::vector<WHexagon> faces;
  for (const auto& t : triples)
    for (const auto& h : hexagon_decomposition(hsg, frame, t)) faces.push_back(h);
  return faces;
}

}  // namespace

TorusMap small_map(const Graph& hsg, const EdgeFrame& frame, const RowTriple& triple) {
  const auto hexes = hexagon_decomposition(hsg, frame, triple);
  std::vector<WHexagon> faces(hexes.begin(), hexes.end());
  std::vector<std::array<int, 6>> labels;
  for (const auto& h : faces) labels.push_back(column_labels(frame, h));
  return assemble(faces, {0, 1, 2}, labels, crosses_pairing(frame, faces), false);
}

TorusMap big_map(const Graph& hsg, const EdgeFrame& frame, const std::array<int, 4>& rows4) {
  const auto faces = big_map_faces(hsg, frame, triples_of(rows4));
  std::vector<std::array<int, 6>> labels;
  std::vector<int> ids;
  for (const auto& h : faces) {
    labels.push_back(h.cycle);
    ids.push_back(static_cast<int>(ids.size()));
  }
  return assemble(faces, ids, labels, shared_edge_pairing(faces), false);
}

Maniplex build_maniplex(const Graph& hsg, const EdgeFrame& frame, const std::array<int, 4>& rows4) {
  Maniplex m;
  m.frame = frame;
  m.rows4 = rows4;
  std::sort(m.rows4.begin(), m.rows4.end());
  m.triples = triples_of(rows4);
  m.big_map = big_map(hsg, frame, m.rows4);
  m.hexagon_membership.assign(m.big_map.face_count(), {-1, 4});
  for (int t = 0; t < 4; ++t) {
    std::vector<WHexagon> faces;
    std::vector<int> ids;
    std::vector<std::array<int, 6>> labels;
    for (int h = 0; h < m.big_map.face_count(); ++h) {
      if (m.big_map.faces[h].triple != m.triples[t]) continue;
      faces.push_back(m.big_map.faces[h]);
      ids.push_back(h);
      labels.push_back(column_labels(frame, m.big_map.faces[h]));
      if (m.hexagon_membership[h][0] >= 0) throw VerificationError("maniplex: hexagon in more than two maps");
      m.hexagon_membership[h][0] = t;
    }
    if (faces.size() != 3) throw VerificationError("maniplex: small map without three hexagons");
    m.small_maps[t] = assemble(faces, ids, labels, crosses_pairing(frame, faces), true);
  }
  for (const auto& mem : m.hexagon_membership)
    if (mem[0] < 0) throw VerificationError("maniplex: hexagon in fewer than two maps");
  return m;
}

std::vector<ColumnEdge> Maniplex::identified_edges() const {
  std::vector<ColumnEdge> out;
  for (const auto& h : big_map.faces)
    for (int k = 0; k < 6; ++k) {
      const int x = h.cycle[k], y = h.cycle[(k + 1) % 6];
      ColumnEdge e{{frame.row(x), frame.row(y)}, {column(x), column(y)}};
      std::sort(e.rows.begin(), e.rows.end());
      std::sort(e.cols.begin(), e.cols.end());
      out.push_back(e);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::array<std::array<int, 6>, 6> Maniplex::column_multigraph() const {
  std::array<std::array<int, 6>, 6> mult{};
  for (const auto& e : identified_edges()) {
    mult[e.cols[0]][e.cols[1]]++;
    mult[e.cols[1]][e.cols[0]]++;
  }
  return mult;
}

std::vector<std::array<int, 2>> Maniplex::doubled_pairs() const {
  const auto mult = column_multigraph();
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (mult[a][b] == 2) out.push_back({a, b});
  return out;
}

std::array<int, 6> canonical_column_permutation(const std::vector<std::array<int, 2>>& doubled) {
  if (doubled.size() != 3) throw VerificationError("canonical relabel: expected three doubled pairs");
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    bool ok = true;
    for (const auto& d : doubled) {
      const int x = perm[d[0]], y = perm[d[1]];
      ok = ok && (std::min(x, y) % 2 == 0) && (std::max(x, y) == std::min(x, y) + 1);
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw VerificationError("canonical relabel: doubled pairs are not a perfect matching");
}

Maniplex canonical_relabel(const Maniplex& m) {
  const auto perm = canonical_column_permutation(m.doubled_pairs());
  Maniplex out = m;
  for (auto& c : out.column_label) c = perm[c];
  return out;
}

std::vector<int> maniplex_signature(const Maniplex& m) {
  auto canonical_cycle = [](std::array<int, 6> c) {
    std::array<int, 6> best = c;
    for (int refl = 0; refl < 2; ++refl) {
      for (int r = 0; r < 6; ++r) {
        std::rotate(c.begin(), c.begin() + 1, c.end());
        best = std::min(best, c);
      }
      std::reverse(c.begin(), c.end());
    }
    return best;
  };
  std::vector<int> best;
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    bool keeps = true;
    for (int k = 0; k < 6; k += 2) keeps = keeps && (perm[k] / 2 == perm[k + 1] / 2);
    if (!keeps) continue;
    std::vector<std::vector<std::array<int, 6>>> groups;
    for (const auto& sm : m.small_maps) {
      std::vector<std::array<int, 6>> g;
      for (const auto& f : sm.faces) {
        std::array<int, 6> c{};
        for (int k = 0; k < 6; ++k) c[k] = perm[m.column(f.cycle[k])];
        g.push_back(canonical_cycle(c));
      }
      std::sort(g.begin(), g.end());
      groups.push_back(g);
    }
    std::sort(groups.begin(), groups.end());
    std::vector<int> sig;
    for (const auto& g : groups)
      for (const auto& c : g) sig.insert(sig.end(), c.begin(), c.end());
    if (best.empty() || sig < best) best = sig;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Eisenstein Eisenstein::rotated(int k) const {
  Eisenstein e = *this;
  for (int i = 0; i < ((k % 6) + 6) % 6; ++i) e = e.rotated();
  return e;
}

std::complex<double> Eisenstein::value() const {
  return static_cast<double>(a) + static_cast<double>(b) * kOmega;
}

Eisenstein reduce_mod_period(const Eisenstein& e) {
  auto mod6 = [](long x) { return ((x % 6) + 6) % 6; };
  return {mod6(e.a), mod6(e.b)};
}

std::complex<double> PlanarLayout::center(int h) const { return lambda * centers[h].value(); }

std::complex<double> PlanarLayout::corner(int h, int k) const { return lambda * corners[h][k].value(); }

int PlanarLayout::corner_of_column(int h, int column) const {
  for (int k = 0; k < 6; ++k)
    if (corner_columns[h][k] == column) return k;
  throw std::invalid_argument("corner_of_column: column not on hexagon");
}

int PlanarLayout::hexagon_at(const Eisenstein& c) const {
  const auto r = reduce_mod_period(c);
  for (int h = 0; h < static_cast<int>(centers.size()); ++h)
    if (centers[h] == r) return h;
  return -1;
}

namespace {

// Index of the lattice generated by `vs` in Z^2: gcd of all 2x2 minors.
long lattice_determinant(const std::vector<Eisenstein>& vs) {
  long g = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) g = std::gcd(g, vs[i].a * vs[j].b - vs[i].b * vs[j].a);
  return g;
}

}  // namespace

PlanarLayout develop_layout(const Maniplex& m) {
  const TorusMap& big = m.big_map;
  const int nf = big.face_count();
  PlanarLayout lay;
  lay.lambda = kLambda;
  lay.omega = kOmega;
  std::vector<std::optional<Eisenstein>> center(nf);
  std::vector<std::array<Eisenstein, 6>> corner(nf);
  std::vector<Eisenstein> periods;

  center[0] = Eisenstein{0, 0};
  for (int k = 0; k < 6; ++k) corner[0][k] = Eisenstein{1, 0}.rotated(k);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int p = 0; p < 6; ++p) {
      const Eisenstein P = corner[f][p], Q = corner[f][(p + 1) % 6];
      const auto [g, q] = big.slot_pairing[f][p];
      // The neighbour runs counterclockwise from Q to P along the shared edge.
      const Eisenstein c = P + Q - *center[f];
      std::array<Eisenstein, 6> pos{};
      Eisenstein r = Q - c;
      for (int k = 0; k < 6; ++k) {
        pos[(q + k) % 6] = c + r;
        r = r.rotated();
      }
      if (!center[g]) {
        center[g] = c;
        corner[g] = pos;
        queue.push_back(g);
        continue;
      }
      const Eisenstein d = c - *center[g];
      for (int k = 0; k < 6; ++k)
        if (pos[k] != corner[g][k] + d)
          throw VerificationError("layout development: lifts of a hexagon differ by more than a translation");
      if (d != Eisenstein{0, 0}) periods.push_back(d);
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (!center[f]) throw VerificationError("layout development: disconnected map");
    if (color_class(*center[f]) != 0) throw VerificationError("layout development: center off the center class");
    for (const auto& v : corner[f])
      if (color_class(v) == 0) throw VerificationError("layout development: vertex on the center class");
  }
  for (const auto& d : periods)
    if (d.a % 6 != 0 || d.b % 6 != 0) throw VerificationError("layout development: period outside 6Z[omega]");
  if (lattice_determinant(periods) != 36)
    throw VerificationError("layout development: period lattice has the wrong index");
  lay.periods = {Eisenstein{6, 0}, Eisenstein{0, 6}};

  lay.centers.resize(nf);
  lay.corners.resize(nf);
  lay.corner_columns.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const Eisenstein rc = reduce_mod_period(*center[f]);
    const Eisenstein shift = rc - *center[f];
    lay.centers[f] = rc;
    for (int k = 0; k < 6; ++k) {
      lay.corners[f][k] = corner[f][k] + shift;
      lay.corner_columns[f][k] = m.column(big.faces[f].cycle[k]);
    }
    for (int g = 0; g < f; ++g)
      if (lay.centers[g] == rc) throw VerificationError("layout development: two hexagons share a center");
  }
  return lay;
}

std::string render_layout_svg(const PlanarLayout& layout, const Maniplex& m) {
  static const char* const kFill[4] = {"#f4c7c3", "#c6dafc", "#d9ead3", "#fff2cc"};
  const double scale = 40.0;
  // Bounding box of the parallelogram plus a margin of one hexagon.
  const std::complex<double> p0(0, 0), p1 = layout.lambda * 6.0, p2 = layout.lambda * 6.0 * layout.omega;
  const double min_x = -2 * layout.lambda, max_x = std::real(p1 + p2) + 2 * layout.lambda;
  const double min_y = -2 * layout.lambda, max_y = std::imag(p2) + 2 * layout.lambda;
  auto X = [&](std::complex<double> z) { return (z.real() - min_x) * scale; };
  auto Y = [&](std::complex<double> z) { return (max_y - z.imag()) * scale; };

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << (max_x - min_x) * scale
      << "\" height=\"" << (max_y - min_y) * scale << "\">\n";
  out << "<polygon points=\"";
  for (auto z : {p0, p1, p1 + p2, p2}) out << X(z) << ',' << Y(z) << ' ';
  out << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (int h = 0; h < static_cast<int>(layout.centers.size()); ++h) {
    out << "<g id=\"hex" << h << "\">\n<polygon points=\"";
    for (int k = 0; k < 6; ++k) out << X(layout.corner(h, k)) << ',' << Y(layout.corner(h, k)) << ' ';
    out << "\" fill=\"" << kFill[m.small_map_of(h)] << "\" stroke=\"#222\"/>\n";
    const auto c = layout.center(h);
    out << "<text x=\"" << X(c) << "\" y=\"" << Y(c) << "\" font-size=\"12\" text-anchor=\"middle\">" << h
        << "</text>\n";
    for (int k = 0; k < 6; ++k) {
      const auto v = c + 0.78 * (layout.corner(h, k) - c);
      out << "<text x=\"" << X(v) << "\" y=\"" << Y(v) + 3 << "\" font-size=\"9\" text-anchor=\"middle\">"
          << layout.corner_columns[h][k] + 1 << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hsm
