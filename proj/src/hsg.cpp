#include "hsm/hsg.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <set>
#include <thread>

namespace hsm {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("graph size out of range");
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

void Graph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::invalid_argument("vertex out of range");
  if (a == b) throw std::invalid_argument("self-loop");
  if (adjacent(a, b)) throw std::invalid_argument("parallel edge");
  adj_[a] |= VertexMask{1} << b;
  adj_[b] |= VertexMask{1} << a;
}

int Graph::edge_count() const {
  int twice = 0;
  for (auto m : adj_) twice += std::popcount(m);
  return twice / 2;
}

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (VertexMask m = adj_[v]; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int a = 0; a < n_; ++a)
    for (int b : neighbors(a))
      if (a < b) out.emplace_back(a, b);
  return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

Graph build_petersen() {
  // Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
  std::vector<std::pair<int, int>> subsets;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
  Graph g(10);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      const auto [a, b] = subsets[i];
      const auto [c, d] = subsets[j];
      if (a != c && a != d && b != c && b != d) g.add_edge(i, j);
    }
  return g;
}

Graph build_hsg() {
  // Pentagon P_h (ids 5h + j) and pentagram Q_i (ids 25 + 5i + j), with
  // P_h,j ~ Q_i,(h*i + j) mod 5.
  Graph g(50);
  auto p = [](int h, int j) { return 5 * h + ((j % 5) + 5) % 5; };
  auto q = [](int i, int j) { return 25 + 5 * i + ((j % 5) + 5) % 5; };
  for (int h = 0; h < 5; ++h)
    for (int j = 0; j < 5; ++j) {
      g.add_edge(p(h, j), p(h, j + 1));
      g.add_edge(q(h, j), q(h, j + 2));
    }
  for (int h = 0; h < 5; ++h)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) g.add_edge(p(h, j), q(i, h * i + j));

  const auto inv = graph_invariants(g);
  if (inv.vertex_count != 50 || inv.edge_count != 175 || inv.min_degree != 7 || inv.max_degree != 7 ||
      inv.girth != 5 || inv.diameter != 2)
    throw VerificationError("HSG construction failed its defining invariants");
  return g;
}

std::vector<std::vector<int>> distance_matrix(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    d[s][s] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : g.neighbors(x))
        if (d[s][y] < 0) {
          d[s][y] = d[s][x] + 1;
          queue.push_back(y);
        }
    }
  }
  return d;
}

std::optional<int> girth(const Graph& g) {
  // Shortest cycle through each root via BFS; exact for undirected graphs.
  const int n = g.vertex_count();
  std::optional<int> best;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          const int len = dist[x] + dist[y] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

GraphInvariants graph_invariants(const Graph& g) {
  GraphInvariants inv;
  inv.vertex_count = g.vertex_count();
  inv.edge_count = g.edge_count();
  if (inv.vertex_count == 0) return inv;
  inv.min_degree = inv.max_degree = g.degree(0);
  for (int v = 1; v < g.vertex_count(); ++v) {
    inv.min_degree = std::min(inv.min_degree, g.degree(v));
    inv.max_degree = std::max(inv.max_degree, g.degree(v));
  }
  const auto d = distance_matrix(g);
  for (const auto& row : d)
    for (int x : row) {
      if (x < 0) throw DisconnectedGraph();
      inv.diameter = std::max(inv.diameter, x);
    }
  inv.girth = girth(g);
  return inv;
}

namespace {

// Backtracking with forward checking. Every vertex keeps a mask of possible
// images; assigning x -> y restricts each other z to vertices at distance
// d(x, z) from y. The most constrained vertex is branched on first.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Graph& g) : n_(g.vertex_count()) {
    const auto dist = distance_matrix(g);
    shell_.assign(n_, std::vector<VertexMask>(n_ + 1, 0));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) shell_[a][dist[a][b] < 0 ? n_ : dist[a][b]] |= VertexMask{1} << b;
    dist_ = dist;
    std::vector<std::vector<int>> profile(n_, std::vector<int>(n_ + 1, 0));
    for (int a = 0; a < n_; ++a)
      for (int x : dist[a]) profile[a][x < 0 ? n_ : x]++;
    initial_.assign(n_, 0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (profile[a] == profile[b]) initial_[a] |= VertexMask{1} << b;
  }

  std::uint64_t count() {
    count_ = 0;
    stop_at_first_ = false;
    image_.assign(n_, -1);
    recurse(initial_, 0);
    return count_;
  }

  std::optional<std::vector<int>> find(const std::vector<std::pair<int, int>>& fixed) {
    auto cand = initial_;
    for (const auto& [a, b] : fixed) cand[a] &= VertexMask{1} << b;
    count_ = 0;
    stop_at_first_ = true;
    found_.reset();
    image_.assign(n_, -1);
    recurse(cand, 0);
    return found_;
  }

 private:
  void recurse(const std::vector<VertexMask>& cand, int assigned) {
    if (assigned == n_) {
      ++count_;
      if (stop_at_first_) found_ = image_;
      return;
    }
    int x = -1, best = 65;
    for (int z = 0; z < n_; ++z) {
      if (image_[z] >= 0) continue;
      const int c = std::popcount(cand[z]);
      if (c < best) best = c, x = z;
    }
    std::vector<VertexMask> next(n_);
    for (VertexMask m = cand[x]; m; m &= m - 1) {
      const int y = std::countr_zero(m);
      const VertexMask ybit = VertexMask{1} << y;
      bool ok = true;
      for (int z = 0; z < n_ && ok; ++z) {
        if (image_[z] >= 0 || z == x) continue;
        next[z] = cand[z] & ~ybit & shell_[y][dist_[x][z] < 0 ? n_ : dist_[x][z]];
        ok = next[z] != 0;
      }
      if (!ok) continue;
      image_[x] = y;
      recurse(next, assigned + 1);
      image_[x] = -1;
      if (stop_at_first_ && found_) return;
    }
  }

  int n_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<VertexMask>> shell_;
  std::vector<VertexMask> initial_;
  std::vector<int> image_;
  std::uint64_t count_ = 0;
  bool stop_at_first_ = false;
  std::optional<std::vector<int>> found_;
};

}  // namespace

std::uint64_t automorphism_order(const Graph& g) {
  if (g.vertex_count() == 0) return 1;
  return AutomorphismSearch(g).count();
}

std::optional<std::vector<int>> find_automorphism(const Graph& g, const std::vector<std::pair<int, int>>& fixed) {
  return AutomorphismSearch(g).find(fixed);
}

bool is_automorphism(const Graph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int x : perm) {
    if (x < 0 || x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (const auto& [a, b] : g.edges())
    if (!g.adjacent(perm[a], perm[b])) return false;
  return true;
}

std::vector<Pentagon> enumerate_pentagons(const Graph& g) {
  std::vector<Pentagon> out;
  const int n = g.vertex_count();
  for (int s = 0; s < n; ++s)
    for (int a : g.neighbors(s)) {
      if (a < s) continue;
      for (int b : g.neighbors(a)) {
        if (b <= s || b == a) continue;
        for (int c : g.neighbors(b)) {
          if (c <= s || c == a || c == b) continue;
          for (int d : g.neighbors(c)) {
            if (d <= s || d == a || d == b || d == c) continue;
            // Each cycle is seen in both directions; keep a < d.
            if (g.adjacent(d, s) && a < d) out.push_back({s, a, b, c, d});
          }
        }
      }
    }
  return out;
}

PentagonCensus pentagon_census(const Graph& g) {
  PentagonCensus census;
  census.unique_completion = true;
  const int n = g.vertex_count();
  long ordered = 0;
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a))
      for (int c : g.neighbors(b)) {
        if (c == a) continue;
        for (int d : g.neighbors(c)) {
          if (d == b || d == a) continue;
          ++ordered;
          VertexMask common = g.neighbor_mask(a) & g.neighbor_mask(d);
          common &= ~((VertexMask{1} << b) | (VertexMask{1} << c));
          if (std::popcount(common) != 1) census.unique_completion = false;
        }
      }
  census.three_paths = ordered / 2;
  census.pentagons = enumerate_pentagons(g);
  return census;
}

bool induces_petersen(const Graph& g, VertexMask vertices) {
  if (std::popcount(vertices) != 10) return false;
  std::vector<int> vs;
  for (VertexMask m = vertices; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    if (std::popcount(g.neighbor_mask(v) & vertices) != 3) return false;
    vs.push_back(v);
  }
  // The Petersen graph is the only cubic graph on 10 vertices with girth 5.
  return girth(g.induced(vs)) == 5;
}

namespace {

std::vector<VertexMask> petersen_extensions(const Graph& g, const Pentagon& pentagon, Edge e) {
  VertexMask pmask = 0;
  for (int p : pentagon) pmask |= VertexMask{1} << p;
  int at = -1, outside = -1;
  for (int i = 0; i < 5; ++i) {
    if (pentagon[i] == e.first && !((pmask >> e.second) & 1U)) at = i, outside = e.second;
    if (pentagon[i] == e.second && !((pmask >> e.first) & 1U)) at = i, outside = e.first;
  }
  if (at < 0 || !g.adjacent(e.first, e.second))
    throw std::invalid_argument("edge must join a pentagon vertex to a vertex outside it");

  // Every Petersen graph through the pentagon adds one spoke per pentagon
  // vertex; enumerate all spoke choices exhaustively.
  std::array<std::vector<int>, 5> choices;
  for (int i = 0; i < 5; ++i) {
    if (i == at) {
      choices[i] = {outside};
      continue;
    }
    for (int y : g.neighbors(pentagon[i]))
      if (!((pmask >> y) & 1U)) choices[i].push_back(y);
  }
  std::vector<VertexMask> found;
  std::array<std::size_t, 5> idx{};
  while (true) {
    VertexMask m = pmask;
    for (int i = 0; i < 5; ++i) m |= VertexMask{1} << choices[i][idx[i]];
    if (induces_petersen(g, m) && std::find(found.begin(), found.end(), m) == found.end()) found.push_back(m);
    int k = 0;
    while (k < 5 && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == 5) break;
  }
  return found;
}

}  // namespace

VertexMask petersen_extension(const Graph& g, const Pentagon& pentagon, Edge e) {
  const auto found = petersen_extensions(g, pentagon, e);
  if (found.size() != 1)
    throw VerificationError("Petersen extension lemma violated: " + std::to_string(found.size()) +
                            " extensions found");
  return found.front();
}

PetersenCensus petersen_census(const Graph& g, int jobs) {
  const auto pentagons = enumerate_pentagons(g);
  struct PerPentagon {
    long cases = 0, unique = 0;
    std::vector<VertexMask> subgraphs;
  };
  std::vector<PerPentagon> results(pentagons.size());

  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k < pentagons.size(); k += step) {
      const auto& p = pentagons[k];
      VertexMask pmask = 0;
      for (int v : p) pmask |= VertexMask{1} << v;
      auto& r = results[k];
      for (int v : p)
        for (int y : g.neighbors(v)) {
          if ((pmask >> y) & 1U) continue;
          ++r.cases;
          const auto found = petersen_extensions(g, p, {v, y});
          if (found.size() == 1) {
            ++r.unique;
            if (std::find(r.subgraphs.begin(), r.subgraphs.end(), found[0]) == r.subgraphs.end())
              r.subgraphs.push_back(found[0]);
          }
        }
    }
  };
  const std::size_t n_jobs = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> threads;
  for (std::size_t j = 1; j < n_jobs; ++j) threads.emplace_back(work, j, n_jobs);
  work(0, n_jobs);
  for (auto& t : threads) t.join();

  PetersenCensus census;
  std::set<VertexMask> all;
  census.min_per_pentagon = pentagons.empty() ? 0 : 1 << 30;
  for (const auto& r : results) {
    census.cases += r.cases;
    census.unique_cases += r.unique;
    const int k = static_cast<int>(r.subgraphs.size());
    census.min_per_pentagon = std::min(census.min_per_pentagon, k);
    census.max_per_pentagon = std::max(census.max_per_pentagon, k);
    all.insert(r.subgraphs.begin(), r.subgraphs.end());
  }
  census.subgraph_count = static_cast<int>(all.size());
  if (!all.empty()) census.pentagons_per_subgraph = static_cast<int>(enumerate_pentagons(
      g.induced([&] {
        std::vector<int> vs;
        for (VertexMask m = *all.begin(); m; m &= m - 1) vs.push_back(std::countr_zero(m));
        return vs;
      }())).size());
  return census;
}

EdgeFrame edge_frame(const Graph& g, int u, int v) {
  if (!g.adjacent(u, v)) throw std::invalid_argument("edge_frame: not an edge");
  EdgeFrame f;
  f.u = u;
  f.v = v;
  auto others = [&](int x, int skip) {
    std::vector<int> nb;
    for (int y : g.neighbors(x))
      if (y != skip) nb.push_back(y);
    return nb;
  };
  const auto un = others(u, v), vn = others(v, u);
  if (un.size() != 6 || vn.size() != 6) throw VerificationError("edge frame requires valency 7");
  std::copy(un.begin(), un.end(), f.u_nbrs.begin());
  std::copy(vn.begin(), vn.end(), f.v_nbrs.begin());

  f.w_label.assign(g.vertex_count(), {-1, -1});
  VertexMask framed = (VertexMask{1} << u) | (VertexMask{1} << v);
  for (int x : un) framed |= VertexMask{1} << x;
  for (int x : vn) framed |= VertexMask{1} << x;
  for (auto& row : f.w_at) row.fill(-1);
  int w_count = 0;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if ((framed >> w) & 1U) continue;
    ++w_count;
    int row = -1, col = -1, nr = 0, nc = 0;
    for (int i = 0; i < 6; ++i) {
      if (g.adjacent(w, f.u_nbrs[i])) row = i, ++nr;
      if (g.adjacent(w, f.v_nbrs[i])) col = i, ++nc;
    }
    if (nr != 1 || nc != 1) throw VerificationError("edge frame: W vertex without unique u_i / v_j neighbours");
    if (f.w_at[row][col] >= 0) throw VerificationError("edge frame: W labeling is not injective");
    f.w_at[row][col] = w;
    f.w_label[w] = {row, col};
  }
  if (w_count != 36) throw VerificationError("edge frame: |W| != 36");
  return f;
}

Graph sylvester_checks(const Graph& hsg, const EdgeFrame& frame) {
  Graph s(36);
  for (int a = 0; a < 36; ++a)
    for (int b = a + 1; b < 36; ++b)
      if (hsg.adjacent(frame.w_at[a / 6][a % 6], frame.w_at[b / 6][b % 6])) s.add_edge(a, b);

  for (const auto& [a, b] : s.edges())
    if (a / 6 == b / 6 || a % 6 == b % 6)
      throw VerificationError("W property 1 violated: edge inside a row or a column");
  for (int a = 0; a < 36; ++a) {
    std::array<int, 6> per_row{}, per_col{};
    for (int b : s.neighbors(a)) per_row[b / 6]++, per_col[b % 6]++;
    for (int k = 0; k < 6; ++k) {
      if (k != a / 6 && per_row[k] != 1)
        throw VerificationError("W property 2 violated: not exactly one neighbour in another row");
      if (k != a % 6 && per_col[k] != 1)
        throw VerificationError("W property 2 violated: not exactly one neighbour in another column");
    }
  }
  const auto gi = girth(s);
  if (gi && *gi < 5) throw VerificationError("W property 3 violated: triangle or square in W");
  for (const auto& [a, b] : s.edges()) {
    const int i = a / 6, j = a % 6, k = b / 6, m = b % 6;
    if (!s.adjacent(sylvester_id(i, m), sylvester_id(k, j)))
      throw VerificationError("crosses lemma violated");
  }
  return s;
}

Graph row_subgraph(const Graph& sylvester, const std::vector<int>& rows) {
  Graph h(36);
  auto in_rows = [&](int x) { return std::find(rows.begin(), rows.end(), x / 6) != rows.end(); };
  for (const auto& [a, b] : sylvester.edges())
    if (in_rows(a) && in_rows(b)) h.add_edge(a, b);
  return h;
}

std::array<WHexagon, 3> hexagon_decomposition(const Graph& hsg, const EdgeFrame& frame, const RowTriple& triple) {
  const Graph syl = sylvester_checks(hsg, frame);
  const Graph h3 = row_subgraph(syl, {triple[0], triple[1], triple[2]});
  std::array<WHexagon, 3> out;
  std::vector<char> seen(36, 0);
  int found = 0;
  for (int r : triple)
    for (int c = 0; c < 6; ++c)
      if (h3.degree(sylvester_id(r, c)) != 2) throw VerificationError("hexagon lemma violated: degree != 2 in H3");
  for (int start = 0; start < 36; ++start) {
    if (seen[start] || std::find(triple.begin(), triple.end(), start / 6) == triple.end()) continue;
    std::vector<int> cyc{start};
    seen[start] = 1;
    int prev = -1, cur = start;
    while (true) {
      const auto nb = h3.neighbors(cur);
      int next = prev < 0 ? std::min(nb[0], nb[1]) : (nb[0] == prev ? nb[1] : nb[0]);
      if (next == start) break;
      if (seen[next]) throw VerificationError("hexagon lemma violated: malformed component");
      seen[next] = 1;
      cyc.push_back(next);
      prev = cur;
      cur = next;
    }
    if (cyc.size() != 6 || found >= 3) throw VerificationError("hexagon lemma violated: component is not a hexagon");
    std::array<char, 6> cols{};
    for (int x : cyc) {
      if (cols[x % 6]) throw VerificationError("hexagon lemma violated: column repeated in a hexagon");
      cols[x % 6] = 1;
    }
    out[found].triple = triple;
    for (int k = 0; k < 6; ++k) out[found].cycle[k] = frame.w_at[cyc[k] / 6][cyc[k] % 6];
    ++found;
  }
  if (found != 3) throw VerificationError("hexagon lemma violated: not three hexagons");
  return out;
}

std::vector<RowTriple> all_row_triples() {
  std::vector<RowTriple> out;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace hsm
