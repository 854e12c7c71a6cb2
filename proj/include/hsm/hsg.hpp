#pragma once

// Petersen and Hoffman-Singleton graphs, and the exhaustive checks on the
// Hoffman-Singleton graph (HSG): Petersen subgraph census, edge frames, the
// Sylvester graph on the 36 vertices far from an edge, and its row hexagons.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsm {

/// A failed structural check. The message names the property that broke.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraph : public VerificationError {
 public:
  DisconnectedGraph() : VerificationError("graph is disconnected: infinite diameter") {}
};

using Edge = std::pair<int, int>;
using VertexMask = std::uint64_t;

/// Simple undirected graph on at most 64 vertices, adjacency stored as bitmasks.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  explicit Graph(int n);
  static Graph from_edges(int n, const std::vector<Edge>& edges);

  void add_edge(int a, int b);

  int vertex_count() const { return n_; }
  int edge_count() const;
  bool adjacent(int a, int b) const { return (adj_[a] >> b) & 1U; }
  VertexMask neighbor_mask(int v) const { return adj_[v]; }
  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  /// Sorted list of edges (a < b).
  std::vector<Edge> edges() const;
  /// Subgraph induced on `vertices`; vertex k of the result is vertices[k].
  Graph induced(const std::vector<int>& vertices) const;

 private:
  int n_;
  std::vector<VertexMask> adj_;
};

struct GraphInvariants {
  int vertex_count = 0;
  int edge_count = 0;
  int min_degree = 0;
  int max_degree = 0;
  std::optional<int> girth;  // empty for forests
  int diameter = 0;
};

Graph build_petersen();
/// Robertson's pentagon/pentagram construction. Throws if any defining
/// invariant fails.
Graph build_hsg();

std::vector<std::vector<int>> distance_matrix(const Graph& g);
std::optional<int> girth(const Graph& g);
GraphInvariants graph_invariants(const Graph& g);

/// Exact automorphism group order by backtracking.
std::uint64_t automorphism_order(const Graph& g);
/// Some automorphism extending the partial map `fixed` (pairs source -> image).
std::optional<std::vector<int>> find_automorphism(const Graph& g, const std::vector<std::pair<int, int>>& fixed);
bool is_automorphism(const Graph& g, const std::vector<int>& perm);

using Pentagon = std::array<int, 5>;

struct PentagonCensus {
  long three_paths = 0;  // unordered paths with 3 edges
  bool unique_completion = false;
  std::vector<Pentagon> pentagons;
  int pentagon_count() const { return static_cast<int>(pentagons.size()); }
};

std::vector<Pentagon> enumerate_pentagons(const Graph& g);
PentagonCensus pentagon_census(const Graph& g);

bool induces_petersen(const Graph& g, VertexMask vertices);

/// The unique induced Petersen graph containing `pentagon` and the edge `e`
/// (which shares exactly one endpoint with it). Returned as a vertex mask.
VertexMask petersen_extension(const Graph& g, const Pentagon& pentagon, Edge e);

struct PetersenCensus {
  long cases = 0;
  long unique_cases = 0;
  int subgraph_count = 0;
  int min_per_pentagon = 0;
  int max_per_pentagon = 0;
  int pentagons_per_subgraph = 0;
};

PetersenCensus petersen_census(const Graph& g, int jobs = 1);

/// Labels around a base edge uv: the other neighbours u_1..u_6 and v_1..v_6
/// (ascending vertex id) and the 36 far vertices W labeled (row, column) by
/// their unique neighbours u_row and v_column. Rows and columns are 0-based.
struct EdgeFrame {
  int u = -1, v = -1;
  std::array<int, 6> u_nbrs{};
  std::array<int, 6> v_nbrs{};
  std::array<std::array<int, 6>, 6> w_at{};
  std::vector<std::pair<int, int>> w_label;  // per vertex; (-1, -1) outside W

  int row(int w) const { return w_label[w].first; }
  int col(int w) const { return w_label[w].second; }
  bool in_w(int w) const { return w_label[w].first >= 0; }
};

EdgeFrame edge_frame(const Graph& g, int u, int v);

/// Sylvester-graph vertex id of a W vertex: row * 6 + column.
inline int sylvester_id(int row, int col) { return row * 6 + col; }

/// Induced graph on W (vertex id row*6+col). Checks the three structural
/// properties of W and the crosses property; throws naming the failure.
Graph sylvester_checks(const Graph& hsg, const EdgeFrame& frame);

using RowTriple = std::array<int, 3>;

struct WHexagon {
  RowTriple triple{};
  std::array<int, 6> cycle{};  // HSG vertex ids in cyclic order
};

/// Induced subgraph on W-vertices whose row lies in `rows` (Sylvester ids).
Graph row_subgraph(const Graph& sylvester, const std::vector<int>& rows);

std::array<WHexagon, 3> hexagon_decomposition(const Graph& hsg, const EdgeFrame& frame, const RowTriple& triple);

std::vector<RowTriple> all_row_triples();

}  // namespace hsm
