#pragma once

// Machine-readable verification report ("hsman/1") over the whole pipeline,
// plus SVG rendering of the plane tessellations.

#include <string>

#include "json.hpp"
#include "hsm/geodesics.hpp"
#include "hsm/symmetry.hpp"

namespace hsm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "hsman/1";

struct ReportOptions {
  int base_u = -1, base_v = -1;  // base edge; lexicographically least when unset
  double tolerance = 1e-9;
  int max_word_length = 6;
  int jobs = 1;
  bool timings = false;  // runtimes make the output non-reproducible
};

/// Every stage from the graph to the glued region, built once.
struct Pipeline {
  explicit Pipeline(const ReportOptions& opt);

  Graph graph;
  EdgeFrame frame;
  Maniplex maniplex;
  Region region;
  PairingGroup pg;
  Gluing gluing;
};

/// Least edge of g, or (u, v) when both are set; throws when not an edge.
std::pair<int, int> resolve_base_edge(const Graph& g, int u, int v);

Json graph_section(const Graph& g, const ReportOptions& opt);
Json maps_section(const Graph& g, const EdgeFrame& frame);
Json manifold_section(const Pipeline& p, const ReportOptions& opt);
Json cusps_section(const Pipeline& p, const ReportOptions& opt);
Json volume_section(const ReportOptions& opt);
Json symmetry_section(const Pipeline& p, const ReportOptions& opt);
Json geodesics_section(const Pipeline& p, const ReportOptions& opt);

/// All sections in fixed order with an overall "pass".
Json build_report(const ReportOptions& opt);

/// Two-space indented JSON with a trailing newline.
std::string dump_json(const Json& j);

/// {"n": vertex count, "edges": [[a, b], ...]}.
Json graph_json(const Graph& g);

/// Float rounded to 12 significant digits.
double round12(double x);

/// Poincare disk drawing of the {6,4} tiling of a plane through a hexagon;
/// type I draws alternate edges doubled.
std::string render_tessellation_svg(TessellationKind kind, int depth = 3);

}  // namespace hsm
