#pragma once

// Closed geodesics of the manifold: segment lengths of the hexagon tiling,
// plane tessellations through hexagons, and holonomy by tracing through the
// fundamental region.

#include <string>
#include <vector>

#include "hsm/assembly.hpp"

namespace hsm {

struct GeodesicLine {
  Boundaryd back, forward;
};

GeodesicLine line_through(const Pointd& p, const Pointd& q);

struct SegmentLengths {
  double edge = 0, height = 0, diagonal = 0;
};

/// Measured with dist on hexagon 0 of the region.
SegmentLengths segment_lengths(const Region& region);

enum class TessellationKind { TypeI, TypeII };

struct PlaneTessellation {
  int hexagon = 0;
  TessellationKind kind = TessellationKind::TypeII;
  std::array<int, 6> neighbors{};  // coplanar hexagon across each edge
  int hexagons_per_vertex = 0;
  bool uniform = false;            // every neighbor has the same colour
};

/// Purple hexagons carry doubled edges; green ones only single edges.
bool is_purple(const Region& region, int hexagon);

PlaneTessellation classify_plane(const Region& region, const Gluing& gluing, int hexagon);

struct TraceSegment {
  int cone = 0;  // hexagon * 2 + dir
  Pointd entry, exit;
};

struct TraceOptions {
  int max_steps = 2000;
  std::vector<double> marks;  // distances at which to record the region point
};

struct TraceResult {
  std::vector<TraceSegment> segments;
  Isometryd holonomy;
  double translation_length = 0;
  double traveled = 0;
  bool closed = false;
  bool cusp = false;  // ran into an ideal vertex
  int steps = 0;
  std::vector<std::pair<int, Pointd>> marked;  // (cone, point) per mark
};

/// Marches from `start` toward line.forward, crossing walls by the gluing
/// maps, until the line returns to itself, enters a cusp, or max_steps.
TraceResult trace_geodesic(const GeodesicLine& line, const Pointd& start, const Region& region,
                           const Gluing& gluing, const TraceOptions& opt = {});

/// Both ends of the line run into cusps.
bool is_bicuspid(const GeodesicLine& line, const Pointd& start, const Region& region, const Gluing& gluing);

/// p (in cone) and q represent the same point of the manifold.
bool same_manifold_point(const Region& region, const Gluing& gluing, int cone, const Pointd& p, const Pointd& q);

struct GeodesicClaim {
  std::string name;
  double expected = 0;
  double measured = 0;
  int steps = 0;
  bool ok = false;
};

/// The five closed-geodesic length claims, plus the self-intersection check
/// of the four-height geodesic in a type I plane.
std::vector<GeodesicClaim> closed_geodesic_suite(const Region& region, const Gluing& gluing);

}  // namespace hsm
