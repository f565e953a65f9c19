#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "catsurf/chart_geometry.hpp"
#include "catsurf/model_space.hpp"

namespace catsurf {

// Convex polygon in a projective chart of the ambient model space.
// Vertices are counterclockwise; edges are geodesics (straight here).
struct ChartPolygon {
  std::vector<Vec2> pts;
  double kappa = 0.0;
};

// Validates simplicity/convexity and normalizes orientation to ccw.
ChartPolygon make_polygon(std::vector<Vec2> pts, double kappa);

struct IntersectionResult {
  ChartPolygon poly;
  bool empty = false;        // no common points (up to tolerance)
  bool degenerate = false;   // lower-dimensional intersection
};

IntersectionResult intersect_convex(const ChartPolygon& p,
                                    const ChartPolygon& q);

// One vertex-edge subdivision move: split triangle `tri` (index into the
// evolving list) at corner `vertex` (0..2) by the chord to `point` on the
// opposite edge. The first child replaces the slot, the second is appended.
struct SplitStep {
  std::size_t tri = 0;
  int vertex = 0;
  Vec2 point;
};

using Triangle2 = std::array<Vec2, 3>;

std::vector<Triangle2> replay_certificate(const Triangle2& parent,
                                          const std::vector<SplitStep>& cert);

struct RefinementOutput {
  std::vector<Triangle2> triangles;
  std::vector<int> owner;  // family polygon index, or -1 for background
  std::vector<SplitStep> certificate;
};

// Foot of the ray from the apex p of the parent triangle through v on the
// opposite side [qr]. `on_boundary` is set when v already lies on [qr].
Vec2 extend_geodesic_to_side(const Triangle2& parent, Vec2 v,
                             bool* on_boundary = nullptr);

// Vertex-edge refinement of the family with respect to the parent triangle:
// a fan of chords from the apex through every family vertex to the opposite
// side, then stacked crossing chords within each fan triangle.
RefinementOutput ve_refine(const ChartPolygon& parent,
                           const std::vector<ChartPolygon>& family);

enum class VeStatus { Yes, No, Unknown };

struct VeCheck {
  VeStatus status = VeStatus::Unknown;
  // Chords of the successful replay, outermost split first.
  std::vector<std::pair<Vec2, Vec2>> trace;
  std::size_t nodes_searched = 0;
};

// Search for a sequence of vertex-to-edge chord splits of `parent` that
// reproduces `triangles`. The search is budgeted; past the budget the result
// is Unknown rather than No.
VeCheck is_vertex_edge(const ChartPolygon& parent,
                       const std::vector<Triangle2>& triangles);

struct ExcessBoundDemo {
  double family_excess = 0.0;
  double parent_model_area_scaled = 0.0;  // kappa * |comparison parent|
};

ExcessBoundDemo family_excess_bound_demo(const ChartPolygon& parent,
                                         const std::vector<ChartPolygon>& family,
                                         double target_kappa);

// Side lengths of a chart triangle measured in the ambient model space.
std::array<double, 3> ambient_side_lengths(double kappa, const Triangle2& t);

// Excess of a chart triangle measured with ambient model-space angles.
double ambient_excess(double kappa, const Triangle2& t);

}  // namespace catsurf
