#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace catsurf {

// Point in the conformal chart, where the length element is
//   ds^2 = 4 (dx^2 + dy^2) / (1 + kappa (x^2 + y^2))^2.
// For kappa < 0 the chart is the open disk x^2 + y^2 < 1/|kappa|.
struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
};

// Point in the projective chart (gnomonic for kappa > 0, Beltrami-Klein for
// kappa < 0, identity for kappa = 0). Geodesics are straight segments here.
struct ProjPoint {
  double x = 0.0;
  double y = 0.0;
};

// The simply connected surface of constant curvature kappa.
struct ModelSpace {
  double kappa = 0.0;

  // pi/sqrt(kappa) for kappa > 0, +infinity otherwise.
  double diameter() const {
    if (kappa > 0.0) return M_PI / std::sqrt(kappa);
    return std::numeric_limits<double>::infinity();
  }

  // True when curvature effects at this squared length scale are below
  // floating-point resolution and Euclidean formulas apply.
  bool effectively_flat(double length_sq_scale) const {
    return std::abs(kappa) * length_sq_scale < 1e-12;
  }
};

struct TriangleData {
  double a = 0, b = 0, c = 0;          // side lengths
  double alpha = 0, beta = 0, gamma = 0;  // angle opposite a, b, c
  double kappa = 0;
  double excess = 0;  // alpha + beta + gamma - pi
  double area = 0;    // excess / kappa, or Heron's value at kappa = 0
};

// Intrinsic distance between two chart points. For kappa > 0 the result is
// capped at the model diameter.
double distance(const ModelSpace& space, ChartPoint p, ChartPoint q);

// Law of cosines: side c opposite the angle gamma enclosed by sides a, b.
double side_from_angle(const ModelSpace& space, double a, double b,
                       double gamma);

// Inverse: the angle opposite side c. If the triangle inequality holds with
// equality (within tolerance), returns 0 or pi and sets *degenerate.
double angle_from_sides(const ModelSpace& space, double a, double b, double c,
                        bool* degenerate = nullptr);

TriangleData triangle_data(const ModelSpace& space, double a, double b,
                           double c);

ProjPoint to_projective_chart(const ModelSpace& space, ChartPoint p);
ChartPoint from_projective_chart(const ModelSpace& space, ProjPoint u);

// Point at arclength s along the unique geodesic [pq], 0 <= s <= d(p,q).
ChartPoint geodesic_point(const ModelSpace& space, ChartPoint p, ChartPoint q,
                          double s);

// Chart point at given intrinsic distance from the origin, at polar angle
// theta. Rotations about the chart origin are isometries.
ChartPoint chart_point_at(const ModelSpace& space, double dist, double theta);

// Canonical placement of the triangle with side lengths (a, b, c):
// p at the origin, q on the positive x-axis at distance c, r at distance b
// from p in the upper half plane. Returns {p, q, r}.
std::array<ChartPoint, 3> place_triangle(const ModelSpace& space, double a,
                                         double b, double c);

// Throws std::domain_error unless (a, b, c) satisfy the strict triangle
// inequality (within tol) and the perimeter bound for the model space.
void require_admissible_sides(const ModelSpace& space, double a, double b,
                              double c);

}  // namespace catsurf
