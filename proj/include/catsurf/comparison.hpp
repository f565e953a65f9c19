#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "catsurf/model_space.hpp"

namespace catsurf {

// Parameter on the boundary of a triangle: a side index (0 = [pq], 1 = [qr],
// 2 = [rp]) and an arclength along that side from its first endpoint.
struct BoundaryParam {
  int side = 0;
  double arclength = 0.0;
};

// Triangle known only through its side lengths and a distance oracle on
// boundary points. The oracle must be symmetric and restrict to the
// arclength metric within each side.
struct AbstractTriangle {
  std::array<double, 3> side_lengths{};  // lengths of [pq], [qr], [rp]
  std::function<double(BoundaryParam, BoundaryParam)> boundary_distance;
};

// AbstractTriangle realized as a geodesic triangle in a model space.
AbstractTriangle model_triangle(const ModelSpace& space, double a_qr,
                                double b_pr, double c_pq);

struct ViolationReport {
  double max_violation = 0.0;  // positive means CAT(kappa) violated
  BoundaryParam arg_x, arg_y;
  std::size_t samples_used = 0;
};

struct DistortionReport {
  double bilipschitz_estimate = 1.0;  // L >= 1
  double edge_ratio_max = 1.0;
  std::size_t samples_used = 0;
};

struct SubdivisionCheck {
  double excess_parent = 0.0;
  double excess_children_sum = 0.0;
  double model_area_parent = 0.0;
  double model_area_children_sum = 0.0;
};

struct FitResult {
  bool contained = false;
  double overlap_area = 0.0;  // Euclidean area in the projective chart
};

// Angle at the comparison-triangle vertex p, given the three pairwise
// distances d(p,q), d(p,r), d(q,r).
double model_angle(double kappa, double d_pq, double d_pr, double d_qr);

// Shrinking-comparison estimate of the Alexandrov upper angle between the
// geodesics [pq] and [pr]. Takes the max over the last iterates as the
// limsup surrogate.
double upper_angle_estimate(const ModelSpace& space, ChartPoint p,
                            ChartPoint q, ChartPoint r, double shrink = 0.5,
                            int steps = 40);

double excess(const TriangleData& t);
double family_excess(const std::vector<TriangleData>& ts);

// Samples grid_n arclength-equispaced points per side and evaluates
// d(x,y) - d_kappa(xbar, ybar) over all cross-side pairs.
ViolationReport cat_test(const AbstractTriangle& t, double kappa,
                         std::size_t grid_n = 64);

// Empirical bi-Lipschitz constant of the canonical map onto the Euclidean
// model triangle, over sampled boundary pairs.
DistortionReport canonical_distortion(const AbstractTriangle& t,
                                      std::size_t grid_n = 64);

// Measures the Lemma on subdividing triangles: ambient excess of the parent
// vs. the two children obtained by splitting at s on side [qr], and the
// comparison-triangle areas at target_kappa. Pure measurement.
SubdivisionCheck subdivision_check(const ModelSpace& ambient, ChartPoint p,
                                   ChartPoint q, ChartPoint r, ChartPoint s,
                                   double target_kappa);

// Places the comparison children along the sides [pq] and [pr] of the
// comparison parent in the projective chart and reports containment and
// mutual overlap. Side conventions: parent = (pq, qr, rp); child1 = triangle
// (p,s,q) given as (d(p,s), d(s,q), d(p,q)); child2 = (p,s,r) likewise.
FitResult fit_comparison_children(double kappa,
                                  const std::array<double, 3>& parent_sides,
                                  const std::array<double, 3>& child1_sides,
                                  const std::array<double, 3>& child2_sides);

}  // namespace catsurf
