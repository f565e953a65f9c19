#include "catsurf/comparison.hpp"

#include <algorithm>
#include <cmath>

#include "catsurf/chart_geometry.hpp"

namespace catsurf {

namespace {

// Boundary point of a placed model triangle {p, q, r} at a given parameter.
ChartPoint boundary_point(const ModelSpace& space,
                          const std::array<ChartPoint, 3>& v,
                          const std::array<double, 3>& len, BoundaryParam b) {
  const int i = b.side;
  const ChartPoint from = v[i];
  const ChartPoint to = v[(i + 1) % 3];
  const double s = std::clamp(b.arclength, 0.0, len[i]);
  return geodesic_point(space, from, to, s);
}

}  // namespace

AbstractTriangle model_triangle(const ModelSpace& space, double a_qr,
                                double b_pr, double c_pq) {
  require_admissible_sides(space, a_qr, b_pr, c_pq);
  auto verts = place_triangle(space, a_qr, b_pr, c_pq);
  AbstractTriangle t;
  t.side_lengths = {c_pq, a_qr, b_pr};
  t.boundary_distance = [space, verts,
                         len = t.side_lengths](BoundaryParam x,
                                               BoundaryParam y) {
    return distance(space, boundary_point(space, verts, len, x),
                    boundary_point(space, verts, len, y));
  };
  return t;
}

double model_angle(double kappa, double d_pq, double d_pr, double d_qr) {
  return angle_from_sides(ModelSpace{kappa}, d_pq, d_pr, d_qr);
}

double upper_angle_estimate(const ModelSpace& space, ChartPoint p,
                            ChartPoint q, ChartPoint r, double shrink,
                            int steps) {
  const double dq = distance(space, p, q);
  const double dr = distance(space, p, r);
  if (dq <= 0.0 || dr <= 0.0) {
    throw std::domain_error("upper_angle_estimate: degenerate input");
  }
  const int tail = std::min(10, steps);
  double best = 0.0;
  double f = shrink;
  for (int k = 1; k <= steps; ++k, f *= shrink) {
    ChartPoint qk = geodesic_point(space, p, q, f * dq);
    ChartPoint rk = geodesic_point(space, p, r, f * dr);
    const double a = distance(space, p, qk);
    const double b = distance(space, p, rk);
    const double c = distance(space, qk, rk);
    bool degen = false;
    const double ang = angle_from_sides(ModelSpace{0.0}, a, b, c, &degen);
    if (k > steps - tail) best = std::max(best, ang);
  }
  return best;
}

double excess(const TriangleData& t) { return t.excess; }

double family_excess(const std::vector<TriangleData>& ts) {
  double s = 0.0;
  for (const auto& t : ts) s += t.excess;
  return s;
}

ViolationReport cat_test(const AbstractTriangle& t, double kappa,
                         std::size_t grid_n) {
  const auto& len = t.side_lengths;
  const ModelSpace model{kappa};
  if (kappa > 0.0 && len[0] + len[1] + len[2] >= 2.0 * model.diameter()) {
    throw std::domain_error("cat_test: perimeter not below 2 D_kappa");
  }
  if (!t.boundary_distance) throw std::invalid_argument("missing oracle");
  // Comparison triangle with matching side conventions: vertices p, q, r and
  // sides [pq], [qr], [rp].
  auto verts = place_triangle(model, len[1], len[2], len[0]);

  ViolationReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  std::vector<BoundaryParam> params;
  std::vector<ChartPoint> comparison_pts;
  for (int side = 0; side < 3; ++side) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      // Midpoint sampling: vertex pairs are exact by construction and only
      // contribute roundoff, so sample strictly interior side points.
      const double s = len[side] * (static_cast<double>(j) + 0.5) /
                       static_cast<double>(grid_n);
      BoundaryParam bp{side, s};
      params.push_back(bp);
      comparison_pts.push_back(geodesic_point(
          model, verts[side], verts[(side + 1) % 3], s));
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i + 1; j < params.size(); ++j) {
      if (params[i].side == params[j].side) continue;  // arclength metric
      const double ambient = t.boundary_distance(params[i], params[j]);
      const double model_d =
          distance(model, comparison_pts[i], comparison_pts[j]);
      const double v = ambient - model_d;
      ++rep.samples_used;
      if (v > rep.max_violation) {
        rep.max_violation = v;
        rep.arg_x = params[i];
        rep.arg_y = params[j];
      }
    }
  }
  return rep;
}

DistortionReport canonical_distortion(const AbstractTriangle& t,
                                      std::size_t grid_n) {
  const auto& len = t.side_lengths;
  const ModelSpace plane{0.0};
  bool degen = false;
  angle_from_sides(plane, len[1], len[2], len[0], &degen);
  if (degen) throw std::domain_error("degenerate Euclidean model triangle");
  auto verts = place_triangle(plane, len[1], len[2], len[0]);

  DistortionReport rep;
  rep.edge_ratio_max = std::max({len[0], len[1], len[2]}) /
                       std::min({len[0], len[1], len[2]});
  std::vector<BoundaryParam> params;
  std::vector<ChartPoint> model_pts;
  for (int side = 0; side < 3; ++side) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double s =
          len[side] * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      params.push_back({side, s});
      model_pts.push_back(
          geodesic_point(plane, verts[side], verts[(side + 1) % 3], s));
    }
  }
  double L = 1.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i + 1; j < params.size(); ++j) {
      const double ambient = t.boundary_distance(params[i], params[j]);
      const double model_d = distance(plane, model_pts[i], model_pts[j]);
      ++rep.samples_used;
      if (ambient < 1e-14 || model_d < 1e-14) continue;
      const double ratio = ambient / model_d;
      L = std::max(L, std::max(ratio, 1.0 / ratio));
    }
  }
  rep.bilipschitz_estimate = L;
  return rep;
}

SubdivisionCheck subdivision_check(const ModelSpace& ambient, ChartPoint p,
                                   ChartPoint q, ChartPoint r, ChartPoint s,
                                   double target_kappa) {
  const double pq = distance(ambient, p, q);
  const double pr = distance(ambient, p, r);
  const double qr = distance(ambient, q, r);
  const double ps = distance(ambient, p, s);
  const double qs = distance(ambient, q, s);
  const double rs = distance(ambient, r, s);

  SubdivisionCheck out;
  // Ambient (model-space) excesses via angles from distances.
  auto tri_excess = [&](double x, double y, double z) {
    TriangleData t = triangle_data(ambient, x, y, z);
    return t.excess;
  };
  out.excess_parent = tri_excess(qr, pr, pq);
  out.excess_children_sum = tri_excess(qs, ps, pq) + tri_excess(rs, ps, pr);

  // Comparison-triangle areas at the target curvature.
  const ModelSpace target{target_kappa};
  out.model_area_parent = triangle_data(target, qr, pr, pq).area;
  out.model_area_children_sum = triangle_data(target, qs, ps, pq).area +
                                triangle_data(target, rs, ps, pr).area;
  return out;
}

FitResult fit_comparison_children(double kappa,
                                  const std::array<double, 3>& parent_sides,
                                  const std::array<double, 3>& child1_sides,
                                  const std::array<double, 3>& child2_sides) {
  const ModelSpace model{kappa};
  const double pq = parent_sides[0], qr = parent_sides[1],
               rp = parent_sides[2];
  const double ps = child1_sides[0], sq = child1_sides[1];
  const double sr = child2_sides[1];

  const double alpha = angle_from_sides(model, pq, rp, qr);  // angle at p
  const double a1 = angle_from_sides(model, ps, pq, sq);     // child1 at p
  const double a2 = angle_from_sides(model, ps, rp, sr);     // child2 at p

  auto proj = [&](double dist, double theta) {
    return to_projective_chart(model, chart_point_at(model, dist, theta));
  };
  const ProjPoint P = proj(0.0, 0.0);
  const ProjPoint Q = proj(pq, 0.0);
  const ProjPoint R = proj(rp, alpha);
  const ProjPoint Y = proj(ps, a1);           // child1 apex, from [pq]
  const ProjPoint Z = proj(ps, alpha - a2);   // child2 apex, from [pr]

  auto v = [](ProjPoint u) { return Vec2{u.x, u.y}; };
  auto ccw = [](std::vector<Vec2> poly) {
    if (polygon_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
  };
  const std::vector<Vec2> parent = ccw({v(P), v(Q), v(R)});
  const std::vector<Vec2> t1 = ccw({v(P), v(Q), v(Y)});
  const std::vector<Vec2> t2 = ccw({v(P), v(R), v(Z)});

  FitResult out;
  const double tol = 1e-10 * std::max(polygon_area(parent), 1e-30);
  const double a_t1 = polygon_area(t1);
  const double a_t2 = polygon_area(t2);
  const double in1 = std::abs(polygon_area(clip_convex(t1, parent)));
  const double in2 = std::abs(polygon_area(clip_convex(t2, parent)));
  out.contained = (a_t1 - in1 <= tol) && (a_t2 - in2 <= tol);
  auto overlap = clip_convex(t1, t2);
  out.overlap_area =
      overlap.size() >= 3 ? std::abs(polygon_area(overlap)) : 0.0;
  return out;
}

}  // namespace catsurf
