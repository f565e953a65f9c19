#include "catsurf/model_space.hpp"

#include <algorithm>
#include <cmath>

namespace catsurf {

namespace {

double norm_sq(ChartPoint p) { return p.x * p.x + p.y * p.y; }

void check_chart_point(const ModelSpace& space, ChartPoint p) {
  if (space.kappa < 0.0 && norm_sq(p) >= 1.0 / -space.kappa) {
    throw std::domain_error(
        "chart point outside the disk of definition (kappa < 0)");
  }
}

// sin(k x)/k, sinh(k x)/k or x, depending on curvature sign, with the
// Euclidean branch taken when curvature is negligible at this scale.
double gen_sin(double kappa, double x) {
  if (kappa == 0.0 || std::abs(kappa) * x * x < 1e-12) return x;
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    return std::sin(k * x) / k;
  }
  const double k = std::sqrt(-kappa);
  return std::sinh(k * x) / k;
}

}  // namespace

double distance(const ModelSpace& space, ChartPoint p, ChartPoint q) {
  check_chart_point(space, p);
  check_chart_point(space, q);
  const double dx = p.x - q.x, dy = p.y - q.y;
  const double chord = std::hypot(dx, dy);
  const double kappa = space.kappa;
  // |1 + kappa z_p conj(z_q)| where z are the chart points as complex numbers.
  const double dot = p.x * q.x + p.y * q.y;
  const double cross = p.y * q.x - p.x * q.y;
  const double denom =
      std::hypot(1.0 + kappa * dot, kappa * cross);
  if (kappa == 0.0) return 2.0 * chord;
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    return (2.0 / k) * std::atan2(k * chord, denom);
  }
  const double k = std::sqrt(-kappa);
  const double t = k * chord / denom;  // < 1 inside the disk
  return (2.0 / k) * std::atanh(std::min(t, 1.0 - 1e-17));
}

void require_admissible_sides(const ModelSpace& space, double a, double b,
                              double c) {
  if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) {
    throw std::domain_error("negative side length");
  }
  const double tol = 1e-12 * std::max({a, b, c, 1.0});
  if (a > b + c + tol || b > a + c + tol || c > a + b + tol) {
    throw std::domain_error("triangle inequality violated");
  }
  if (space.kappa > 0.0 && a + b + c >= 2.0 * space.diameter()) {
    throw std::domain_error("perimeter not below 2 D_kappa");
  }
}

double side_from_angle(const ModelSpace& space, double a, double b,
                       double gamma) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("side must be positive");
  if (!(gamma >= 0.0 && gamma <= M_PI)) {
    throw std::domain_error("angle outside [0, pi]");
  }
  const double D = space.diameter();
  if (!(a < D && b < D)) throw std::domain_error("side not below D_kappa");

  const double kappa = space.kappa;
  const double sg = std::sin(0.5 * gamma);
  const double scale = std::max(a, b);
  if (kappa == 0.0 || space.effectively_flat(scale * scale)) {
    // c^2 = (a-b)^2 + 4ab sin^2(gamma/2), the stable versine form.
    return std::sqrt((a - b) * (a - b) + 4.0 * a * b * sg * sg);
  }
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    const double h = std::sin(0.5 * k * (a - b));
    double s2 = h * h + std::sin(k * a) * std::sin(k * b) * sg * sg;
    s2 = std::clamp(s2, 0.0, 1.0);
    return (2.0 / k) * std::asin(std::sqrt(s2));
  }
  const double k = std::sqrt(-kappa);
  const double h = std::sinh(0.5 * k * (a - b));
  const double s2 = h * h + std::sinh(k * a) * std::sinh(k * b) * sg * sg;
  return (2.0 / k) * std::asinh(std::sqrt(s2));
}

double angle_from_sides(const ModelSpace& space, double a, double b, double c,
                        bool* degenerate) {
  require_admissible_sides(space, a, b, c);
  if (degenerate) *degenerate = false;
  const double s = 0.5 * (a + b + c);
  const double eps = 1e-14 * std::max({a, b, c, 1.0});
  // Equality cases of the triangle inequality.
  if (s - c <= eps) {
    if (degenerate) *degenerate = true;
    return M_PI;
  }
  if (s - a <= eps || s - b <= eps) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  const double kappa = space.kappa;
  // Half-angle formula: tan^2(C/2) = sn(s-a) sn(s-b) / (sn(s) sn(s-c)),
  // valid uniformly in kappa since scale factors cancel in the ratio.
  const double num = gen_sin(kappa, s - a) * gen_sin(kappa, s - b);
  const double den = gen_sin(kappa, s) * gen_sin(kappa, s - c);
  return 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)),
                          std::sqrt(std::max(den, 0.0)));
}

TriangleData triangle_data(const ModelSpace& space, double a, double b,
                           double c) {
  TriangleData t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.kappa = space.kappa;
  t.alpha = angle_from_sides(space, b, c, a);
  t.beta = angle_from_sides(space, a, c, b);
  t.gamma = angle_from_sides(space, a, b, c);
  t.excess = t.alpha + t.beta + t.gamma - M_PI;
  const double scale = std::max({a, b, c});
  if (space.kappa != 0.0 && !space.effectively_flat(scale * scale)) {
    t.area = t.excess / space.kappa;
  } else {
    // Kahan's stable Heron formula.
    double x = a, y = b, z = c;
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    const double q = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) *
                     (x + (y - z));
    t.area = 0.25 * std::sqrt(std::max(q, 0.0));
    if (space.kappa == 0.0) t.excess = 0.0;
  }
  return t;
}

ProjPoint to_projective_chart(const ModelSpace& space, ChartPoint p) {
  check_chart_point(space, p);
  const double kappa = space.kappa;
  if (kappa == 0.0) return {p.x, p.y};
  const double denom = 1.0 - kappa * norm_sq(p);
  if (kappa > 0.0 && denom <= 0.0) {
    throw std::domain_error("point on or beyond the chart hemisphere");
  }
  return {2.0 * p.x / denom, 2.0 * p.y / denom};
}

ChartPoint from_projective_chart(const ModelSpace& space, ProjPoint u) {
  const double kappa = space.kappa;
  if (kappa == 0.0) return {u.x, u.y};
  const double r2 = u.x * u.x + u.y * u.y;
  const double disc = 1.0 + kappa * r2;
  if (kappa < 0.0 && disc <= 0.0) {
    throw std::domain_error("point outside the Klein disk");
  }
  const double f = 1.0 / (1.0 + std::sqrt(disc));
  return {u.x * f, u.y * f};
}

ChartPoint chart_point_at(const ModelSpace& space, double dist, double theta) {
  const double kappa = space.kappa;
  double rho;
  if (kappa == 0.0 || space.effectively_flat(dist * dist)) {
    rho = 0.5 * dist;
  } else if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    if (dist >= space.diameter()) {
      throw std::domain_error("distance not below D_kappa");
    }
    rho = std::tan(0.5 * k * dist) / k;
  } else {
    const double k = std::sqrt(-kappa);
    rho = std::tanh(0.5 * k * dist) / k;
  }
  return {rho * std::cos(theta), rho * std::sin(theta)};
}

std::array<ChartPoint, 3> place_triangle(const ModelSpace& space, double a,
                                         double b, double c) {
  require_admissible_sides(space, a, b, c);
  const double alpha = angle_from_sides(space, b, c, a);  // angle at p
  ChartPoint p{0.0, 0.0};
  ChartPoint q = chart_point_at(space, c, 0.0);
  ChartPoint r = chart_point_at(space, b, alpha);
  return {p, q, r};
}

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 sphere_embed(double k, ChartPoint p) {
  const double ux = k * p.x, uy = k * p.y;
  const double n2 = ux * ux + uy * uy;
  const double f = 1.0 / (1.0 + n2);
  return {2.0 * ux * f, 2.0 * uy * f, (1.0 - n2) * f};
}

ChartPoint sphere_unembed(double k, Vec3 v) {
  const double f = 1.0 / (1.0 + v.z);
  return {v.x * f / k, v.y * f / k};
}

Vec3 hyper_embed(double k, ChartPoint p) {
  const double ux = k * p.x, uy = k * p.y;
  const double n2 = ux * ux + uy * uy;
  const double f = 1.0 / (1.0 - n2);
  return {2.0 * ux * f, 2.0 * uy * f, (1.0 + n2) * f};
}

ChartPoint hyper_unembed(double k, Vec3 v) {
  const double f = 1.0 / (1.0 + v.z);
  return {v.x * f / k, v.y * f / k};
}

}  // namespace

ChartPoint geodesic_point(const ModelSpace& space, ChartPoint p, ChartPoint q,
                          double s) {
  const double d = distance(space, p, q);
  const double tol = 1e-12 * std::max(d, 1.0);
  if (s < -tol || s > d + tol) {
    throw std::domain_error("arclength outside [0, d(p,q)]");
  }
  if (d <= tol) {
    if (s > tol) throw std::domain_error("p = q but s > 0");
    return p;
  }
  if (space.kappa > 0.0 && d >= space.diameter() - 1e-12) {
    throw std::domain_error("geodesic not unique at distance D_kappa");
  }
  s = std::clamp(s, 0.0, d);
  const double kappa = space.kappa;
  const double scale = std::max(norm_sq(p), norm_sq(q));
  if (kappa == 0.0 || space.effectively_flat(scale)) {
    const double t = s / d;
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
  }
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    const double theta = k * d;  // total angle on the unit sphere
    if (theta < 1e-8) {
      const double t = s / d;
      return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    }
    const Vec3 a = sphere_embed(k, p), b = sphere_embed(k, q);
    const double ct = std::cos(theta), st = std::sin(theta);
    const Vec3 w{(b.x - a.x * ct) / st, (b.y - a.y * ct) / st,
                 (b.z - a.z * ct) / st};
    const double phi = k * s;
    const double cp = std::cos(phi), sp = std::sin(phi);
    return sphere_unembed(k, {a.x * cp + w.x * sp, a.y * cp + w.y * sp,
                              a.z * cp + w.z * sp});
  }
  const double k = std::sqrt(-kappa);
  const double theta = k * d;
  if (theta < 1e-8) {
    const double t = s / d;
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
  }
  const Vec3 a = hyper_embed(k, p), b = hyper_embed(k, q);
  const double ct = std::cosh(theta), st = std::sinh(theta);
  const Vec3 w{(b.x - a.x * ct) / st, (b.y - a.y * ct) / st,
               (b.z - a.z * ct) / st};
  const double phi = k * s;
  const double cp = std::cosh(phi), sp = std::sinh(phi);
  return hyper_unembed(k, {a.x * cp + w.x * sp, a.y * cp + w.y * sp,
                           a.z * cp + w.z * sp});
}

}  // namespace catsurf
