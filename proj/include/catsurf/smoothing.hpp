#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace catsurf {
class PolySurface;
}

namespace catsurf::smoothing {

// Cone metric around a vertex in polar coordinates:
//   ds^2 = lambda(r) (dr^2 + r^2 dtheta^2),
//   lambda(r) = 4 a^2 r^(2(a-1)) / (1 + kappa r^(2a))^2,
// where a = total angle / (2 pi).
struct ConeMetric {
  double alpha = 1.0;
  double kappa = 0.0;
  double radius = 1.0;  // validity radius R of the polar chart

  bool conical() const { return std::abs(alpha - 1.0) > 1e-12; }
};

enum class Mode {
  Flat,          // interpolate with a flat metric (kappa >= 0, alpha > 1)
  Hyperbolic,    // interpolate with the hyperbolic metric (alpha > 1)
  FlatCBB,       // curvature bounded below: alpha < 1, kappa <= 0
  SphericalCBB,  // experimental: blend with the spherical model factor
};

struct SmoothingParams {
  double delta = 0.0;
  Mode mode = Mode::Flat;
  double quad_tol = 1e-10;
};

struct RadialProfile {
  std::vector<double> r;
  std::vector<double> lambda;
  std::vector<double> curvature;
  std::string provenance;  // "raw-cone" or "smoothed"
};

double cone_factor(const ConeMetric& c, double r);
// First and second derivative of log(lambda).
double log_deriv(const ConeMetric& c, double r);
double log_deriv2(const ConeMetric& c, double r);
// Raw-cone Gaussian curvature away from the vertex.
double raw_curvature(const ConeMetric& c, double r);

// Smooth cutoff: 0 on (-inf, a], 1 on [b, inf), exponential quotient in
// between. Value and first two derivatives.
struct CutoffEval {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
CutoffEval cutoff(double a, double b, double r);

// Largest safe delta for the given mode (slightly shrunk from the binding
// constraint). Throws if no admissible delta exists.
double admissible_delta(const ConeMetric& c, Mode mode);

// Evaluator for the smoothed conformal factor lambda_delta and its
// curvature. Caches the junction constants; evaluation below delta uses
// adaptive quadrature of g_delta.
class SmoothedCone {
 public:
  SmoothedCone(const ConeMetric& c, const SmoothingParams& p);

  double factor(double r) const;     // lambda_delta(r)
  double g(double r) const;          // g_delta(r)
  double g_prime(double r) const;    // analytic derivative of g_delta
  double curvature(double r) const;  // K_delta(r)

  // lambda_delta on a sorted grid via incremental quadrature (fast path).
  std::vector<double> factor_on_grid(const std::vector<double>& r) const;

  const ConeMetric& cone() const { return cone_; }
  const SmoothingParams& params() const { return params_; }

 private:
  double blend_log_deriv(double r) const;   // log-derivative of the blend target
  double blend_log_deriv2(double r) const;
  double integrate_g(double from, double to) const;

  ConeMetric cone_;
  SmoothingParams params_;
  double lambda_delta_at_delta_ = 0.0;  // lambda(delta)
  double plateau_log_ = 0.0;            // log lambda_delta(delta/2)
};

double smoothed_factor(const ConeMetric& c, const SmoothingParams& p,
                       double r);
double gaussian_curvature(const ConeMetric& c, const SmoothingParams& p,
                          double r);

struct CertifyRecord {
  double max_excess_curvature = 0.0;  // max(K - kappa) (CAT) or max(kappa - K)
  bool monotone_ok = false;
  double tail_match = 0.0;       // max |lambda_delta - lambda| for r >= delta
  double junction_jump = 0.0;    // worst value/derivative jump at delta, delta/2
  double rescale = 1.0;          // length rescale applied (hyperbolic, kappa < -1)
  bool experimental = false;     // spherical-CBB blend
  std::size_t grid_points = 0;
};

CertifyRecord certify(const ConeMetric& c, const SmoothingParams& p,
                      std::size_t grid_n);

struct CapGeometry {
  double area = 0.0;      // 2 pi * int_0^delta lambda_delta(r) r dr
  double diameter = 0.0;  // 2 * int_0^delta sqrt(lambda_delta(r)) dr
};

CapGeometry cap_geometry(const ConeMetric& c, const SmoothingParams& p);

// Intrinsic radial distance from the cone vertex to coordinate radius r
// (closed form), and its inverse.
double radial_distance(const ConeMetric& c, double r);
double radial_coordinate(const ConeMetric& c, double dist);

struct VertexPlan {
  int vertex = 0;
  double alpha = 0.0;
  double kappa = 0.0;
  double r_budget = 0.0;  // intrinsic radius budget r_i
  double delta = 0.0;
  Mode mode = Mode::Flat;
  CertifyRecord certificate;
  CapGeometry cap;
};

struct SurfacePlan {
  std::vector<VertexPlan> vertices;
  double epsilon = 0.0;
};

// Per-vertex smoothing plan for a polyhedral surface: radius budgets
// r_i <= epsilon 2^-i, admissible deltas with cap size within budget, and a
// certificate per conical vertex.
SurfacePlan plan_surface_smoothing(const PolySurface& surface, double epsilon,
                                   Mode mode);

RadialProfile raw_profile(const ConeMetric& c, std::size_t n);
RadialProfile smoothed_profile(const ConeMetric& c, const SmoothingParams& p,
                               std::size_t n);

}  // namespace catsurf::smoothing
