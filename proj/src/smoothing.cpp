#include "catsurf/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "catsurf/polyhedral.hpp"

namespace catsurf::smoothing {

namespace {

constexpr double kShrink = 1.0 - 1e-6;

// Adaptive Simpson with an absolute tolerance on the result.
double simpson(const std::function<double(double)>& f, double a, double fa,
               double m, double fm, double b, double fb, double whole,
               double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, fa, m, fm, b, fb, whole, std::max(tol, 1e-300), 40);
}

bool cat_mode(Mode m) { return m == Mode::Flat || m == Mode::Hyperbolic; }

// Coordinate rescale taking a kappa < -1 cone to the kappa = -1 cone with
// the same angle exponent. Lengths scale by 1/sqrt(|kappa|).
double rescale_exponent(const ConeMetric& c) {
  return std::pow(-c.kappa, 1.0 / (2.0 * c.alpha));
}

bool needs_rescale(const ConeMetric& c, Mode mode) {
  return mode == Mode::Hyperbolic && c.kappa < -1.0;
}

ConeMetric rescaled_cone(const ConeMetric& c) {
  const double s = rescale_exponent(c);
  return ConeMetric{c.alpha, -1.0, c.radius * s};
}

void check_mode(const ConeMetric& c, Mode mode) {
  const bool sharp = c.alpha < 1.0;
  switch (mode) {
    case Mode::Flat:
      if (c.alpha <= 1.0)
        throw std::invalid_argument("flat smoothing needs cone angle > 2*pi");
      if (c.kappa < 0.0)
        throw std::invalid_argument("flat smoothing needs kappa >= 0");
      break;
    case Mode::Hyperbolic:
      if (c.alpha <= 1.0)
        throw std::invalid_argument(
            "hyperbolic smoothing needs cone angle > 2*pi");
      break;
    case Mode::FlatCBB:
      if (!sharp)
        throw std::invalid_argument("CBB smoothing needs cone angle < 2*pi");
      if (c.kappa > 0.0)
        throw std::invalid_argument("flat CBB smoothing needs kappa <= 0");
      break;
    case Mode::SphericalCBB:
      if (!sharp)
        throw std::invalid_argument("CBB smoothing needs cone angle < 2*pi");
      break;
  }
}

// Chart radius where the denominator 1 + kappa r^(2 alpha) vanishes
// (kappa < 0 only).
double chart_limit(const ConeMetric& c) {
  if (c.kappa >= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(-1.0 / c.kappa, 1.0 / (2.0 * c.alpha));
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> r(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
    r[i] = std::exp(la + t * (lb - la));
  }
  r.back() = hi;
  return r;
}

}  // namespace

double cone_factor(const ConeMetric& c, double r) {
  if (!(r > 0.0)) throw std::domain_error("cone_factor: r must be positive");
  const double den = 1.0 + c.kappa * std::pow(r, 2.0 * c.alpha);
  if (den <= 0.0) {
    throw std::domain_error("cone_factor: r outside the conformal chart");
  }
  const double num =
      4.0 * c.alpha * c.alpha * std::pow(r, 2.0 * (c.alpha - 1.0));
  return num / (den * den);
}

double log_deriv(const ConeMetric& c, double r) {
  if (!(r > 0.0)) throw std::domain_error("log_deriv: r must be positive");
  const double p = c.kappa * std::pow(r, 2.0 * c.alpha);
  const double den = 1.0 + p;
  if (den <= 0.0) {
    throw std::domain_error("log_deriv: r outside the conformal chart");
  }
  return (2.0 * (c.alpha - 1.0) - 2.0 * p * (c.alpha + 1.0)) / (r * den);
}

double log_deriv2(const ConeMetric& c, double r) {
  if (!(r > 0.0)) throw std::domain_error("log_deriv2: r must be positive");
  const double p = c.kappa * std::pow(r, 2.0 * c.alpha);
  const double den = 1.0 + p;
  if (den <= 0.0) {
    throw std::domain_error("log_deriv2: r outside the conformal chart");
  }
  const double first = -2.0 * (c.alpha - 1.0) / (r * r);
  const double second = -4.0 * c.alpha * p / (r * r) *
                        ((2.0 * c.alpha - 1.0) - p) / (den * den);
  return first + second;
}

double raw_curvature(const ConeMetric& c, double r) {
  const double lam = cone_factor(c, r);
  return -(log_deriv2(c, r) + log_deriv(c, r) / r) / (2.0 * lam);
}

CutoffEval cutoff(double a, double b, double r) {
  if (!(a < b)) throw std::invalid_argument("cutoff: need a < b");
  if (r <= a) return {0.0, 0.0, 0.0};
  if (r >= b) return {1.0, 0.0, 0.0};
  const double u = r - a, v = b - r;
  // phi = 1 / (1 + e^h) with h = 1/u - 1/v; clamp h so exp stays finite.
  double h = 1.0 / u - 1.0 / v;
  h = std::clamp(h, -700.0, 700.0);
  const double phi = 1.0 / (1.0 + std::exp(h));
  const double h1 = -1.0 / (u * u) - 1.0 / (v * v);
  const double h2 = 2.0 / (u * u * u) - 2.0 / (v * v * v);
  const double w = phi * (1.0 - phi);
  CutoffEval out;
  out.value = phi;
  out.d1 = -h1 * w;
  out.d2 = -h2 * w + h1 * h1 * w * (1.0 - 2.0 * phi);
  return out;
}

SmoothedCone::SmoothedCone(const ConeMetric& c, const SmoothingParams& p)
    : cone_(c), params_(p) {
  check_mode(c, p.mode);
  if (needs_rescale(c, p.mode)) {
    // Work in the kappa = -1 cone; factor/curvature scale back on output.
    cone_ = rescaled_cone(c);
    params_.delta = p.delta * rescale_exponent(c);
  }
  if (!(cone_.radius > 0.0) || cone_.radius >= chart_limit(cone_)) {
    throw std::invalid_argument("cone radius outside the conformal chart");
  }
  if (!(params_.delta > 0.0) || params_.delta >= cone_.radius) {
    throw std::invalid_argument("smoothing delta must lie in (0, R)");
  }
  if ((params_.mode == Mode::Hyperbolic) && params_.delta >= 1.0) {
    throw std::invalid_argument(
        "hyperbolic smoothing needs delta < 1 (Poincare chart)");
  }
  lambda_delta_at_delta_ = cone_factor(cone_, params_.delta);
  const double tail =
      integrate_g(0.5 * params_.delta, params_.delta);
  plateau_log_ = std::log(lambda_delta_at_delta_) - tail;
}

double SmoothedCone::blend_log_deriv(double r) const {
  switch (params_.mode) {
    case Mode::Hyperbolic:
      return 4.0 * r / (1.0 - r * r);
    case Mode::SphericalCBB:
      return -4.0 * r / (1.0 + r * r);
    default:
      return 0.0;
  }
}

double SmoothedCone::blend_log_deriv2(double r) const {
  switch (params_.mode) {
    case Mode::Hyperbolic: {
      const double d = 1.0 - r * r;
      return 4.0 * (1.0 + r * r) / (d * d);
    }
    case Mode::SphericalCBB: {
      const double d = 1.0 + r * r;
      return -4.0 * (1.0 - r * r) / (d * d);
    }
    default:
      return 0.0;
  }
}

double SmoothedCone::g(double r) const {
  const double d = params_.delta;
  if (r >= d) return log_deriv(cone_, r);
  if (r <= 0.5 * d) return blend_log_deriv(r);
  const CutoffEval phi = cutoff(0.5 * d, d, r);
  return log_deriv(cone_, r) * phi.value +
         blend_log_deriv(r) * (1.0 - phi.value);
}

double SmoothedCone::g_prime(double r) const {
  const double d = params_.delta;
  if (r >= d) return log_deriv2(cone_, r);
  if (r <= 0.5 * d) return blend_log_deriv2(r);
  const CutoffEval phi = cutoff(0.5 * d, d, r);
  const double L = log_deriv(cone_, r), Lbar = blend_log_deriv(r);
  return log_deriv2(cone_, r) * phi.value + L * phi.d1 +
         blend_log_deriv2(r) * (1.0 - phi.value) - Lbar * phi.d1;
}

double SmoothedCone::integrate_g(double from, double to) const {
  return integrate([this](double r) { return g(r); }, from, to,
                   params_.quad_tol);
}

double SmoothedCone::factor(double r) const {
  const double d = params_.delta;
  if (!(r >= 0.0)) throw std::domain_error("factor: r must be >= 0");
  if (r >= d) return cone_factor(cone_, r);
  if (r > 0.5 * d) {
    return std::exp(std::log(lambda_delta_at_delta_) - integrate_g(r, d));
  }
  double lg = plateau_log_;
  const double a = 0.5 * d;
  if (params_.mode == Mode::Hyperbolic) {
    lg += 2.0 * std::log((1.0 - a * a) / (1.0 - r * r));
  } else if (params_.mode == Mode::SphericalCBB) {
    lg += 2.0 * std::log((1.0 + a * a) / (1.0 + r * r));
  }
  return std::exp(lg);
}

double SmoothedCone::curvature(double r) const {
  if (!(r > 0.0)) throw std::domain_error("curvature: r must be positive");
  double k = -(g_prime(r) + g(r) / r) / (2.0 * factor(r));
  return k;
}

std::vector<double> SmoothedCone::factor_on_grid(
    const std::vector<double>& r) const {
  const double d = params_.delta;
  std::vector<double> out(r.size());
  double cursor = 0.5 * d;  // integration front inside the blend zone
  double acc = 0.0;         // integral of g from delta/2 to cursor
  const double span = 0.5 * d;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && r[i] < r[i - 1]) {
      throw std::invalid_argument("factor_on_grid: grid must be sorted");
    }
    const double x = r[i];
    if (x >= d) {
      out[i] = cone_factor(cone_, x);
    } else if (x <= 0.5 * d) {
      double lg = plateau_log_;
      if (params_.mode == Mode::Hyperbolic) {
        const double a = 0.5 * d;
        lg += 2.0 * std::log((1.0 - a * a) / (1.0 - x * x));
      } else if (params_.mode == Mode::SphericalCBB) {
        const double a = 0.5 * d;
        lg += 2.0 * std::log((1.0 + a * a) / (1.0 + x * x));
      }
      out[i] = std::exp(lg);
    } else {
      const double tol =
          params_.quad_tol * std::max(1e-3, (x - cursor) / span);
      acc += integrate([this](double t) { return g(t); }, cursor, x, tol);
      cursor = x;
      out[i] = std::exp(plateau_log_ + acc);
    }
  }
  return out;
}

double smoothed_factor(const ConeMetric& c, const SmoothingParams& p,
                       double r) {
  if (needs_rescale(c, p.mode)) {
    const double sc = rescale_exponent(c);
    SmoothingParams pr = p;
    pr.delta = p.delta * sc;
    SmoothedCone s(rescaled_cone(c), pr);
    // lambda(r) = |kappa|^(1/alpha - 1) * lambda_tilde(sc * r)
    return std::pow(-c.kappa, 1.0 / c.alpha - 1.0) * s.factor(sc * r);
  }
  SmoothedCone s(c, p);
  return s.factor(r);
}

double gaussian_curvature(const ConeMetric& c, const SmoothingParams& p,
                          double r) {
  if (needs_rescale(c, p.mode)) {
    const double sc = rescale_exponent(c);
    SmoothingParams pr = p;
    pr.delta = p.delta * sc;
    SmoothedCone s(rescaled_cone(c), pr);
    return -c.kappa * s.curvature(sc * r);
  }
  SmoothedCone s(c, p);
  return s.curvature(r);
}

double admissible_delta(const ConeMetric& c, Mode mode) {
  check_mode(c, mode);
  if (needs_rescale(c, mode)) {
    return admissible_delta(rescaled_cone(c), mode) / rescale_exponent(c);
  }
  const double R = c.radius;
  if (!(R > 0.0)) throw std::invalid_argument("cone radius must be positive");

  switch (mode) {
    case Mode::Flat: {
      // Binding constraints: the log-derivative must stay nonnegative
      // (r <= r*), and lambda(delta) <= 1.
      double bound = std::min(R, chart_limit(c));
      if (c.kappa > 0.0) {
        const double rstar = std::pow(
            (c.alpha - 1.0) / (c.kappa * (c.alpha + 1.0)),
            1.0 / (2.0 * c.alpha));
        bound = std::min(bound, rstar);
      }
      // First radius with lambda >= 1, if any below `bound`.
      double lo = 0.0, hi = bound;
      if (cone_factor(c, bound * kShrink) > 1.0) {
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (lo + hi);
          (cone_factor(c, mid) < 1.0 ? lo : hi) = mid;
        }
        bound = std::min(bound, hi);
      }
      const double delta = bound * kShrink;
      if (!(delta > 0.0)) {
        throw std::domain_error("no admissible smoothing radius");
      }
      return delta;
    }
    case Mode::Hyperbolic: {
      // Largest delta < min(1, R) with log_deriv >= blend log-derivative on
      // (0, delta] and lambda(delta) <= 1, by bisection on the predicate.
      const double cap = std::min({R, 1.0, chart_limit(c)}) * kShrink;
      auto ok = [&](double d) {
        if (cone_factor(c, d) > 1.0) return false;
        for (int i = 1; i <= 2048; ++i) {
          const double r = d * i / 2048.0;
          if (log_deriv(c, r) < 4.0 * r / (1.0 - r * r)) return false;
        }
        return true;
      };
      if (ok(cap)) return cap * kShrink;
      double lo = cap * 1e-9, hi = cap;
      if (!ok(lo)) {
        throw std::domain_error("no admissible smoothing radius");
      }
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      return lo * kShrink;
    }
    case Mode::FlatCBB: {
      double bound = std::min(R, chart_limit(c));
      if (c.kappa < 0.0) {
        const double rstar = std::pow(
            (1.0 - c.alpha) / (-c.kappa * (c.alpha + 1.0)),
            1.0 / (2.0 * c.alpha));
        bound = std::min(bound, rstar);
      }
      return bound * kShrink;
    }
    case Mode::SphericalCBB: {
      // Experimental flipped blend: log_deriv <= spherical log-derivative
      // on (0, delta].
      const double cap = std::min(R, chart_limit(c)) * kShrink;
      auto ok = [&](double d) {
        for (int i = 1; i <= 2048; ++i) {
          const double r = d * i / 2048.0;
          if (log_deriv(c, r) > -4.0 * r / (1.0 + r * r)) return false;
        }
        return true;
      };
      if (ok(cap)) return cap * kShrink;
      double lo = cap * 1e-9, hi = cap;
      if (!ok(lo)) {
        throw std::domain_error("no admissible smoothing radius");
      }
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      return lo * kShrink;
    }
  }
  throw std::logic_error("unreachable");
}

CertifyRecord certify(const ConeMetric& c, const SmoothingParams& p,
                      std::size_t grid_n) {
  if (grid_n < 16) throw std::invalid_argument("certify: grid too small");
  CertifyRecord rec;
  rec.experimental = (p.mode == Mode::SphericalCBB);

  // Work in the rescaled cone for kappa < -1; excesses scale by |kappa|.
  ConeMetric cone = c;
  SmoothingParams params = p;
  double excess_scale = 1.0;
  if (needs_rescale(c, p.mode)) {
    rec.rescale = rescale_exponent(c);
    cone = rescaled_cone(c);
    params.delta = p.delta * rec.rescale;
    excess_scale = -c.kappa;
  }
  SmoothedCone s(cone, params);
  const double d = params.delta;

  const std::vector<double> r = log_grid(1e-6 * d, cone.radius, grid_n);
  const std::vector<double> lam = s.factor_on_grid(r);
  rec.grid_points = r.size();

  const bool cat = cat_mode(p.mode);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double k = -(s.g_prime(r[i]) + s.g(r[i]) / r[i]) / (2.0 * lam[i]);
    const double ex = cat ? (k - cone.kappa) : (cone.kappa - k);
    worst = std::max(worst, ex);
  }
  rec.max_excess_curvature = worst * excess_scale;

  // Monotone toward the tail: nondecreasing for spread cones (alpha > 1),
  // nonincreasing for sharp ones.
  const double dir = cone.alpha > 1.0 ? 1.0 : -1.0;
  rec.monotone_ok = true;
  for (std::size_t i = 1; i < r.size() && r[i] <= d; ++i) {
    if (dir * (lam[i] - lam[i - 1]) < -1e-12 * std::max(lam[i], lam[i - 1])) {
      rec.monotone_ok = false;
      break;
    }
  }

  // The tail is the untouched cone factor.
  double tail = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < d) continue;
    tail = std::max(tail, std::abs(lam[i] - cone_factor(cone, r[i])) /
                              cone_factor(cone, r[i]));
  }
  rec.tail_match = tail;

  // Junction regularity at delta and delta/2: relative value mismatch and
  // log-derivative mismatch across each junction.
  double jump = 0.0;
  for (double x : {0.5 * d, d}) {
    const double h = 1e-7 * d;
    const double lo = s.factor(x - h), hi = s.factor(x + h);
    const double drift = std::abs(s.g(x)) * 2.0 * h;  // expected variation
    jump = std::max(jump, std::abs(hi - lo) / std::max(lo, hi) - drift);
    jump = std::max(jump, std::abs(s.g(x + h) - s.g(x - h)) * d /
                              std::max(1.0, std::abs(s.g(x)) * d));
  }
  rec.junction_jump = std::max(jump, 0.0);
  return rec;
}

CapGeometry cap_geometry(const ConeMetric& c, const SmoothingParams& p) {
  ConeMetric cone = c;
  SmoothingParams params = p;
  double len_scale = 1.0;  // original length = len_scale * rescaled length
  if (needs_rescale(c, p.mode)) {
    const double sc = rescale_exponent(c);
    cone = rescaled_cone(c);
    params.delta = p.delta * sc;
    len_scale = 1.0 / std::sqrt(-c.kappa);
  }
  SmoothedCone s(cone, params);
  const double d = params.delta;
  const double a = 0.5 * d;

  // Inner disk (0, delta/2]: closed form per blend target.
  double area, diam;
  const double plateau = s.factor(a);
  if (params.mode == Mode::Hyperbolic) {
    const double C = plateau * (1.0 - a * a) * (1.0 - a * a) / 4.0;
    area = 2.0 * M_PI * C * (2.0 / (1.0 - a * a) - 2.0);
    diam = 2.0 * std::sqrt(C) * 2.0 * std::atanh(a);
  } else if (params.mode == Mode::SphericalCBB) {
    const double C = plateau * (1.0 + a * a) * (1.0 + a * a) / 4.0;
    area = 2.0 * M_PI * C * (2.0 - 2.0 / (1.0 + a * a));
    diam = 2.0 * std::sqrt(C) * 2.0 * std::atan(a);
  } else {
    area = 2.0 * M_PI * plateau * 0.5 * a * a;
    diam = 2.0 * std::sqrt(plateau) * a;
  }

  // Blend zone [delta/2, delta]: composite Simpson on cached factor values.
  const std::size_t panels = 256;
  std::vector<double> grid(2 * panels + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = a + (d - a) * static_cast<double>(i) / (grid.size() - 1);
  }
  const std::vector<double> lam = s.factor_on_grid(grid);
  const double h = (d - a) / (2.0 * panels);
  double ia = 0.0, id = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const std::size_t j = 2 * k;
    ia += h / 3.0 *
          (lam[j] * grid[j] + 4.0 * lam[j + 1] * grid[j + 1] +
           lam[j + 2] * grid[j + 2]);
    id += h / 3.0 *
          (std::sqrt(lam[j]) + 4.0 * std::sqrt(lam[j + 1]) +
           std::sqrt(lam[j + 2]));
  }
  area += 2.0 * M_PI * ia;
  diam += 2.0 * id;

  CapGeometry out;
  out.area = area * len_scale * len_scale;
  out.diameter = diam * len_scale;
  return out;
}

double radial_distance(const ConeMetric& c, double r) {
  if (!(r >= 0.0)) throw std::domain_error("radial_distance: r must be >= 0");
  const double u = std::pow(r, c.alpha);
  if (c.kappa > 0.0) {
    const double k = std::sqrt(c.kappa);
    return 2.0 / k * std::atan(k * u);
  }
  if (c.kappa < 0.0) {
    const double k = std::sqrt(-c.kappa);
    if (k * u >= 1.0) {
      throw std::domain_error("radial_distance: r outside the chart");
    }
    return 2.0 / k * std::atanh(k * u);
  }
  return 2.0 * u;
}

double radial_coordinate(const ConeMetric& c, double dist) {
  if (!(dist >= 0.0)) {
    throw std::domain_error("radial_coordinate: distance must be >= 0");
  }
  double u;
  if (c.kappa > 0.0) {
    const double k = std::sqrt(c.kappa);
    if (dist >= M_PI / k) {
      throw std::domain_error("radial_coordinate: distance beyond the pole");
    }
    u = std::tan(0.5 * k * dist) / k;
  } else if (c.kappa < 0.0) {
    const double k = std::sqrt(-c.kappa);
    u = std::tanh(0.5 * k * dist) / k;
  } else {
    u = 0.5 * dist;
  }
  return std::pow(u, 1.0 / c.alpha);
}

SurfacePlan plan_surface_smoothing(const PolySurface& surface, double epsilon,
                                   Mode mode) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  SurfacePlan plan;
  plan.epsilon = epsilon;
  int index = 0;
  for (int v : surface.vertices()) {
    const double angle = cone_angle(surface, v);
    const double alpha = angle / (2.0 * M_PI);
    if (std::abs(alpha - 1.0) <= 1e-12) continue;  // smooth vertex

    double kappa = 0.0;
    bool first = true;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& [key, info] : surface.edges()) {
      if (key.first != v && key.second != v) continue;
      nearest = std::min(nearest, info.length);
      for (std::size_t f : info.faces) {
        const double fk = surface.faces()[f].kappa;
        if (first) {
          kappa = fk;
          first = false;
        } else if (fk != kappa) {
          std::ostringstream msg;
          msg << "vertex " << v << ": mixed face curvatures";
          throw std::invalid_argument(msg.str());
        }
      }
    }

    const double budget = epsilon * std::pow(2.0, -index);
    const double r_i = 0.5 * std::min(budget, 0.5 * nearest);

    ConeMetric cone;
    cone.alpha = alpha;
    cone.kappa = kappa;
    cone.radius = radial_coordinate(cone, r_i);

    SmoothingParams params;
    params.mode = mode;
    params.delta = admissible_delta(cone, mode);

    VertexPlan vp;
    vp.vertex = v;
    vp.alpha = alpha;
    vp.kappa = kappa;
    vp.r_budget = r_i;
    vp.mode = mode;

    // Shrink delta until the cap fits the budget and certifies.
    bool done = false;
    for (int tries = 0; tries < 60; ++tries) {
      const CapGeometry cap = cap_geometry(cone, params);
      if (cap.area <= budget && cap.diameter <= budget) {
        const CertifyRecord rec = certify(cone, params, 2000);
        if (rec.max_excess_curvature <= 1e-6) {
          vp.delta = params.delta;
          vp.certificate = rec;
          vp.cap = cap;
          done = true;
          break;
        }
      }
      params.delta *= 0.5;
    }
    if (!done) {
      std::ostringstream msg;
      msg << "vertex " << v << ": could not certify a smoothing radius";
      throw std::runtime_error(msg.str());
    }
    plan.vertices.push_back(vp);
    ++index;
  }
  return plan;
}

RadialProfile raw_profile(const ConeMetric& c, std::size_t n) {
  if (n < 2) throw std::invalid_argument("profile needs at least 2 points");
  RadialProfile out;
  out.provenance = "raw-cone";
  out.r = log_grid(1e-4 * c.radius, c.radius, n);
  out.lambda.reserve(n);
  out.curvature.reserve(n);
  for (double r : out.r) {
    out.lambda.push_back(cone_factor(c, r));
    out.curvature.push_back(raw_curvature(c, r));
  }
  return out;
}

RadialProfile smoothed_profile(const ConeMetric& c, const SmoothingParams& p,
                               std::size_t n) {
  if (n < 2) throw std::invalid_argument("profile needs at least 2 points");
  RadialProfile out;
  out.provenance = "smoothed";

  ConeMetric cone = c;
  SmoothingParams params = p;
  double len = 1.0, curv = 1.0;
  if (needs_rescale(c, p.mode)) {
    const double sc = rescale_exponent(c);
    cone = rescaled_cone(c);
    params.delta = p.delta * sc;
    len = sc;
    curv = -c.kappa;
  }
  SmoothedCone s(cone, params);
  const std::vector<double> grid =
      log_grid(1e-4 * params.delta, cone.radius, n);
  const std::vector<double> lam = s.factor_on_grid(grid);
  const double fac_scale =
      needs_rescale(c, p.mode) ? std::pow(-c.kappa, 1.0 / c.alpha - 1.0) : 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.r.push_back(grid[i] / len);
    out.lambda.push_back(lam[i] * fac_scale);
    out.curvature.push_back(
        curv * -(s.g_prime(grid[i]) + s.g(grid[i]) / grid[i]) /
        (2.0 * lam[i]));
  }
  return out;
}

}  // namespace catsurf::smoothing
