#pragma once

#include <array>
#include <cmath>
#include <random>

#include "catsurf/model_space.hpp"

namespace testhelp {

// Random side triple satisfying the strict triangle inequality and the
// perimeter bound of the given model space, with sides in [lo, hi].
inline std::array<double, 3> random_sides(std::mt19937_64& rng,
                                          const catsurf::ModelSpace& space,
                                          double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const double peri = a + b + c;
    const double slack = 1e-3 * peri;
    if (a + b <= c + slack || b + c <= a + slack || a + c <= b + slack) {
      continue;
    }
    if (space.kappa > 0.0 && peri >= 2.0 * space.diameter() - slack) continue;
    return {a, b, c};
  }
}

// Spherical excess from sides only (l'Huilier), for unit curvature scaled
// to general kappa > 0. Independent of the angle computations under test.
inline double lhuilier_excess(double kappa, double a, double b, double c) {
  const double k = std::sqrt(kappa);
  const double s = 0.5 * (a + b + c);
  const double t = std::tan(0.5 * k * s) * std::tan(0.5 * k * (s - a)) *
                   std::tan(0.5 * k * (s - b)) * std::tan(0.5 * k * (s - c));
  return 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
}

}  // namespace testhelp
