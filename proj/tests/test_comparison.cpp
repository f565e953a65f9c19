#include <cmath>
#include <random>

#include "doctest.h"

#include "catsurf/comparison.hpp"
#include "test_helpers.hpp"

using namespace catsurf;

TEST_CASE("model triangles pass their own CAT test") {
  std::mt19937_64 rng(5);
  for (double kappa : {-1.0, 0.0, 0.5, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 10; ++i) {
      const auto [a, b, c] = testhelp::random_sides(rng, space, 0.2, 1.0);
      const AbstractTriangle t = model_triangle(space, a, b, c);
      const ViolationReport rep = cat_test(t, kappa);
      CHECK(rep.max_violation <= 1e-9);
      CHECK(rep.samples_used > 0);
    }
  }
}

TEST_CASE("CAT test calibration cases") {
  // A fat spherical triangle is not CAT(0): its boundary points are farther
  // apart than in the flat comparison triangle with the same sides.
  const AbstractTriangle sph = model_triangle(ModelSpace{1.0}, 0.8, 0.8, 0.8);
  CHECK(cat_test(sph, 0.0).max_violation > 0.0);
  // Any Euclidean triangle is CAT(1) at this scale.
  const AbstractTriangle euc = model_triangle(ModelSpace{0.0}, 0.3, 0.4, 0.5);
  CHECK(cat_test(euc, 1.0).max_violation <= 0.0);
}

TEST_CASE("curvature monotonicity of cross-side distances") {
  // Lower-curvature realizations of the same side lengths are thinner.
  const AbstractTriangle hyp = model_triangle(ModelSpace{-1.0}, 0.9, 0.8, 0.7);
  CHECK(cat_test(hyp, 0.0).max_violation <= 1e-12);
  CHECK(cat_test(hyp, 1.0).max_violation <= 1e-12);
}

TEST_CASE("model_angle agrees with angle_from_sides") {
  std::mt19937_64 rng(17);
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 100; ++i) {
      const auto [a, b, c] = testhelp::random_sides(rng, space, 0.1, 0.9);
      // Angle at p between [pq] (length c) and [pr] (length b), opposite a.
      CHECK(model_angle(kappa, c, b, a) ==
            doctest::Approx(angle_from_sides(space, b, c, a)).epsilon(1e-11));
    }
  }
}

TEST_CASE("upper angle estimate recovers model angles") {
  std::mt19937_64 rng(29);
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 25; ++i) {
      const auto [a, b, c] = testhelp::random_sides(rng, space, 0.2, 0.8);
      const auto [p, q, r] = place_triangle(space, a, b, c);
      const double expected = angle_from_sides(space, b, c, a);
      CHECK(upper_angle_estimate(space, p, q, r) ==
            doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("excess helpers") {
  const TriangleData t = triangle_data(ModelSpace{1.0}, 0.5, 0.5, 0.5);
  CHECK(excess(t) == doctest::Approx(t.alpha + t.beta + t.gamma - M_PI));
  CHECK(family_excess({t, t}) == doctest::Approx(2.0 * excess(t)));
}

TEST_CASE("canonical distortion shrinks toward 1 with the triangle") {
  const ModelSpace sph{1.0};
  double prev = 1e9;
  for (double peri : {0.3, 0.1, 0.03}) {
    const AbstractTriangle t =
        model_triangle(sph, peri / 3, peri / 3, peri / 3);
    const DistortionReport rep = canonical_distortion(t);
    CHECK(rep.bilipschitz_estimate >= 1.0);
    CHECK(rep.bilipschitz_estimate < prev);
    prev = rep.bilipschitz_estimate;
  }
  CHECK(prev <= 1.01);
}

TEST_CASE("subdividing preserves excess and does not grow model area") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uc(-0.3, 0.3);
  std::uniform_real_distribution<double> ut(0.15, 0.85);
  const double target = 1.0;
  for (double ambient_kappa : {-1.0, 0.0, 0.5}) {
    const ModelSpace amb{ambient_kappa};
    for (int i = 0; i < 60; ++i) {
      const ChartPoint p{uc(rng), uc(rng)}, q{uc(rng), uc(rng)},
          r{uc(rng), uc(rng)};
      const double qr = distance(amb, q, r);
      if (qr < 0.05) continue;
      if (distance(amb, p, q) < 0.05 || distance(amb, p, r) < 0.05) continue;
      const ChartPoint s = geodesic_point(amb, q, r, ut(rng) * qr);
      const SubdivisionCheck sc = subdivision_check(amb, p, q, r, s, target);
      CHECK(sc.excess_children_sum >= sc.excess_parent - 1e-9);
      CHECK(sc.model_area_children_sum <= sc.model_area_parent + 1e-9);
    }
  }
}

TEST_CASE("subdivision equality branch at matching curvature") {
  const ModelSpace amb{1.0};
  const ChartPoint p{0.0, 0.0}, q{0.3, 0.0}, r{0.05, 0.32};
  const ChartPoint s = geodesic_point(amb, q, r, 0.4 * distance(amb, q, r));
  const SubdivisionCheck sc = subdivision_check(amb, p, q, r, s, 1.0);
  CHECK(sc.excess_children_sum ==
        doctest::Approx(sc.excess_parent).epsilon(1e-10));
  CHECK(sc.model_area_children_sum ==
        doctest::Approx(sc.model_area_parent).epsilon(1e-10));
}

TEST_CASE("comparison children fit inside the comparison parent") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> uc(-0.25, 0.25);
  std::uniform_real_distribution<double> ut(0.2, 0.8);
  const double target = 1.0;
  for (double ambient_kappa : {-1.0, 0.0}) {
    const ModelSpace amb{ambient_kappa};
    int done = 0;
    for (int i = 0; i < 200 && done < 30; ++i) {
      const ChartPoint p{uc(rng), uc(rng)}, q{uc(rng), uc(rng)},
          r{uc(rng), uc(rng)};
      const double qr = distance(amb, q, r);
      if (qr < 0.1) continue;
      if (distance(amb, p, q) < 0.1 || distance(amb, p, r) < 0.1) continue;
      const ChartPoint s = geodesic_point(amb, q, r, ut(rng) * qr);
      const std::array<double, 3> parent = {distance(amb, p, q), qr,
                                            distance(amb, r, p)};
      const std::array<double, 3> child1 = {distance(amb, p, s),
                                            distance(amb, s, q), parent[0]};
      const std::array<double, 3> child2 = {distance(amb, p, s),
                                            distance(amb, s, r), parent[2]};
      const FitResult fit =
          fit_comparison_children(target, parent, child1, child2);
      CHECK(fit.contained);
      ++done;
    }
    CHECK(done == 30);
  }
}
