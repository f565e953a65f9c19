#include <cmath>
#include <random>

#include "doctest.h"

#include "catsurf/model_space.hpp"
#include "test_helpers.hpp"

using namespace catsurf;

TEST_CASE("radial distances match the closed forms") {
  // Along a chart radius the length element integrates in closed form:
  // 2*atan(k r)/k on the sphere, 2*atanh(k r)/k in the hyperbolic disk.
  const ChartPoint o{0, 0};
  CHECK(distance(ModelSpace{1.0}, o, ChartPoint{0.5, 0}) ==
        doctest::Approx(2.0 * std::atan(0.5)).epsilon(1e-14));
  CHECK(distance(ModelSpace{-1.0}, o, ChartPoint{0.5, 0}) ==
        doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-14));
  CHECK(distance(ModelSpace{0.0}, o, ChartPoint{0.5, 0}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // kappa = 4 halves all lengths relative to kappa = 1 at half the chart
  // coordinate.
  CHECK(distance(ModelSpace{4.0}, o, ChartPoint{0.25, 0}) ==
        doctest::Approx(std::atan(0.5)).epsilon(1e-14));
}

TEST_CASE("distance against straight-chart quadrature in the hyperbolic disk") {
  // Oracle: numeric line integral of 2/(1 - |z|^2)... the conformal factor
  // here is 2/(1 + kappa |z|^2) with kappa = -1, along the geodesic. For a
  // radial segment the geodesic is the chart segment, so composite Simpson
  // along it is an independent check.
  const ModelSpace h{-1.0};
  const ChartPoint p{0.1, 0.0}, q{0.7, 0.0};
  const int n = 2000;
  double acc = 0.0;
  auto f = [](double x) { return 2.0 / (1.0 - x * x); };
  const double hstep = (q.x - p.x) / n;
  for (int i = 0; i < n; ++i) {
    const double a = p.x + i * hstep;
    acc += hstep / 6.0 *
           (f(a) + 4.0 * f(a + 0.5 * hstep) + f(a + hstep));
  }
  CHECK(distance(h, p, q) == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("distance basics") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (double kappa : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 200; ++i) {
      const ChartPoint a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
      const double ab = distance(space, a, b);
      CHECK(ab == doctest::Approx(distance(space, b, a)).epsilon(1e-15));
      CHECK(distance(space, a, a) == 0.0);
      CHECK(ab <= distance(space, a, c) + distance(space, c, b) + 1e-12);
    }
  }
}

TEST_CASE("antipodal cap on the sphere") {
  const ModelSpace sph{1.0};
  // Chart infinity is the antipode of the origin; far points approach D.
  const double d = distance(sph, ChartPoint{0, 0}, ChartPoint{1e8, 0});
  CHECK(d <= sph.diameter());
  CHECK(d == doctest::Approx(sph.diameter()).epsilon(1e-7));
}

TEST_CASE("spherical and hyperbolic laws of cosines as oracles") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> us(0.1, 1.2);
  std::uniform_real_distribution<double> ug(0.2, M_PI - 0.2);
  for (int i = 0; i < 300; ++i) {
    const double a = us(rng), b = us(rng), g = ug(rng);
    const double cs = side_from_angle(ModelSpace{1.0}, a, b, g);
    const double oracle_s = std::acos(std::cos(a) * std::cos(b) +
                                      std::sin(a) * std::sin(b) * std::cos(g));
    CHECK(cs == doctest::Approx(oracle_s).epsilon(1e-11));
    const double ch = side_from_angle(ModelSpace{-1.0}, a, b, g);
    const double oracle_h = std::acosh(
        std::cosh(a) * std::cosh(b) - std::sinh(a) * std::sinh(b) * std::cos(g));
    CHECK(ch == doctest::Approx(oracle_h).epsilon(1e-11));
    const double ce = side_from_angle(ModelSpace{0.0}, a, b, g);
    const double oracle_e =
        std::sqrt(a * a + b * b - 2.0 * a * b * std::cos(g));
    CHECK(ce == doctest::Approx(oracle_e).epsilon(1e-12));
  }
}

TEST_CASE("angle_from_sides inverts side_from_angle") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> us(0.05, 1.0);
  std::uniform_real_distribution<double> ug(0.1, M_PI - 0.1);
  for (double kappa : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 200; ++i) {
      const double a = us(rng), b = us(rng), g = ug(rng);
      const double c = side_from_angle(space, a, b, g);
      CHECK(angle_from_sides(space, a, b, c) ==
            doctest::Approx(g).epsilon(1e-9));
    }
  }
}

TEST_CASE("3-4-5 right angle and degenerate flags") {
  const ModelSpace flat{0.0};
  CHECK(angle_from_sides(flat, 0.3, 0.4, 0.5) ==
        doctest::Approx(0.5 * M_PI).epsilon(1e-13));
  bool degenerate = false;
  const double ang = angle_from_sides(flat, 0.2, 0.3, 0.5, &degenerate);
  CHECK(degenerate);
  CHECK(ang == doctest::Approx(M_PI));
}

TEST_CASE("octant triangle data is exact") {
  const TriangleData t =
      triangle_data(ModelSpace{1.0}, 0.5 * M_PI, 0.5 * M_PI, 0.5 * M_PI);
  CHECK(std::abs(t.alpha - 0.5 * M_PI) <= 1e-12);
  CHECK(std::abs(t.beta - 0.5 * M_PI) <= 1e-12);
  CHECK(std::abs(t.gamma - 0.5 * M_PI) <= 1e-12);
  CHECK(std::abs(t.excess - 0.5 * M_PI) <= 1e-12);
  CHECK(std::abs(t.area - 0.5 * M_PI) <= 1e-12);
}

TEST_CASE("spherical excess against l'Huilier's side-only formula") {
  std::mt19937_64 rng(41);
  const ModelSpace sph{1.0};
  for (int i = 0; i < 300; ++i) {
    const auto [a, b, c] = testhelp::random_sides(rng, sph, 0.05, 1.2);
    const TriangleData t = triangle_data(sph, a, b, c);
    CHECK(t.excess ==
          doctest::Approx(testhelp::lhuilier_excess(1.0, a, b, c))
              .epsilon(1e-10));
  }
}

TEST_CASE("small-triangle area approaches Heron") {
  const ModelSpace sph{1.0};
  const TriangleData t = triangle_data(sph, 3e-3, 4e-3, 5e-3);
  CHECK(t.area == doctest::Approx(0.5 * 3e-3 * 4e-3).epsilon(1e-5));
  const ModelSpace hyp{-1.0};
  const TriangleData th = triangle_data(hyp, 3e-3, 4e-3, 5e-3);
  CHECK(th.area == doctest::Approx(0.5 * 3e-3 * 4e-3).epsilon(1e-5));
}

TEST_CASE("projective chart round trip and geodesic straightness") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 100; ++i) {
      const ChartPoint p{u(rng), u(rng)};
      const ChartPoint back =
          from_projective_chart(space, to_projective_chart(space, p));
      CHECK(back.x == doctest::Approx(p.x).epsilon(1e-12));
      CHECK(back.y == doctest::Approx(p.y).epsilon(1e-12));

      // Midpoints of projective segments are on the geodesic: distances add.
      const ChartPoint q{u(rng), u(rng)};
      const ProjPoint up = to_projective_chart(space, p);
      const ProjPoint uq = to_projective_chart(space, q);
      const ChartPoint m = from_projective_chart(
          space, ProjPoint{0.5 * (up.x + uq.x), 0.5 * (up.y + uq.y)});
      const double err = distance(space, p, m) + distance(space, m, q) -
                         distance(space, p, q);
      CHECK(std::abs(err) <= 1e-11);
    }
  }
}

TEST_CASE("geodesic_point parameterizes by arclength") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (double kappa : {-1.0, -0.2, 0.0, 0.4, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 60; ++i) {
      const ChartPoint p{u(rng), u(rng)}, q{u(rng), u(rng)};
      const double d = distance(space, p, q);
      if (d < 1e-6) continue;
      for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const ChartPoint m = geodesic_point(space, p, q, t * d);
        CHECK(distance(space, p, m) == doctest::Approx(t * d).epsilon(1e-10));
        CHECK(distance(space, m, q) ==
              doctest::Approx((1.0 - t) * d).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("chart_point_at and place_triangle are metrically consistent") {
  std::mt19937_64 rng(79);
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const ModelSpace space{kappa};
    for (int i = 0; i < 100; ++i) {
      const auto [a, b, c] = testhelp::random_sides(rng, space, 0.1, 0.9);
      const auto [p, q, r] = place_triangle(space, a, b, c);
      CHECK(distance(space, p, q) == doctest::Approx(c).epsilon(1e-11));
      CHECK(distance(space, p, r) == doctest::Approx(b).epsilon(1e-11));
      CHECK(distance(space, q, r) == doctest::Approx(a).epsilon(1e-10));
    }
    const ChartPoint z = chart_point_at(space, 0.7, 1.1);
    CHECK(distance(space, ChartPoint{0, 0}, z) ==
          doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("require_admissible_sides rejects bad triples") {
  CHECK_THROWS_AS(require_admissible_sides(ModelSpace{0.0}, 1.0, 1.0, 3.0),
                  std::domain_error);
  // Perimeter cap at 2 D_kappa on the sphere.
  CHECK_THROWS_AS(
      require_admissible_sides(ModelSpace{1.0}, 2.5, 2.5, 1.5),
      std::domain_error);
  CHECK_NOTHROW(require_admissible_sides(ModelSpace{1.0}, 1.0, 1.0, 1.0));
}

TEST_CASE("model diameter") {
  CHECK(ModelSpace{1.0}.diameter() == doctest::Approx(M_PI));
  CHECK(ModelSpace{4.0}.diameter() == doctest::Approx(0.5 * M_PI));
  CHECK(std::isinf(ModelSpace{0.0}.diameter()));
  CHECK(std::isinf(ModelSpace{-1.0}.diameter()));
}
