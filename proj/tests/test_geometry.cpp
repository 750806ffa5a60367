#include <cmath>
#include <random>

#include "doctest.h"
#include "sslo/convex_geometry.hpp"

using namespace sslo::geometry;

TEST_CASE("unit ball volumes and sphere areas") {
  CHECK(unit_ball_volume(0) == 1.0);
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("gauges and volumes of the standard bodies") {
  const std::vector<double> x{0.3, -0.4};
  CHECK(ConvexBody::ball(2, 1.0).gauge(x) == doctest::Approx(0.5));
  CHECK(ConvexBody::cube(2, 0.5).gauge(x) == doctest::Approx(0.8));
  CHECK(ConvexBody::l1_ball(2, 1.0).gauge(x) == doctest::Approx(0.7));
  CHECK(ConvexBody::ellipsoid({1.0, 0.5}).gauge(x) == doctest::Approx(std::hypot(0.3, 0.8)));
  CHECK(ConvexBody::l1_ball(2, 1.0).volume() == doctest::Approx(2.0));
  CHECK(ConvexBody::cube(3, 0.5).volume(4.0) == doctest::Approx(64.0));
  CHECK(ConvexBody::ellipsoid({1.0, 0.5}).volume() == doctest::Approx(M_PI / 2));
  CHECK(ConvexBody::cube(2, 1.0).within_unit_ball() == false);
  CHECK(ConvexBody::cube(2, 0.7).within_unit_ball());
}

TEST_CASE("oracle body matches the closed-form ball") {
  const auto member = [](std::span<const double> p) { return p[0] * p[0] + p[1] * p[1] <= 1.0; };
  const auto K = ConvexBody::oracle(2, member, {1.0, 1.0}, M_PI);
  const auto B = ConvexBody::ball(2, 1.0);
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x{u(g), u(g)};
    CHECK(K.gauge(x) == doctest::Approx(B.gauge(x)).epsilon(1e-9));
  }
}

TEST_CASE("json round trip and schema diagnostics") {
  const auto K = ConvexBody::from_json({{"kind", "ellipsoid"}, {"radii", {0.5, 0.25}}}, 2);
  CHECK(ConvexBody::from_json(K.to_json(), 2).volume() == doctest::Approx(K.volume()));
  CHECK_THROWS_AS(ConvexBody::from_json({{"kind", "torus"}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(ConvexBody::from_json({{"kind", "ball"}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(ConvexBody::from_json({{"kind", "ellipsoid"}, {"radii", {1.0}}}, 2), std::invalid_argument);
}

TEST_CASE("lattice counts agree with brute force sup-norm enumeration") {
  const auto K = ConvexBody::ball(2, 1.0);
  const auto L = Lattice::half_integer(2);
  const double rho = 9.3, eta = 1.5;
  // The closed cube x + [-eta, eta]^2 meets the disc iff its nearest point does, and lies in
  // the disc iff its farthest corner does.
  std::int64_t inner = 0, boundary = 0;
  for (int a = -20; a < 20; ++a)
    for (int b = -20; b < 20; ++b) {
      const double x = std::abs(a + 0.5), y = std::abs(b + 0.5);
      const double far = std::hypot(x + eta, y + eta);
      const double near = std::hypot(std::max(x - eta, 0.0), std::max(y - eta, 0.0));
      if (far <= rho) ++inner;
      else if (near < rho) ++boundary;
    }
  const auto c = lattice_counts(K, rho, L, eta);
  CHECK(c.inner == inner);
  CHECK(c.boundary == boundary);
}

TEST_CASE("square [-5, 5]^2 with eta = 1") {
  const auto K = ConvexBody::cube(2, 5.0);
  CHECK(lattice_count_inner(K, 1.0, Lattice::integer(2), 1.0) == 81);
  CHECK(lattice_count_inner(K, 1.0, Lattice::half_integer(2), 1.0) == 64);
  CHECK(lattice_count_inner(ConvexBody::ball(2, 0.1), 1.0, Lattice::half_integer(2), 0.01) == 0);
  CHECK(lattice_count_boundary(ConvexBody::ball(2, 0.1), 1.0, Lattice::half_integer(2), 0.01) == 0);
}

TEST_CASE("lattice sandwich holds for random dilations") {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> u(5, 40);
  for (const auto& K : {ConvexBody::ball(2, 1.0), ConvexBody::cube(2, 0.7), ConvexBody::l1_ball(2, 1.0)})
    for (int i = 0; i < 10; ++i) CHECK(lattice_sandwich(K, u(g), Lattice::half_integer(2), 1.0).ok());
}

TEST_CASE("upper incomplete gamma closed form") {
  CHECK(upper_gamma_half_integer(0.5, 0.0) == doctest::Approx(std::sqrt(M_PI)));
  CHECK(upper_gamma_half_integer(1.0, 2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(upper_gamma_half_integer(3.0, 1.5) == doctest::Approx(2.0 * std::exp(-1.5) * (1 + 1.5 + 1.125)));
  CHECK(upper_gamma_half_integer(4.5, 0.0) == doctest::Approx(std::tgamma(4.5)));
  CHECK(upper_gamma_half_integer(1.5, 2.0) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-2.0) + 0.5 * std::sqrt(M_PI) * std::erfc(std::sqrt(2.0))));
}

TEST_CASE("envelope tail quadrature matches the incomplete gamma oracle") {
  for (int d : {1, 2, 3})
    for (double a : {1.0 / 115, 0.1})
      for (double eta : {4.0, 64.0}) {
        const auto t = envelope_tail(a, eta, d);
        const double oracle = sphere_area(d) * 1.5 * std::pow(a, -1.5 * d) *
                              upper_gamma_half_integer(1.5 * d, a * std::pow(eta, 2.0 / 3.0));
        CHECK(t.numeric == doctest::Approx(oracle).epsilon(1e-8));
        CHECK(t.converged);
        CHECK(t.satisfied());
      }
}

TEST_CASE("lattice envelope sum is dominated by the cell integral") {
  for (int d : {1, 2}) {
    Lattice L = Lattice::half_integer(d);
    L.spacing = 0.25;
    for (double& o : L.offset) o = 0.125;
    std::vector<std::vector<double>> pts;
    for (int a = -8; a < 8; ++a) {
      if (d == 1) {
        pts.push_back({0.125 + 0.25 * a});
        continue;
      }
      for (int b = -8; b < 8; ++b) pts.push_back({0.125 + 0.25 * a, 0.125 + 0.25 * b});
    }
    const auto r = lattice_envelope_sum(pts, L, 0.1);
    CHECK(r.satisfied());
    CHECK(r.sum > 0.0);
  }
}
