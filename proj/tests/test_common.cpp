#include <atomic>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sslo/bessel.hpp"
#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"

using namespace sslo;

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const auto& g = gauss_legendre(12);
  for (int p = 0; p <= 23; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("composite rule matches a closed-form integral") {
  const auto q = composite_gauss(0.0, 10.0, 8, 16);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::sin(q.x[i]);
  CHECK(s == doctest::Approx(1.0 - std::cos(10.0)).epsilon(1e-14));
}

TEST_CASE("parallel_for covers every index once and propagates exceptions") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }, 3),
                  std::runtime_error);
}

TEST_CASE("bessel J1 agrees with the standard library") {
  double worst = 0.0;
  for (double x = 0.0; x <= 200.0; x += 0.0137) worst = std::max(worst, std::abs(special::bessel_j1(x) - std::cyl_bessel_j(1.0, x)));
  CHECK(worst < 1e-13);
  CHECK(special::bessel_j1(-2.5) == doctest::Approx(-std::cyl_bessel_j(1.0, 2.5)).epsilon(1e-14));
  // first zero of J1
  CHECK(std::abs(special::bessel_j1(3.8317059702075123)) < 1e-14);
}
