#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sslo/whitney_localsine.hpp"

using namespace sslo::localsine;
using sslo::gevrey::CutoffProfile;

TEST_CASE("whitney intervals tile (0, 1) dyadically") {
  CHECK(whitney_alpha(0) == 0.5);
  CHECK(whitney_alpha(1) == 0.75);
  CHECK(whitney_alpha(-1) == 0.25);
  for (int j = -20; j < 20; ++j) {
    const auto I = whitney_interval(j);
    CHECK(I.alpha_next == whitney_alpha(j + 1));
    CHECK(I.delta > 0.0);
    CHECK(I.eps + I.eps_next <= I.delta * (1 + 1e-15));
    CHECK(I.support_lo() > 0.0);
    CHECK(I.support_hi() < 1.0);
  }
  CHECK(whitney_interval(-3).delta == whitney_interval(2).delta);
  CHECK_THROWS(whitney_interval(5000));
}

TEST_CASE("bells square-sum to one and plateau at alpha + eps") {
  CutoffProfile p;
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 200; ++t) {
    const double x = u(g);
    double s = 0.0;
    for (int j = -12; j <= 12; ++j) s += std::pow(eval_bell(j, x, p), 2);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int j : {-2, 0, 3}) {
    const auto I = whitney_interval(j);
    CHECK(eval_bell(j, I.alpha + I.eps, p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_bell(j, I.support_lo(), p) == 0.0);
  }
}

TEST_CASE("canonical order sorts by decreasing length") {
  BasisTruncation t{1.0 / 64, 3};
  auto idx = t.indices();
  CHECK(idx.size() == t.size());
  CHECK(std::is_sorted(idx.begin(), idx.end(), canonical_less));
  CHECK(whitney_interval(idx.front().j).delta == 0.25);
  CHECK(idx.front().j == -1);
}

TEST_CASE("gram matrix is the identity and rejects too few nodes") {
  CutoffProfile p;
  BasisTruncation t{1.0 / 256, 20};
  const auto idx = t.indices();
  CHECK(gram_deviation(gram_matrix(idx, p, 4 * 20 + 16)) < 1e-12);
  CHECK_THROWS(gram_matrix(idx, p, 30));
}

TEST_CASE("direct and batched Fourier transforms agree with a brute-force integral") {
  CutoffProfile p;
  const LocalSineIndex id{-1, 3};
  const auto grid = fourier_transform_grid(id, -300.0, 0.61, 1000, p);
  const auto I = whitney_interval(id.j);
  for (std::size_t m : {0u, 117u, 499u, 999u}) {
    const double xi = -300.0 + 0.61 * m;
    const auto direct = fourier_transform(id, xi, p);
    CHECK(std::abs(direct - grid[m]) < 1e-11);
    // trapezoid on a fine grid as an independent reference
    const int N = 200000;
    const double a = I.support_lo(), b = I.support_hi(), h = (b - a) / N;
    std::complex<double> s = 0;
    for (int i = 1; i < N; ++i) {
      const double x = a + i * h;
      s += eval_basis(id, x, p) * std::exp(std::complex<double>(0, -x * xi));
    }
    CHECK(std::abs(s * h - direct) < 1e-8);
  }
}

TEST_CASE("decay envelope dominates a sampled transform") {
  CutoffProfile p;
  for (int j : {-2, 1}) {
    const double d = whitney_interval(j).delta;
    const auto rep = verify_fourier_decay({j, 2}, -500 / d, 500 / d, 2001, p);
    CHECK(rep.ok());
    CHECK(rep.worst.ratio > 0.0);
  }
}
