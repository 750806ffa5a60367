#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "sslo/simd/kernels.hpp"

using namespace sslo::simd;

namespace {

std::vector<Backend> vector_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Avx2, Backend::Neon})
    if (backend_supported(b)) out.push_back(b);
  return out;
}

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(backend_supported(Backend::Scalar));
  CHECK(backend_supported(best_backend()));
  MESSAGE("active backend: " << backend_name(active_backend()));
}

TEST_CASE("weighted_dot agrees across backends") {
  std::mt19937_64 g(11);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    auto w = random_vec(g, n, 0, 1), a = random_vec(g, n, -1, 1), b = random_vec(g, n, -1, 1);
    const double ref = weighted_dot(Backend::Scalar, w, a, b);
    double naive = 0.0;
    for (std::size_t i = 0; i < n; ++i) naive += w[i] * a[i] * b[i];
    CHECK(ref == doctest::Approx(naive).epsilon(1e-13));
    for (Backend be : vector_backends()) CHECK(std::abs(weighted_dot(be, w, a, b) - ref) <= 1e-13 * (1 + std::abs(ref)) + 1e-15);
  }
}

TEST_CASE("sinc kernels agree across backends, including the near-diagonal branch") {
  std::mt19937_64 g(12);
  for (double W : {1.0, 31.4, 400.0}) {
    auto y = random_vec(g, 203, 0, 1);
    y[5] = 0.3;  // exact coincidence with x below
    y[6] = 0.3 + 1e-9;
    const SincTable t(W, y);
    auto coeff = random_vec(g, y.size(), -1, 1);
    for (double x : {0.3, 0.71234, 0.0}) {
      std::vector<double> row(y.size());
      sinc_row(Backend::Scalar, t, x, row);
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double d = x - y[j];
        const double exact = d == 0.0 ? W / M_PI : std::sin(W * d) / (M_PI * d);
        CHECK(std::abs(row[j] - exact) <= 1e-12 * W);
      }
      const double ref = sinc_apply(Backend::Scalar, t, x, coeff);
      for (Backend be : vector_backends()) {
        std::vector<double> r2(y.size());
        sinc_row(be, t, x, r2);
        for (std::size_t j = 0; j < y.size(); ++j) CHECK(std::abs(r2[j] - row[j]) <= 1e-14 * W);
        CHECK(std::abs(sinc_apply(be, t, x, coeff) - ref) <= 1e-12 * W);
      }
    }
  }
}

TEST_CASE("uniform DFT matches direct summation on every backend") {
  std::mt19937_64 g(13);
  auto x = random_vec(g, 97, 0, 1), c = random_vec(g, 97, -1, 1);
  const double xi0 = -250.0, dxi = 0.37;
  const std::size_t m = 1500;
  std::vector<double> re(m), im(m);
  uniform_dft(Backend::Scalar, x, c, xi0, dxi, re, im);
  double worst = 0.0;
  for (std::size_t k = 0; k < m; k += 7) {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += c[j] * std::exp(std::complex<double>(0, -x[j] * (xi0 + k * dxi)));
    worst = std::max(worst, std::abs(s - std::complex<double>(re[k], im[k])));
  }
  CHECK(worst < 1e-11);
  for (Backend be : vector_backends()) {
    std::vector<double> re2(m), im2(m);
    uniform_dft(be, x, c, xi0, dxi, re2, im2);
    double diff = 0.0;
    for (std::size_t k = 0; k < m; ++k) diff = std::max(diff, std::hypot(re2[k] - re[k], im2[k] - im[k]));
    CHECK(diff < 1e-12);
  }
}
