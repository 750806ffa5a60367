#include "sslo/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "sslo/common.hpp"

namespace sslo::special {

namespace {

double series(double x) {
  const double q = -0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (k * (k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Backward recurrence J_{n-1} = (2n/x) J_n - J_{n+1}, normalized by J_0 + 2 sum J_{2k} = 1.
double miller(double x) {
  int start = static_cast<int>(x + 40.0 + 6.0 * std::sqrt(x));
  start += start % 2;
  double jp1 = 0.0, jn = 1e-300, j1 = 0.0, norm = 0.0;
  for (int n = start; n >= 1; --n) {
    const double jm1 = 2.0 * n / x * jn - jp1;
    jp1 = jn;
    jn = jm1;
    if (n - 1 == 1) j1 = jn;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * jn;
    if (std::abs(jn) > 1e250) {
      jn *= 1e-250;
      jp1 *= 1e-250;
      j1 *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += jn;  // J_0
  return j1 / norm;
}

double hankel(double x) {
  // P, Q asymptotic series with mu = 4 nu^2 = 4.
  const double mu = 4.0;
  const double z = 8.0 * x;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * z);
    const double next = term * f;
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_j1: non-finite argument");
  const double ax = std::abs(x);
  double v;
  if (ax < 8.0) {
    v = series(ax);
  } else if (ax < 25.0) {
    v = miller(ax);
  } else {
    v = hankel(ax);
  }
  return x < 0.0 ? -v : v;
}

}  // namespace sslo::special
