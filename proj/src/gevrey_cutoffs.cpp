#include "sslo/gevrey_cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"

namespace sslo::gevrey {

namespace {

constexpr int kPhasePanels = 4;
constexpr int kPhaseOrder = 32;
constexpr double kExpCutoff = 700.0;

double raw_bump(int m, double x) {
  const double q = 1.0 - x * x;
  if (q <= 0.0) return 0.0;
  const double e = std::pow(q, -static_cast<double>(m));
  if (e > kExpCutoff) return 0.0;
  return std::exp(-e);
}

}  // namespace

CutoffProfile::CutoffProfile(int m, int quadrature_order, int step_table_degree)
    : m_(m), quadrature_order_(quadrature_order) {
  if (m < 1) throw std::invalid_argument("CutoffProfile: m must be >= 1");
  if (quadrature_order < 16) throw std::invalid_argument("CutoffProfile: quadrature_order must be >= 16");
  if (step_table_degree < 0) throw std::invalid_argument("CutoffProfile: negative table degree");
  const GaussRule& rule = gauss_legendre(quadrature_order);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) integral += rule.weights[i] * raw_bump(m, rule.nodes[i]);
  if (!(integral > 0.0)) throw std::invalid_argument("CutoffProfile: bump integral vanished");
  bump_integral_ = integral;
  normalization_ = 0.5 * kPi / integral;

  if (step_table_degree > 0) {
    // Chebyshev interpolant of the odd function theta - pi/4 on [-1, 1].
    const int n = step_table_degree + 1;
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = odd_phase(std::cos(kPi * (i + 0.5) / n));
    table_.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += values[i] * std::cos(kPi * k * (i + 0.5) / n);
      table_[k] = (k == 0 ? 1.0 : 2.0) * s / n;
    }
  }
}

double CutoffProfile::bump(double x) const { return raw_bump(m_, x); }

double CutoffProfile::cutoff(double x) const { return normalization_ * raw_bump(m_, x); }

double CutoffProfile::odd_phase(double x) const {
  const double ax = std::min(std::abs(x), 1.0);
  if (ax == 0.0) return 0.0;
  const GaussRule& rule = gauss_legendre(kPhaseOrder);
  const double h = ax / kPhasePanels;
  double s = 0.0;
  for (int p = 0; p < kPhasePanels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < kPhaseOrder; ++i) s += rule.weights[i] * raw_bump(m_, mid + 0.5 * h * rule.nodes[i]);
  }
  s *= 0.5 * h * normalization_;
  return x < 0.0 ? -s : s;
}

double CutoffProfile::theta_exact(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 0.5 * kPi;
  return 0.25 * kPi + odd_phase(x);
}

double CutoffProfile::theta(double x) const {
  if (table_.empty()) return theta_exact(x);
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 0.5 * kPi;
  // Clenshaw at |x|, then odd extension, so theta(-x) = pi/2 - theta(x) holds exactly.
  const double t = std::abs(x);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = table_.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + table_[k];
    b2 = b1;
    b1 = b0;
  }
  const double g = t * b1 - b2 + table_[0];
  return 0.25 * kPi + (x < 0.0 ? -g : g);
}

double CutoffProfile::step(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::sin(theta(x));
}

std::vector<GevreyCheck> verify_gevrey_bound(const CutoffProfile& profile, int k_max, int grid_points) {
  if (k_max < 0 || k_max > 8) throw std::invalid_argument("verify_gevrey_bound: k_max must be in [0, 8]");
  if (grid_points < 3) throw std::invalid_argument("verify_gevrey_bound: grid too small");
  constexpr double kH0 = 1e-2;
  constexpr int kLevels = 3;
  const double eps = 2.220446049250313e-16;

  auto central = [](const auto& f, int k, double x, double h) {
    // k-th central difference with nodes x + (k/2 - i) h
    double s = 0.0, binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      s += ((i % 2) ? -binom : binom) * f(x + (0.5 * k - i) * h);
      binom = binom * (k - i) / (i + 1);
    }
    return s / std::pow(h, k);
  };
  auto richardson = [&](const auto& f, int k, double x) {
    double d[kLevels];
    for (int i = 0; i < kLevels; ++i) d[i] = central(f, k, x, kH0 * std::ldexp(1.0, -i));
    for (int level = 1; level < kLevels; ++level) {
      const double factor = std::ldexp(1.0, 2 * level);
      for (int i = 0; i + level < kLevels; ++i) d[i] = (factor * d[i + 1] - d[i]) / (factor - 1.0);
    }
    return d[0];
  };

  const auto bump = [&](double x) { return profile.bump(x); };
  const auto step = [&](double x) { return profile.step(x); };

  std::vector<GevreyCheck> out;
  double factorial = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) factorial *= k;
    GevreyCheck c;
    c.k = k;
    c.bound_bump = std::pow(kC1, k) * std::pow(factorial, 1.5);
    c.bound_step = std::pow(kC2, k) * std::pow(factorial, 1.5);
    for (int g = 0; g < grid_points; ++g) {
      const double x = -1.0 + 2.0 * g / (grid_points - 1);
      const double db = k == 0 ? bump(x) : richardson(bump, k, x);
      const double ds = k == 0 ? step(x) : richardson(step, k, x);
      c.sup_bump = std::max(c.sup_bump, std::abs(db));
      c.sup_step = std::max(c.sup_step, std::abs(ds));
    }
    // Rounding in the finest difference, amplified by the extrapolation weights.
    const double h_min = kH0 * std::ldexp(1.0, -(kLevels - 1));
    c.noise_floor = k == 0 ? eps : 2.0 * std::ldexp(1.0, k) * eps / std::pow(h_min, k);
    c.reliable = c.noise_floor < 1e-2 * std::min(c.bound_bump, c.bound_step);
    c.bump_ok = c.sup_bump <= c.bound_bump;
    c.step_ok = c.sup_step <= c.bound_step;
    out.push_back(c);
  }
  return out;
}

}  // namespace sslo::gevrey
