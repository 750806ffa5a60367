#include "sslo/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "sslo/common.hpp"

namespace sslo {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(order));
  return *slot;
}

void QuadPoints::append(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be positive");
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  x.reserve(x.size() + static_cast<std::size_t>(panels) * order);
  w.reserve(w.size() + static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < order; ++i) {
      x.push_back(mid + 0.5 * h * rule.nodes[i]);
      w.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

QuadPoints composite_gauss(double a, double b, int panels, int order) {
  QuadPoints q;
  q.append(a, b, panels, order);
  return q;
}

}  // namespace sslo
