#pragma once

#include <vector>

namespace sslo {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; safe to call from several threads.
const GaussRule& gauss_legendre(int order);

struct QuadPoints {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
  void append(double a, double b, int panels, int order);
};

QuadPoints composite_gauss(double a, double b, int panels, int order);

}  // namespace sslo
