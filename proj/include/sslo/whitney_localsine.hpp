#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <compare>
#include <span>
#include <vector>

#include "sslo/gevrey_cutoffs.hpp"
#include "sslo/quadrature.hpp"

namespace sslo::localsine {

// I_j = [alpha_j, alpha_{j+1}] of the dyadic Whitney decomposition of (0, 1), with
// transition half-widths eps_j at the left endpoint and eps_{j+1} at the right one.
struct WhitneyInterval {
  int j = 0;
  double alpha = 0.0;
  double alpha_next = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double eps_next = 0.0;

  double support_lo() const { return alpha - eps; }
  double support_hi() const { return alpha_next + eps_next; }
  // The two transition pieces of the bell; the bell is 1 only where they touch.
  std::array<std::array<double, 2>, 2> pieces() const {
    return {{{alpha - eps, alpha + eps}, {alpha_next - eps_next, alpha_next + eps_next}}};
  }
};

double whitney_alpha(int j);
double whitney_eps(int j);
WhitneyInterval whitney_interval(int j);

struct LocalSineIndex {
  int j = 0;
  int k = 0;
  auto operator<=>(const LocalSineIndex&) const = default;
};

// Orders indices by (-delta_j, j, k).
bool canonical_less(const LocalSineIndex& a, const LocalSineIndex& b);

struct BasisTruncation {
  double delta_min = 1.0 / 4096.0;
  int k_max = 256;

  // Intervals with delta_j >= delta_min, sorted by (-delta_j, j).
  std::vector<int> intervals() const;
  std::vector<LocalSineIndex> indices() const;
  std::size_t size() const;
};

double eval_bell(int j, double x, const gevrey::CutoffProfile& profile);
double eval_basis(const LocalSineIndex& idx, double x, const gevrey::CutoffProfile& profile);

// Angular frequency pi (k + 1/2) / delta_j of the sine factor.
double carrier_frequency(const LocalSineIndex& idx);

// Composite Gauss rule on the bell support resolving oscillation up to `max_frequency`.
QuadPoints support_quadrature(int j, double max_frequency);

// Values w_i b(x_i) on the support quadrature, the common input of the transforms below.
struct SampledBasis {
  LocalSineIndex index;
  QuadPoints quad;
  std::vector<double> weighted;
};
SampledBasis sample_basis(const LocalSineIndex& idx, const gevrey::CutoffProfile& profile, double max_frequency);

Eigen::MatrixXd gram_matrix(std::span<const LocalSineIndex> indices, const gevrey::CutoffProfile& profile,
                            int quad_order);
double gram_deviation(const Eigen::MatrixXd& gram);

// hat b(xi) = int b(x) exp(-i x xi) dx
std::complex<double> fourier_transform(const LocalSineIndex& idx, double xi, const gevrey::CutoffProfile& profile);
std::complex<double> fourier_transform(const SampledBasis& sample, double xi);
// Transform on xi0 + m dxi, m < count, through the batched SIMD path.
std::vector<std::complex<double>> fourier_transform_grid(const LocalSineIndex& idx, double xi0, double dxi,
                                                         std::size_t count, const gevrey::CutoffProfile& profile);

// A delta^{1/2} sum_{sigma = +-1} exp(-a |delta xi - sigma pi (k + 1/2)|^p)
struct DecayEnvelope {
  double A = 12.0;
  double a = 1.0 / 115.0;
  double exponent = 2.0 / 3.0;

  double operator()(const LocalSineIndex& idx, double xi) const;
};

struct EnvelopeRecord {
  int j = 0;
  int k = 0;
  double xi = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct DecayReport {
  LocalSineIndex index;
  EnvelopeRecord worst;
  std::vector<EnvelopeRecord> records;
  bool ok() const { return worst.ratio <= 1.0; }
};

DecayReport verify_fourier_decay(const LocalSineIndex& idx, std::span<const double> xi_grid,
                                 const gevrey::CutoffProfile& profile, const DecayEnvelope& envelope = {},
                                 bool keep_records = false);
// Uniform grid of `count` points on [xi_min, xi_max].
DecayReport verify_fourier_decay(const LocalSineIndex& idx, double xi_min, double xi_max, std::size_t count,
                                 const gevrey::CutoffProfile& profile, const DecayEnvelope& envelope = {},
                                 bool keep_records = false);

// Largest rate a (on a bisection grid) for which the envelope with the given A and exponent
// dominates |hat b| on the uniform grids [-span/delta, span/delta] of every index.
double fit_decay_rate(std::span<const LocalSineIndex> indices, const gevrey::CutoffProfile& profile, double A,
                      double exponent, double span, std::size_t count);

}  // namespace sslo::localsine
