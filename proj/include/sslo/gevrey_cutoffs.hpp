#pragma once

#include <cmath>
#include <vector>

namespace sslo::gevrey {

// Derivative constants for the m = 2 profile: |v^(k)| <= C1^k (k!)^{3/2},
// |s^(k)| <= C2^k (k!)^{3/2}, and C3 for products of two steps.
inline const double kC1 = 2.0 + 3.0 * std::sqrt(2.0);
inline const double kC2 = kC1 * (1.0 + 1.5707963267948966);
inline const double kC3 = 6.0 * kC2;

// Bump v_m(x) = exp(-(1 - x^2)^{-m}) on (-1, 1), its normalized form psi, the phase
// theta(x) = pi/4 + int_0^x psi, and the smooth step s = sin(theta).
class CutoffProfile {
 public:
  explicit CutoffProfile(int m = 2, int quadrature_order = 200, int step_table_degree = 0);

  int m() const { return m_; }
  int quadrature_order() const { return quadrature_order_; }
  // (pi / 2) / int_{-1}^{1} v_m
  double normalization() const { return normalization_; }
  double bump_integral() const { return bump_integral_; }
  bool has_step_table() const { return !table_.empty(); }
  int step_table_degree() const { return static_cast<int>(table_.size()) - 1; }

  double bump(double x) const;
  double cutoff(double x) const;
  double theta(double x) const;
  double step(double x) const;

  // theta evaluated by quadrature, ignoring the Chebyshev table.
  double theta_exact(double x) const;

 private:
  double odd_phase(double x) const;

  int m_;
  int quadrature_order_;
  double bump_integral_;
  double normalization_;
  std::vector<double> table_;
};

struct GevreyCheck {
  int k = 0;
  double sup_bump = 0.0;
  double bound_bump = 0.0;
  double sup_step = 0.0;
  double bound_step = 0.0;
  double noise_floor = 0.0;
  bool bump_ok = false;
  bool step_ok = false;
  // Finite differences are unreliable when the noise floor approaches the bound.
  bool reliable = true;
};

// Numerical sup |v^(k)| and |s^(k)| against the Gevrey-3/2 bounds for k <= k_max <= 8,
// from Richardson-extrapolated central differences. Only meaningful for m = 2.
std::vector<GevreyCheck> verify_gevrey_bound(const CutoffProfile& profile, int k_max, int grid_points = 2001);

}  // namespace sslo::gevrey
