#pragma once

#include <cstddef>

namespace sslo::simd::detail {

// Taylor coefficients of sin(t)/t in t^2, accurate to 1e-18 for |t| < 0.5.
inline constexpr double kSincTaylor[8] = {
    1.0,
    -1.0 / 6.0,
    1.0 / 120.0,
    -1.0 / 5040.0,
    1.0 / 362880.0,
    -1.0 / 39916800.0,
    1.0 / 6227020800.0,
    -1.0 / 1307674368000.0,
};
inline constexpr double kSincNear = 0.5;

struct KernelTable {
  double (*weighted_dot)(const double* w, const double* a, const double* b, std::size_t n);
  double (*sinc_apply)(double W, double x, double sx, double cx, const double* y, const double* sy,
                       const double* cy, const double* g, std::size_t n);
  void (*sinc_row)(double W, double x, double sx, double cx, const double* y, const double* sy,
                   const double* cy, double* out, std::size_t n);
  // Advances the phasors z <- z * rho for `steps` steps, recording sum_j z_j before each step.
  void (*phasor_block)(double* zr, double* zi, const double* rr, const double* ri, std::size_t n,
                       std::size_t steps, double* out_re, double* out_im);
};

const KernelTable& scalar_kernels();
#if defined(SSLO_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(SSLO_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

}  // namespace sslo::simd::detail
