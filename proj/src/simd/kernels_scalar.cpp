#include <cmath>

#include "simd/kernels_impl.hpp"
#include "sslo/common.hpp"

namespace sslo::simd::detail {

namespace {

double dot_scalar(const double* w, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

inline double sinc_entry(double W, double x, double sx, double cx, double y, double sy, double cy) {
  const double d = x - y;
  const double t = W * d;
  if (std::abs(t) < kSincNear) {
    const double t2 = t * t;
    double p = kSincTaylor[7];
    for (int c = 6; c >= 0; --c) p = p * t2 + kSincTaylor[c];
    return W / kPi * p;
  }
  return (sx * cy - cx * sy) / (kPi * d);
}

double sinc_apply_scalar(double W, double x, double sx, double cx, const double* y, const double* sy,
                         const double* cy, const double* g, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += g[j] * sinc_entry(W, x, sx, cx, y[j], sy[j], cy[j]);
  return s;
}

void sinc_row_scalar(double W, double x, double sx, double cx, const double* y, const double* sy,
                     const double* cy, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = sinc_entry(W, x, sx, cx, y[j], sy[j], cy[j]);
}

void phasor_block_scalar(double* zr, double* zi, const double* rr, const double* ri, std::size_t n,
                         std::size_t steps, double* out_re, double* out_im) {
  for (std::size_t m = 0; m < steps; ++m) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sr += zr[j];
      si += zi[j];
      const double a = zr[j] * rr[j] - zi[j] * ri[j];
      const double b = zr[j] * ri[j] + zi[j] * rr[j];
      zr[j] = a;
      zi[j] = b;
    }
    out_re[m] = sr;
    out_im[m] = si;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{dot_scalar, sinc_apply_scalar, sinc_row_scalar, phasor_block_scalar};
  return table;
}

}  // namespace sslo::simd::detail
