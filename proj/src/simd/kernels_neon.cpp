#include <arm_neon.h>

#include <cmath>

#include "simd/kernels_impl.hpp"
#include "sslo/common.hpp"

namespace sslo::simd::detail {

namespace {

double dot_neon(const double* w, const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(w + i), vld1q_f64(a + i)), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(a + i + 2)), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

inline double sinc_tail(double W, double x, double sx, double cx, double y, double sy, double cy) {
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

inline float64x2_t sinc_lanes(double W, double x, double sx, double cx, const double* y, const double* sy,
                              const double* cy) {
  const float64x2_t d = vsubq_f64(vdupq_n_f64(x), vld1q_f64(y));
  const float64x2_t t = vmulq_f64(vdupq_n_f64(W), d);
  const float64x2_t num = vfmsq_f64(vmulq_f64(vdupq_n_f64(sx), vld1q_f64(cy)), vdupq_n_f64(cx), vld1q_f64(sy));
  const float64x2_t far = vmulq_f64(vdivq_f64(num, d), vdupq_n_f64(1.0 / kPi));
  const float64x2_t t2 = vmulq_f64(t, t);
  float64x2_t p = vdupq_n_f64(kSincTaylor[7]);
  for (int c = 6; c >= 0; --c) p = vfmaq_f64(vdupq_n_f64(kSincTaylor[c]), p, t2);
  const float64x2_t close = vmulq_f64(vdupq_n_f64(W / kPi), p);
  const uint64x2_t mask = vcltq_f64(vabsq_f64(t), vdupq_n_f64(kSincNear));
  return vbslq_f64(mask, close, far);
}

double sinc_apply_neon(double W, double x, double sx, double cx, const double* y, const double* sy,
                       const double* cy, const double* g, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) acc = vfmaq_f64(acc, vld1q_f64(g + j), sinc_lanes(W, x, sx, cx, y + j, sy + j, cy + j));
  double s = vaddvq_f64(acc);
  for (; j < n; ++j) s += g[j] * sinc_tail(W, x, sx, cx, y[j], sy[j], cy[j]);
  return s;
}

void sinc_row_neon(double W, double x, double sx, double cx, const double* y, const double* sy,
                   const double* cy, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) vst1q_f64(out + j, sinc_lanes(W, x, sx, cx, y + j, sy + j, cy + j));
  for (; j < n; ++j) out[j] = sinc_tail(W, x, sx, cx, y[j], sy[j], cy[j]);
}

void phasor_block_neon(double* zr, double* zi, const double* rr, const double* ri, std::size_t n,
                       std::size_t steps, double* out_re, double* out_im) {
  for (std::size_t m = 0; m < steps; ++m) {
    float64x2_t sr = vdupq_n_f64(0.0);
    float64x2_t si = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const float64x2_t a = vld1q_f64(zr + j);
      const float64x2_t b = vld1q_f64(zi + j);
      const float64x2_t c = vld1q_f64(rr + j);
      const float64x2_t d = vld1q_f64(ri + j);
      sr = vaddq_f64(sr, a);
      si = vaddq_f64(si, b);
      vst1q_f64(zr + j, vfmsq_f64(vmulq_f64(a, c), b, d));
      vst1q_f64(zi + j, vfmaq_f64(vmulq_f64(b, c), a, d));
    }
    double tr = vaddvq_f64(sr), ti = vaddvq_f64(si);
    for (; j < n; ++j) {
      tr += zr[j];
      ti += zi[j];
      const double a = zr[j] * rr[j] - zi[j] * ri[j];
      const double b = zr[j] * ri[j] + zi[j] * rr[j];
      zr[j] = a;
      zi[j] = b;
    }
    out_re[m] = tr;
    out_im[m] = ti;
  }
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{dot_neon, sinc_apply_neon, sinc_row_neon, phasor_block_neon};
  return table;
}

}  // namespace sslo::simd::detail
