#include <immintrin.h>

#include <cmath>

#include "simd/kernels_impl.hpp"
#include "sslo/common.hpp"

namespace sslo::simd::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(a + i + 4));
    acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

struct SincLanes {
  __m256d W, x, sx, cx, inv_pi, w_over_pi, near, sign_mask;

  SincLanes(double Ws, double xs, double sxs, double cxs)
      : W(_mm256_set1_pd(Ws)),
        x(_mm256_set1_pd(xs)),
        sx(_mm256_set1_pd(sxs)),
        cx(_mm256_set1_pd(cxs)),
        inv_pi(_mm256_set1_pd(1.0 / kPi)),
        w_over_pi(_mm256_set1_pd(Ws / kPi)),
        near(_mm256_set1_pd(kSincNear)),
        sign_mask(_mm256_set1_pd(-0.0)) {}

  __m256d eval(const double* y, const double* sy, const double* cy) const {
    const __m256d d = _mm256_sub_pd(x, _mm256_loadu_pd(y));
    const __m256d t = _mm256_mul_pd(W, d);
    const __m256d num = _mm256_fmsub_pd(sx, _mm256_loadu_pd(cy), _mm256_mul_pd(cx, _mm256_loadu_pd(sy)));
    const __m256d far = _mm256_mul_pd(_mm256_div_pd(num, d), inv_pi);
    const __m256d t2 = _mm256_mul_pd(t, t);
    __m256d p = _mm256_set1_pd(kSincTaylor[7]);
    for (int c = 6; c >= 0; --c) p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(kSincTaylor[c]));
    const __m256d close = _mm256_mul_pd(w_over_pi, p);
    const __m256d mask = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, t), near, _CMP_LT_OQ);
    return _mm256_blendv_pd(far, close, mask);
  }
};

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

double sinc_apply_avx2(double W, double x, double sx, double cx, const double* y, const double* sy,
                       const double* cy, const double* g, std::size_t n) {
  const SincLanes lanes(W, x, sx, cx);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(g + j), lanes.eval(y + j, sy + j, cy + j), acc);
  double s = hsum(acc);
  for (; j < n; ++j) s += g[j] * sinc_tail(W, x, sx, cx, y[j], sy[j], cy[j]);
  return s;
}

void sinc_row_avx2(double W, double x, double sx, double cx, const double* y, const double* sy,
                   const double* cy, double* out, std::size_t n) {
  const SincLanes lanes(W, x, sx, cx);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(out + j, lanes.eval(y + j, sy + j, cy + j));
  for (; j < n; ++j) out[j] = sinc_tail(W, x, sx, cx, y[j], sy[j], cy[j]);
}

void phasor_block_avx2(double* zr, double* zi, const double* rr, const double* ri, std::size_t n,
                       std::size_t steps, double* out_re, double* out_im) {
  for (std::size_t m = 0; m < steps; ++m) {
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d a = _mm256_loadu_pd(zr + j);
      const __m256d b = _mm256_loadu_pd(zi + j);
      const __m256d c = _mm256_loadu_pd(rr + j);
      const __m256d d = _mm256_loadu_pd(ri + j);
      sr = _mm256_add_pd(sr, a);
      si = _mm256_add_pd(si, b);
      _mm256_storeu_pd(zr + j, _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d)));
      _mm256_storeu_pd(zi + j, _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c)));
    }
    double tr = hsum(sr), ti = hsum(si);
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

const KernelTable& avx2_kernels() {
  static const KernelTable table{dot_avx2, sinc_apply_avx2, sinc_row_avx2, phasor_block_avx2};
  return table;
}

}  // namespace sslo::simd::detail
