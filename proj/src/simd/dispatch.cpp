#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "simd/kernels_impl.hpp"
#include "sslo/simd/kernels.hpp"

namespace sslo::simd {

namespace {

constexpr std::size_t kReseedInterval = 48;

Backend initial_backend() {
  const char* env = std::getenv("SSLO_LAB_SIMD");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (want == "neon" && backend_supported(Backend::Neon)) return Backend::Neon;
  }
  return best_backend();
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(initial_backend())};
  return slot;
}

const detail::KernelTable& table_for(Backend b) {
  switch (b) {
#if defined(SSLO_HAVE_AVX2)
    case Backend::Avx2:
      return detail::avx2_kernels();
#endif
#if defined(SSLO_HAVE_NEON)
    case Backend::Neon:
      return detail::neon_kernels();
#endif
    case Backend::Scalar:
      return detail::scalar_kernels();
    default:
      throw std::invalid_argument("simd backend not available in this build: " + std::string(backend_name(b)));
  }
}

void require_equal(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(SSLO_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(SSLO_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend best_backend() {
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend active_backend() { return static_cast<Backend>(active_slot().load()); }

void set_active_backend(Backend b) {
  if (!backend_supported(b)) throw std::invalid_argument("simd backend not supported: " + std::string(backend_name(b)));
  active_slot().store(static_cast<int>(b));
}

double weighted_dot(Backend backend, std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  require_equal(w.size(), a.size(), "weighted_dot");
  require_equal(w.size(), b.size(), "weighted_dot");
  return table_for(backend).weighted_dot(w.data(), a.data(), b.data(), w.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return weighted_dot(active_backend(), w, a, b);
}

SincTable::SincTable(double bandwidth, std::span<const double> y)
    : W_(bandwidth), y_(y.begin(), y.end()), sy_(y.size()), cy_(y.size()) {
  for (std::size_t j = 0; j < y_.size(); ++j) {
    sy_[j] = std::sin(W_ * y_[j]);
    cy_[j] = std::cos(W_ * y_[j]);
  }
}

double sinc_apply(Backend backend, const SincTable& table, double x, std::span<const double> g) {
  require_equal(table.size(), g.size(), "sinc_apply");
  const double W = table.bandwidth();
  return table_for(backend).sinc_apply(W, x, std::sin(W * x), std::cos(W * x), table.y().data(),
                                       table.sin_wy().data(), table.cos_wy().data(), g.data(), g.size());
}

double sinc_apply(const SincTable& table, double x, std::span<const double> g) {
  return sinc_apply(active_backend(), table, x, g);
}

void sinc_row(Backend backend, const SincTable& table, double x, std::span<double> out) {
  require_equal(table.size(), out.size(), "sinc_row");
  const double W = table.bandwidth();
  table_for(backend).sinc_row(W, x, std::sin(W * x), std::cos(W * x), table.y().data(), table.sin_wy().data(),
                              table.cos_wy().data(), out.data(), out.size());
}

void sinc_row(const SincTable& table, double x, std::span<double> out) {
  sinc_row(active_backend(), table, x, out);
}

void uniform_dft(Backend backend, std::span<const double> x, std::span<const double> c, double xi0, double dxi,
                 std::span<double> re, std::span<double> im) {
  require_equal(x.size(), c.size(), "uniform_dft");
  require_equal(re.size(), im.size(), "uniform_dft");
  const auto& kernels = table_for(backend);
  const std::size_t n = x.size();
  std::vector<double> zr(n), zi(n), rr(n), ri(n);
  for (std::size_t j = 0; j < n; ++j) {
    rr[j] = std::cos(x[j] * dxi);
    ri[j] = -std::sin(x[j] * dxi);
  }
  for (std::size_t m0 = 0; m0 < re.size(); m0 += kReseedInterval) {
    const std::size_t steps = std::min(kReseedInterval, re.size() - m0);
    const double xi = xi0 + static_cast<double>(m0) * dxi;
    for (std::size_t j = 0; j < n; ++j) {
      zr[j] = c[j] * std::cos(x[j] * xi);
      zi[j] = -c[j] * std::sin(x[j] * xi);
    }
    kernels.phasor_block(zr.data(), zi.data(), rr.data(), ri.data(), n, steps, re.data() + m0, im.data() + m0);
  }
}

void uniform_dft(std::span<const double> x, std::span<const double> c, double xi0, double dxi,
                 std::span<double> re, std::span<double> im) {
  uniform_dft(active_backend(), x, c, xi0, dxi, re, im);
}

}  // namespace sslo::simd
