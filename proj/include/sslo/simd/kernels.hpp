#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace sslo::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);
bool backend_supported(Backend b);
// Widest backend the running CPU supports.
Backend best_backend();
// Backend used by the dispatching entry points. Defaults to best_backend() unless
// SSLO_LAB_SIMD=scalar|avx2|neon is set in the environment.
Backend active_backend();
void set_active_backend(Backend b);

// sum_i w_i a_i b_i
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double weighted_dot(Backend backend, std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

// Source points y_j of the kernel sin(W (x - y)) / (pi (x - y)) with cached sin(W y), cos(W y).
class SincTable {
 public:
  SincTable(double bandwidth, std::span<const double> y);

  double bandwidth() const { return W_; }
  std::size_t size() const { return y_.size(); }
  std::span<const double> y() const { return y_; }
  std::span<const double> sin_wy() const { return sy_; }
  std::span<const double> cos_wy() const { return cy_; }

 private:
  double W_;
  std::vector<double> y_, sy_, cy_;
};

// sum_j g_j sin(W (x - y_j)) / (pi (x - y_j)); the diagonal value is W / pi.
double sinc_apply(const SincTable& table, double x, std::span<const double> g);
double sinc_apply(Backend backend, const SincTable& table, double x, std::span<const double> g);

// out_j = sin(W (x - y_j)) / (pi (x - y_j))
void sinc_row(const SincTable& table, double x, std::span<double> out);
void sinc_row(Backend backend, const SincTable& table, double x, std::span<double> out);

// F_m = sum_j c_j exp(-i x_j (xi0 + m dxi)) for m < re.size(), by phasor recurrence
// with exact reseeding every few dozen steps.
void uniform_dft(std::span<const double> x, std::span<const double> c, double xi0, double dxi,
                 std::span<double> re, std::span<double> im);
void uniform_dft(Backend backend, std::span<const double> x, std::span<const double> c, double xi0,
                 double dxi, std::span<double> re, std::span<double> im);

}  // namespace sslo::simd
