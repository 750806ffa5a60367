#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sslo/convex_geometry.hpp"
#include "sslo/gevrey_cutoffs.hpp"
#include "sslo/wave_packets.hpp"

namespace sslo::spectrum {

// Gauss-Legendre nodes and weights on [a, b].
struct NystromGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  static NystromGrid gauss_legendre(int n, double a = 0.0, double b = 1.0);
};

struct ClampReport {
  std::size_t clipped = 0;
  double max_clip = 0.0;
  nlohmann::json to_json() const { return {{"clipped", clipped}, {"max_clip", max_clip}}; }
};

// Descending eigenvalues in [0, 1].
struct EigenSequence {
  std::vector<double> values;
  ClampReport clamp;
  int resolution = 0;
  bool converged = true;
  double convergence_delta = 0.0;
  std::vector<std::string> warnings;

  double trace() const;
};

// Clips each value into [0, 1] and sorts descending; throws std::range_error when a clip exceeds 1e-8.
EigenSequence finalize_spectrum(std::vector<double> raw, int resolution, double clip_tolerance = 1e-8);

// sin(W (x - y)) / (pi (x - y)), W / pi on the diagonal.
double sinc_kernel(double W, double x, double y);

// Spectrum of P_[0,1] B_[-W,W] P_[0,1]. With check_convergence, also solves at 2n and flags
// drift above 1e-8 in the leading ceil(W/pi) + 10 values.
EigenSequence eigs_1d(double W, int n = 512, bool check_convergence = false);

// Spectrum of P_[a,b] B_[lo,hi] P_[a,b] for an arbitrary frequency band, via the complex
// Hermitian kernel (e^{i hi u} - e^{i lo u}) / (2 pi i u).
EigenSequence eigs_interval(double a, double b, double band_lo, double band_hi, int n);

// Products of one-dimensional eigenvalues, the top `count` of them.
EigenSequence eigs_cube_tensor(double W, int d, int n, std::size_t count);

// r J1(r |u|) / (2 pi |u|), the inverse Fourier transform of the indicator of the disc of radius r.
double disc_kernel(double r, double u);

// Convolution kernel h(u1, u2) of P_Q B_{S(r)} P_Q for a planar unconditional body.
// Ball, cube, l1 and ellipsoid bodies use closed forms; oracle bodies are integrated over chords
// and interpolated on a grid (experimental).
std::function<double(double, double)> body_kernel_2d(const geometry::ConvexBody& body, double r);

struct Nystrom2dOptions {
  int n = 96;
  // Split into the four reflection-parity blocks of the symmetric Gauss grid.
  bool use_parity = true;
  bool check_convergence = false;
  unsigned threads = 0;
};
EigenSequence eigs_body_2d(const geometry::ConvexBody& body, double r, const Nystrom2dOptions& opt);
EigenSequence eigs_disc_2d(double r, int n = 96);

// M_eps = #{k : lambda_k > eps}
std::size_t count_above(const EigenSequence& eigs, double eps);
// N_eps = #{k : eps < lambda_k < 1 - eps}
std::size_t count_transition(const EigenSequence& eigs, double eps);

struct PacketAction {
  double norm_T_psi = 0.0;
  double norm_ImT_psi = 0.0;
  // <psi, T psi>, the energy of hat psi inside S(r)
  double overlap = 0.0;
  double norm_psi = 0.0;
};
// || T psi || and || (I - T) psi || for T = P_Q B_{S(r)} P_Q and d <= 2, with an n (per axis)
// Gauss grid on Q for the outer norm.
PacketAction apply_operator_to_packet(const packets::PacketIndex& nu, const geometry::ConvexBody& body, double r,
                                      const gevrey::CutoffProfile& profile, int n = 256);

struct EnergyLoss {
  double total = 0.0;
  double hi_part = 0.0;
  double low_part = 0.0;
  // sum_hi inside + sum_low outside, when requested
  double bound = 0.0;
  bool has_bound = false;
  std::size_t hi_terms = 0;
  std::size_t low_terms = 0;
};

// One-dimensional energy loss sum_hi ||T psi||^2 + sum_low ||(I - T) psi||^2 for a batch of
// partitions sharing body, r and truncation; indices are evaluated once and reused.
std::vector<EnergyLoss> energy_loss_sweep(const geometry::ConvexBody& body, double r,
                                          const std::vector<packets::IndexPartition>& partitions,
                                          const localsine::BasisTruncation& trunc,
                                          const gevrey::CutoffProfile& profile, int n = 256, bool with_bound = false,
                                          unsigned threads = 0);

}  // namespace sslo::spectrum
