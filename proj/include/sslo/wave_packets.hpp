#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sslo/convex_geometry.hpp"
#include "sslo/gevrey_cutoffs.hpp"
#include "sslo/whitney_localsine.hpp"

namespace sslo::packets {

// psi_nu(x) = prod_i b_{j_i k_i}(x_i)
struct PacketIndex {
  std::vector<int> j;
  std::vector<int> k;

  int dim() const { return static_cast<int>(j.size()); }
  localsine::LocalSineIndex axis(int i) const { return {j[i], k[i]}; }
  double min_delta() const;
  double measure() const;  // prod_i delta_{j_i}
  auto operator<=>(const PacketIndex&) const = default;
};

PacketIndex make_index(std::vector<int> j, std::vector<int> k);
// Canonical order: lexicographic over axes of the one-dimensional order (-delta, j, k).
bool canonical_less(const PacketIndex& a, const PacketIndex& b);
std::string to_string(const PacketIndex& nu);

// Positive-orthant box R^1_eta: centre pi (k + 1/2) / delta and half-width eta / delta per axis.
struct FrequencyBox {
  std::vector<double> center;
  std::vector<double> halfwidth;
  double eta = 0.0;

  // Coordinate-wise smallest |xi| over the box (0 on axes where the box straddles 0).
  std::vector<double> min_magnitude_corner() const;
  std::vector<double> max_magnitude_corner() const;
};
FrequencyBox frequency_box(const PacketIndex& nu, double eta);

double eval_packet(const PacketIndex& nu, std::span<const double> x, const gevrey::CutoffProfile& profile);
std::complex<double> packet_fourier_transform(const PacketIndex& nu, std::span<const double> xi,
                                              const gevrey::CutoffProfile& profile);
// 2^d A^{2d} mu(L) sum_sigma Psi_{2a}(pi |tau_L(xi) - sigma (k + 1/2)|), tau_L(xi) = delta xi / pi.
double packet_fourier_envelope(const PacketIndex& nu, std::span<const double> xi,
                               const localsine::DecayEnvelope& env = {});

// 125 (ln(1/delta) / a)^{3/2}, the smallest eta the decay estimates allow.
double eta_of_delta(double delta, double a = 1.0 / 115.0);

enum class Label { Low, Res, Hi };
std::string_view label_name(Label l);

Label classify_index(const PacketIndex& nu, const geometry::ConvexBody& body, double r, double delta, double eta);

struct IndexPartition {
  int d = 0;
  double r = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  nlohmann::json body;
  std::vector<PacketIndex> low;
  std::vector<PacketIndex> res;
  std::uint64_t hi_count = 0;
  std::uint64_t total = 0;
  // (2 pi)^{-d} mu(S(r)) and |#low - that|
  double expected_low = 0.0;
  double deviation = 0.0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

IndexPartition enumerate_partition(const geometry::ConvexBody& body, double r, double delta, double eta,
                                   const localsine::BasisTruncation& trunc, unsigned threads = 0);

struct EnergySplit {
  double inside = 0.0;   // int_{S(r)} |hat psi|^2 / (2 pi)^d
  double outside = 0.0;  // the complement
  double total = 0.0;    // full-space integral, 1 up to quadrature error
};
// Fourier-side quadrature, d <= 2. Throws ConvergenceError when inside + outside misses 1 by > 1e-4.
EnergySplit packet_energy_split(const PacketIndex& nu, const geometry::ConvexBody& body, double r,
                                const gevrey::CutoffProfile& profile);

}  // namespace sslo::packets
