#include "sslo/whitney_localsine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sslo/common.hpp"
#include "sslo/simd/kernels.hpp"

namespace sslo::localsine {

namespace {

constexpr int kPanelOrder = 32;
constexpr int kMinPanels = 4;

double sine_factor(const WhitneyInterval& I, int k, double x) {
  return std::sqrt(2.0 / I.delta) * std::sin(kPi * (k + 0.5) * (x - I.alpha) / I.delta);
}

double bell_value(const WhitneyInterval& I, double x, const gevrey::CutoffProfile& profile) {
  if (x <= I.support_lo() || x >= I.support_hi()) return 0.0;
  return profile.step((x - I.alpha) / I.eps) * profile.step((I.alpha_next - x) / I.eps_next);
}

bool is_uniform(std::span<const double> grid) {
  if (grid.size() < 3) return false;
  const double d = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  if (!(d > 0.0)) return false;
  const double tol = 1e-12 * std::max(std::abs(grid.front()), std::abs(grid.back()));
  for (std::size_t m = 0; m < grid.size(); ++m)
    if (std::abs(grid[m] - (grid.front() + static_cast<double>(m) * d)) > tol) return false;
  return true;
}

}  // namespace

double whitney_alpha(int j) { return j <= 0 ? std::ldexp(1.0, j - 1) : 1.0 - std::ldexp(1.0, -j - 1); }

double whitney_eps(int j) {
  const double delta = whitney_alpha(j + 1) - whitney_alpha(j);
  return j <= -1 ? delta / 3.0 : 2.0 * delta / 3.0;
}

WhitneyInterval whitney_interval(int j) {
  if (j < -1000 || j > 1000) throw std::invalid_argument("whitney_interval: index out of range");
  WhitneyInterval I;
  I.j = j;
  I.alpha = whitney_alpha(j);
  I.alpha_next = whitney_alpha(j + 1);
  I.delta = I.alpha_next - I.alpha;
  I.eps = whitney_eps(j);
  I.eps_next = whitney_eps(j + 1);
  return I;
}

bool canonical_less(const LocalSineIndex& a, const LocalSineIndex& b) {
  const double da = whitney_interval(a.j).delta;
  const double db = whitney_interval(b.j).delta;
  if (da != db) return da > db;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

std::vector<int> BasisTruncation::intervals() const {
  if (!(delta_min > 0.0) || delta_min > 0.25) throw std::invalid_argument("BasisTruncation: delta_min must be in (0, 1/4]");
  if (k_max < 0) throw std::invalid_argument("BasisTruncation: k_max must be >= 0");
  std::vector<int> js;
  for (int j = 0; whitney_interval(j).delta >= delta_min; ++j) js.push_back(j);
  for (int j = -1; whitney_interval(j).delta >= delta_min; --j) js.push_back(j);
  std::sort(js.begin(), js.end(), [](int a, int b) {
    const double da = whitney_interval(a).delta, db = whitney_interval(b).delta;
    return da != db ? da > db : a < b;
  });
  return js;
}

std::vector<LocalSineIndex> BasisTruncation::indices() const {
  std::vector<LocalSineIndex> out;
  for (int j : intervals())
    for (int k = 0; k <= k_max; ++k) out.push_back({j, k});
  return out;
}

std::size_t BasisTruncation::size() const { return intervals().size() * static_cast<std::size_t>(k_max + 1); }

double eval_bell(int j, double x, const gevrey::CutoffProfile& profile) {
  return bell_value(whitney_interval(j), x, profile);
}

double eval_basis(const LocalSineIndex& idx, double x, const gevrey::CutoffProfile& profile) {
  if (idx.k < 0) throw std::invalid_argument("eval_basis: k must be >= 0");
  const WhitneyInterval I = whitney_interval(idx.j);
  const double b = bell_value(I, x, profile);
  return b == 0.0 ? 0.0 : b * sine_factor(I, idx.k, x);
}

double carrier_frequency(const LocalSineIndex& idx) { return kPi * (idx.k + 0.5) / whitney_interval(idx.j).delta; }

QuadPoints support_quadrature(int j, double max_frequency) {
  const WhitneyInterval I = whitney_interval(j);
  QuadPoints q;
  for (const auto& piece : I.pieces()) {
    const double len = piece[1] - piece[0];
    const int panels = std::max(kMinPanels, static_cast<int>(std::ceil(std::abs(max_frequency) * len / (4.0 * kPi))));
    q.append(piece[0], piece[1], panels, kPanelOrder);
  }
  return q;
}

SampledBasis sample_basis(const LocalSineIndex& idx, const gevrey::CutoffProfile& profile, double max_frequency) {
  SampledBasis s;
  s.index = idx;
  s.quad = support_quadrature(idx.j, std::max(max_frequency, carrier_frequency(idx)));
  s.weighted.resize(s.quad.size());
  for (std::size_t i = 0; i < s.quad.size(); ++i) s.weighted[i] = s.quad.w[i] * eval_basis(idx, s.quad.x[i], profile);
  return s;
}

Eigen::MatrixXd gram_matrix(std::span<const LocalSineIndex> indices, const gevrey::CutoffProfile& profile,
                            int quad_order) {
  int k_max = 0;
  for (const auto& idx : indices) {
    if (idx.k < 0) throw std::invalid_argument("gram_matrix: k must be >= 0");
    k_max = std::max(k_max, idx.k);
  }
  if (quad_order < 2 * (k_max + 1))
    throw std::invalid_argument("gram_matrix: quad_order must be at least 2 (k_max + 1)");

  const std::size_t n = indices.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  // Transition piece p sits at alpha_p and is shared by intervals p - 1 and p.
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t a = 0; a < n; ++a) {
    members[indices[a].j].push_back(a);
    members[indices[a].j + 1].push_back(a);
  }
  const GaussRule& rule = gauss_legendre(quad_order);
  for (const auto& [p, list] : members) {
    const double centre = whitney_alpha(p);
    const double half = whitney_eps(p);
    std::vector<double> x(quad_order), w(quad_order);
    for (int i = 0; i < quad_order; ++i) {
      x[i] = centre + half * rule.nodes[i];
      w[i] = half * rule.weights[i];
    }
    std::map<int, std::vector<double>> bells;
    for (int j : {p - 1, p}) {
      const WhitneyInterval I = whitney_interval(j);
      auto& b = bells[j];
      b.resize(quad_order);
      for (int i = 0; i < quad_order; ++i) b[i] = bell_value(I, x[i], profile);
    }
    std::vector<std::vector<double>> values(list.size(), std::vector<double>(quad_order));
    for (std::size_t m = 0; m < list.size(); ++m) {
      const LocalSineIndex& idx = indices[list[m]];
      const WhitneyInterval I = whitney_interval(idx.j);
      const auto& b = bells[idx.j];
      for (int i = 0; i < quad_order; ++i) values[m][i] = b[i] * sine_factor(I, idx.k, x[i]);
    }
    for (std::size_t u = 0; u < list.size(); ++u) {
      for (std::size_t v = u; v < list.size(); ++v) {
        const double s = simd::weighted_dot(w, values[u], values[v]);
        G(list[u], list[v]) += s;
        if (list[u] != list[v]) G(list[v], list[u]) += s;
      }
    }
  }
  return G;
}

double gram_deviation(const Eigen::MatrixXd& gram) {
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::complex<double> fourier_transform(const SampledBasis& sample, double xi) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < sample.quad.size(); ++i) {
    const double ph = sample.quad.x[i] * xi;
    re += sample.weighted[i] * std::cos(ph);
    im -= sample.weighted[i] * std::sin(ph);
  }
  return {re, im};
}

std::complex<double> fourier_transform(const LocalSineIndex& idx, double xi, const gevrey::CutoffProfile& profile) {
  return fourier_transform(sample_basis(idx, profile, std::abs(xi) + carrier_frequency(idx)), xi);
}

std::vector<std::complex<double>> fourier_transform_grid(const LocalSineIndex& idx, double xi0, double dxi,
                                                         std::size_t count, const gevrey::CutoffProfile& profile) {
  if (count == 0) return {};
  const double xi_end = xi0 + static_cast<double>(count - 1) * dxi;
  const SampledBasis s =
      sample_basis(idx, profile, std::max(std::abs(xi0), std::abs(xi_end)) + carrier_frequency(idx));
  std::vector<double> re(count), im(count);
  simd::uniform_dft(s.quad.x, s.weighted, xi0, dxi, re, im);
  std::vector<std::complex<double>> out(count);
  for (std::size_t m = 0; m < count; ++m) out[m] = {re[m], im[m]};
  return out;
}

double DecayEnvelope::operator()(const LocalSineIndex& idx, double xi) const {
  const double delta = whitney_interval(idx.j).delta;
  const double c = kPi * (idx.k + 0.5);
  const double t = delta * xi;
  return A * std::sqrt(delta) *
         (std::exp(-a * std::pow(std::abs(t - c), exponent)) + std::exp(-a * std::pow(std::abs(t + c), exponent)));
}

namespace {

DecayReport decay_report(const LocalSineIndex& idx, std::span<const double> xi,
                         const std::vector<std::complex<double>>& values, const DecayEnvelope& envelope,
                         bool keep_records) {
  DecayReport report;
  report.index = idx;
  report.worst = {idx.j, idx.k, 0.0, 0.0, 0.0, -1.0};
  for (std::size_t m = 0; m < xi.size(); ++m) {
    EnvelopeRecord r{idx.j, idx.k, xi[m], std::abs(values[m]), envelope(idx, xi[m]), 0.0};
    r.ratio = r.value / r.bound;
    if (r.ratio > report.worst.ratio) report.worst = r;
    if (keep_records) report.records.push_back(r);
  }
  return report;
}

}  // namespace

DecayReport verify_fourier_decay(const LocalSineIndex& idx, std::span<const double> xi_grid,
                                 const gevrey::CutoffProfile& profile, const DecayEnvelope& envelope,
                                 bool keep_records) {
  if (xi_grid.empty()) throw std::invalid_argument("verify_fourier_decay: empty grid");
  std::vector<std::complex<double>> values;
  if (is_uniform(xi_grid)) {
    const double d = (xi_grid.back() - xi_grid.front()) / static_cast<double>(xi_grid.size() - 1);
    values = fourier_transform_grid(idx, xi_grid.front(), d, xi_grid.size(), profile);
  } else {
    double reach = 0.0;
    for (double v : xi_grid) reach = std::max(reach, std::abs(v));
    const SampledBasis s = sample_basis(idx, profile, reach + carrier_frequency(idx));
    values.reserve(xi_grid.size());
    for (double v : xi_grid) values.push_back(fourier_transform(s, v));
  }
  return decay_report(idx, xi_grid, values, envelope, keep_records);
}

DecayReport verify_fourier_decay(const LocalSineIndex& idx, double xi_min, double xi_max, std::size_t count,
                                 const gevrey::CutoffProfile& profile, const DecayEnvelope& envelope,
                                 bool keep_records) {
  if (count < 2 || !(xi_max > xi_min)) throw std::invalid_argument("verify_fourier_decay: bad grid");
  std::vector<double> xi(count);
  const double d = (xi_max - xi_min) / static_cast<double>(count - 1);
  for (std::size_t m = 0; m < count; ++m) xi[m] = xi_min + static_cast<double>(m) * d;
  const auto values = fourier_transform_grid(idx, xi_min, d, count, profile);
  return decay_report(idx, xi, values, envelope, keep_records);
}

double fit_decay_rate(std::span<const LocalSineIndex> indices, const gevrey::CutoffProfile& profile, double A,
                      double exponent, double span, std::size_t count) {
  struct Sampled {
    LocalSineIndex idx;
    std::vector<double> xi, mag;
  };
  std::vector<Sampled> data;
  for (const auto& idx : indices) {
    const double delta = whitney_interval(idx.j).delta;
    const double lo = -span / delta, d = 2.0 * span / delta / static_cast<double>(count - 1);
    const auto values = fourier_transform_grid(idx, lo, d, count, profile);
    Sampled s{idx, {}, {}};
    for (std::size_t m = 0; m < count; ++m) {
      s.xi.push_back(lo + static_cast<double>(m) * d);
      s.mag.push_back(std::abs(values[m]));
    }
    data.push_back(std::move(s));
  }
  auto dominated = [&](double a) {
    const DecayEnvelope env{A, a, exponent};
    for (const auto& s : data)
      for (std::size_t m = 0; m < s.xi.size(); ++m)
        if (s.mag[m] > env(s.idx, s.xi[m])) return false;
    return true;
  };
  if (!dominated(0.0)) throw std::domain_error("fit_decay_rate: amplitude A too small for any rate");
  double lo = 0.0, hi = 1.0;
  while (dominated(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) return lo;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dominated(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace sslo::localsine
