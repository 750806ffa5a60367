#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"
#include "sslo/simd/kernels.hpp"
#include "sslo/sslo_spectrum.hpp"

namespace sslo::spectrum {

using localsine::LocalSineIndex;

namespace {

struct Action1d {
  double t_norm2 = 0.0;
  double overlap = 0.0;
  double norm2 = 0.0;
};

// B psi(x) = int psi(y) sin(R (x - y)) / (pi (x - y)) dy, evaluated on the Q grid and,
// when asked, on the support nodes of psi for <psi, B psi>.
Action1d act_1d(const LocalSineIndex& idx, double R, const gevrey::CutoffProfile& profile, const NystromGrid& grid,
                bool with_overlap) {
  const auto s = localsine::sample_basis(idx, profile, localsine::carrier_frequency(idx) + R);
  const simd::SincTable table(R, s.quad.x);
  Action1d a;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double v = simd::sinc_apply(table, grid.nodes[i], s.weighted);
    a.t_norm2 += grid.weights[i] * v * v;
  }
  for (std::size_t y = 0; y < s.quad.size(); ++y) a.norm2 += s.weighted[y] * s.weighted[y] / s.quad.w[y];
  if (with_overlap)
    for (std::size_t y = 0; y < s.quad.size(); ++y) a.overlap += s.weighted[y] * simd::sinc_apply(table, s.quad.x[y], s.weighted);
  return a;
}

// B psi on xs1 x xs2 for psi = phi1 (x) phi2: Fourier quadrature across xi_1 combined with
// the spatial sinc kernel along each chord of S(r).
Eigen::MatrixXd act_2d(const packets::PacketIndex& nu, const geometry::ConvexBody& body, double r,
                       const gevrey::CutoffProfile& profile, const std::vector<double>& xs1,
                       const std::vector<double>& xs2) {
  const LocalSineIndex i1 = nu.axis(0), i2 = nu.axis(1);
  const double R1 = r * body.axis_extent(0), R2 = r * body.axis_extent(1);
  const auto s1 = localsine::sample_basis(i1, profile, localsine::carrier_frequency(i1) + R1);
  const auto s2 = localsine::sample_basis(i2, profile, localsine::carrier_frequency(i2) + R2);

  // xi_1 = R1 sin(t), t in [-pi/2, pi/2], split at 0.
  const int panels = static_cast<int>(std::ceil(R1 / (2.0 * kPi))) + 4;
  QuadPoints q = composite_gauss(-0.5 * kPi, 0.0, panels, 32);
  q.append(0.0, 0.5 * kPi, panels, 32);

  const std::size_t n1 = xs1.size(), n2 = xs2.size();
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2));
  std::vector<double> v(n2);
  for (std::size_t a = 0; a < q.size(); ++a) {
    const double xi1 = R1 * std::sin(q.x[a]);
    const double chord = r * body.half_chord(xi1 / r);
    if (chord <= 0.0) continue;
    const std::complex<double> c = q.w[a] * R1 * std::cos(q.x[a]) * localsine::fourier_transform(s1, xi1);
    const simd::SincTable table(chord, s2.quad.x);
    for (std::size_t b = 0; b < n2; ++b) v[b] = simd::sinc_apply(table, xs2[b], s2.weighted);
    for (std::size_t i = 0; i < n1; ++i) {
      const double f = (c * std::polar(1.0, xs1[i] * xi1)).real() / (2.0 * kPi);
      for (std::size_t b = 0; b < n2; ++b) re(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) += f * v[b];
    }
  }
  return re;
}

}  // namespace

PacketAction apply_operator_to_packet(const packets::PacketIndex& nu, const geometry::ConvexBody& body, double r,
                                      const gevrey::CutoffProfile& profile, int n) {
  if (nu.dim() != body.dim()) throw std::invalid_argument("apply_operator_to_packet: dimension mismatch");
  if (nu.dim() > 2) throw std::invalid_argument("apply_operator_to_packet: d must be <= 2");
  if (!(r > 0.0)) throw std::invalid_argument("apply_operator_to_packet: r must be positive");
  const NystromGrid grid = NystromGrid::gauss_legendre(n);
  PacketAction out;
  double t2 = 0.0, overlap = 0.0, norm2 = 0.0;
  if (nu.dim() == 1) {
    const Action1d a = act_1d(nu.axis(0), r * body.axis_extent(0), profile, grid, true);
    t2 = a.t_norm2;
    overlap = a.overlap;
    norm2 = a.norm2;
  } else {
    const Eigen::MatrixXd on_grid = act_2d(nu, body, r, profile, grid.nodes, grid.nodes);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t2 += grid.weights[i] * grid.weights[j] * on_grid(i, j) * on_grid(i, j);
    const auto s1 = localsine::sample_basis(nu.axis(0), profile, localsine::carrier_frequency(nu.axis(0)));
    const auto s2 = localsine::sample_basis(nu.axis(1), profile, localsine::carrier_frequency(nu.axis(1)));
    const Eigen::MatrixXd on_support = act_2d(nu, body, r, profile, s1.quad.x, s2.quad.x);
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < s1.quad.size(); ++i) n1 += s1.weighted[i] * s1.weighted[i] / s1.quad.w[i];
    for (std::size_t j = 0; j < s2.quad.size(); ++j) n2 += s2.weighted[j] * s2.weighted[j] / s2.quad.w[j];
    norm2 = n1 * n2;
    for (std::size_t i = 0; i < s1.quad.size(); ++i)
      for (std::size_t j = 0; j < s2.quad.size(); ++j)
        overlap += s1.weighted[i] * s2.weighted[j] *
                   on_support(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  out.norm_psi = std::sqrt(norm2);
  out.overlap = overlap;
  out.norm_T_psi = std::sqrt(t2);
  out.norm_ImT_psi = std::sqrt(std::max(0.0, norm2 - 2.0 * overlap + t2));
  return out;
}

std::vector<EnergyLoss> energy_loss_sweep(const geometry::ConvexBody& body, double r,
                                          const std::vector<packets::IndexPartition>& partitions,
                                          const localsine::BasisTruncation& trunc,
                                          const gevrey::CutoffProfile& profile, int n, bool with_bound,
                                          unsigned threads) {
  if (body.dim() != 1) throw std::invalid_argument("energy_loss_sweep: one-dimensional bodies only");
  for (const auto& p : partitions)
    if (p.d != 1 || p.r != r) throw std::invalid_argument("energy_loss_sweep: partitions must share d = 1 and r");
  const double R = r * body.axis_extent(0);
  const NystromGrid grid = NystromGrid::gauss_legendre(n);
  const std::vector<LocalSineIndex> all = trunc.indices();

  std::map<LocalSineIndex, std::size_t> position;
  for (std::size_t i = 0; i < all.size(); ++i) position[all[i]] = i;
  // 0 = Hi, 1 = Res, 2 = Low, per partition and index.
  std::vector<std::vector<unsigned char>> label(partitions.size(), std::vector<unsigned char>(all.size(), 0));
  std::vector<char> needs_overlap(all.size(), 0);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    auto mark = [&](const std::vector<packets::PacketIndex>& list, unsigned char value) {
      for (const auto& nu : list) {
        const auto it = position.find(nu.axis(0));
        if (it == position.end()) throw std::invalid_argument("energy_loss_sweep: partition index outside truncation");
        label[p][it->second] = value;
        if (value == 2) needs_overlap[it->second] = 1;
      }
    };
    mark(partitions[p].res, 1);
    mark(partitions[p].low, 2);
  }

  std::vector<Action1d> act(all.size());
  std::vector<packets::EnergySplit> split(with_bound ? all.size() : 0);
  parallel_for(
      all.size(),
      [&](std::size_t i) {
        act[i] = act_1d(all[i], R, profile, grid, needs_overlap[i] != 0);
        if (with_bound) split[i] = packets::packet_energy_split(packets::make_index({all[i].j}, {all[i].k}), body, r, profile);
      },
      threads);

  std::vector<EnergyLoss> out(partitions.size());
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    EnergyLoss& e = out[p];
    e.has_bound = with_bound;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (label[p][i] == 0) {
        e.hi_part += act[i].t_norm2;
        ++e.hi_terms;
        if (with_bound) e.bound += split[i].inside;
      } else if (label[p][i] == 2) {
        e.low_part += std::max(0.0, act[i].norm2 - 2.0 * act[i].overlap + act[i].t_norm2);
        ++e.low_terms;
        if (with_bound) e.bound += split[i].outside;
      }
    }
    e.total = e.hi_part + e.low_part;
  }
  return out;
}

}  // namespace sslo::spectrum
