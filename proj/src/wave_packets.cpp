#include "sslo/wave_packets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"

namespace sslo::packets {

using localsine::LocalSineIndex;
using localsine::whitney_interval;

namespace {

constexpr int kOrder = 32;
// Fourier tails beyond carrier + kTailReach / delta are below 1e-12 in energy.
constexpr double kTailReach = 200.0;

void check_index(const PacketIndex& nu) {
  if (nu.j.empty() || nu.j.size() != nu.k.size()) throw std::invalid_argument("PacketIndex: j and k must have equal positive length");
  for (int k : nu.k)
    if (k < 0) throw std::invalid_argument("PacketIndex: k must be >= 0");
}

int panels_for(double length, double rate) {
  return std::max(4, static_cast<int>(std::ceil(length * rate / (4.0 * kPi))));
}

double support_length(int j) {
  const auto I = whitney_interval(j);
  return I.support_hi() - I.support_lo();
}

// |hat phi|^2 integrated over [a, b] on panels resolving the autocorrelation length.
double energy_on(const localsine::SampledBasis& s, double a, double b) {
  if (!(b > a)) return 0.0;
  const QuadPoints q = composite_gauss(a, b, panels_for(b - a, support_length(s.index.j)), kOrder);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.w[i] * std::norm(localsine::fourier_transform(s, q.x[i]));
  return acc;
}

double tail_end(const LocalSineIndex& idx) {
  return localsine::carrier_frequency(idx) + kTailReach / whitney_interval(idx.j).delta;
}

}  // namespace

double PacketIndex::min_delta() const {
  double m = 1.0;
  for (int jj : j) m = std::min(m, whitney_interval(jj).delta);
  return m;
}

double PacketIndex::measure() const {
  double m = 1.0;
  for (int jj : j) m *= whitney_interval(jj).delta;
  return m;
}

PacketIndex make_index(std::vector<int> j, std::vector<int> k) {
  PacketIndex nu{std::move(j), std::move(k)};
  check_index(nu);
  return nu;
}

bool canonical_less(const PacketIndex& a, const PacketIndex& b) {
  const std::size_t n = std::min(a.j.size(), b.j.size());
  for (std::size_t i = 0; i < n; ++i) {
    const LocalSineIndex x{a.j[i], a.k[i]}, y{b.j[i], b.k[i]};
    if (localsine::canonical_less(x, y)) return true;
    if (localsine::canonical_less(y, x)) return false;
  }
  return a.j.size() < b.j.size();
}

std::string to_string(const PacketIndex& nu) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < nu.dim(); ++i) os << (i ? ", " : "") << nu.j[i] << ':' << nu.k[i];
  os << ')';
  return os.str();
}

std::vector<double> FrequencyBox::min_magnitude_corner() const {
  std::vector<double> c(center.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::max(center[i] - halfwidth[i], 0.0);
  return c;
}

std::vector<double> FrequencyBox::max_magnitude_corner() const {
  std::vector<double> c(center.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = center[i] + halfwidth[i];
  return c;
}

FrequencyBox frequency_box(const PacketIndex& nu, double eta) {
  check_index(nu);
  if (!(eta > 0.0)) throw std::invalid_argument("frequency_box: eta must be positive");
  FrequencyBox box;
  box.eta = eta;
  for (int i = 0; i < nu.dim(); ++i) {
    const double delta = whitney_interval(nu.j[i]).delta;
    box.center.push_back(kPi * (nu.k[i] + 0.5) / delta);
    box.halfwidth.push_back(eta / delta);
  }
  return box;
}

double eval_packet(const PacketIndex& nu, std::span<const double> x, const gevrey::CutoffProfile& profile) {
  check_index(nu);
  if (static_cast<int>(x.size()) != nu.dim()) throw std::invalid_argument("eval_packet: dimension mismatch");
  double v = 1.0;
  for (int i = 0; i < nu.dim() && v != 0.0; ++i) v *= localsine::eval_basis(nu.axis(i), x[i], profile);
  return v;
}

std::complex<double> packet_fourier_transform(const PacketIndex& nu, std::span<const double> xi,
                                              const gevrey::CutoffProfile& profile) {
  check_index(nu);
  if (static_cast<int>(xi.size()) != nu.dim()) throw std::invalid_argument("packet_fourier_transform: dimension mismatch");
  std::complex<double> v = 1.0;
  for (int i = 0; i < nu.dim(); ++i) v *= localsine::fourier_transform(nu.axis(i), xi[i], profile);
  return v;
}

double packet_fourier_envelope(const PacketIndex& nu, std::span<const double> xi, const localsine::DecayEnvelope& env) {
  check_index(nu);
  const int d = nu.dim();
  if (static_cast<int>(xi.size()) != d) throw std::invalid_argument("packet_fourier_envelope: dimension mismatch");
  std::vector<double> tau(d);
  for (int i = 0; i < d; ++i) tau[i] = whitney_interval(nu.j[i]).delta * xi[i] / kPi;
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double sigma = (mask >> i) & 1u ? -1.0 : 1.0;
      const double diff = tau[i] - sigma * (nu.k[i] + 0.5);
      r2 += diff * diff;
    }
    sum += geometry::envelope(2.0 * env.a, kPi * std::sqrt(r2), env.exponent);
  }
  return std::ldexp(1.0, d) * std::pow(env.A, 2 * d) * nu.measure() * sum;
}

double eta_of_delta(double delta, double a) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::domain_error("eta_of_delta: delta must lie in (0, 1/2)");
  if (!(a > 0.0)) throw std::domain_error("eta_of_delta: a must be positive");
  return 125.0 * std::pow(std::log(1.0 / delta) / a, 1.5);
}

std::string_view label_name(Label l) {
  switch (l) {
    case Label::Low:
      return "low";
    case Label::Res:
      return "res";
    case Label::Hi:
      return "hi";
  }
  return "?";
}

namespace {

void check_partition_args(const geometry::ConvexBody& body, double r, double delta, double eta) {
  if (!body.within_unit_ball()) throw std::invalid_argument("partition: body must lie in the unit ball");
  if (!(r >= 1.0)) throw std::invalid_argument("partition: dilation r must be >= 1");
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("partition: delta must lie in (0, 1/2)");
  if (!(eta > 0.0)) throw std::invalid_argument("partition: eta must be positive");
}

// Per-axis data of one 1-D index: thinness and the magnitude range of its box.
struct AxisEntry {
  int j;
  int k;
  bool thin;
  double lo;
  double hi;
};

Label classify_corners(const geometry::ConvexBody& body, double r, std::span<const double> lo,
                       std::span<const double> hi) {
  if (body.gauge(hi) < r) return Label::Low;
  if (body.gauge(lo) > r) return Label::Hi;
  return Label::Res;
}

}  // namespace

Label classify_index(const PacketIndex& nu, const geometry::ConvexBody& body, double r, double delta, double eta) {
  check_index(nu);
  check_partition_args(body, r, delta, eta);
  if (nu.dim() != body.dim()) throw std::invalid_argument("classify_index: dimension mismatch");
  if (nu.min_delta() <= delta / r) return Label::Hi;
  const FrequencyBox box = frequency_box(nu, eta);
  for (double c : box.center)
    if (!(c > 0.0) || !std::isfinite(c)) throw std::logic_error("classify_index: corrupted frequency box");
  return classify_corners(body, r, box.min_magnitude_corner(), box.max_magnitude_corner());
}

IndexPartition enumerate_partition(const geometry::ConvexBody& body, double r, double delta, double eta,
                                   const localsine::BasisTruncation& trunc, unsigned threads) {
  check_partition_args(body, r, delta, eta);
  const int d = body.dim();
  if (d > 3) throw std::invalid_argument("enumerate_partition: d must be <= 3");
  if (trunc.delta_min > delta / r)
    throw std::invalid_argument("enumerate_partition: truncation delta_min must be <= delta / r");

  IndexPartition part;
  part.d = d;
  part.r = r;
  part.delta = delta;
  part.eta = eta;
  part.body = body.to_json();

  std::vector<AxisEntry> axis;
  for (int j : trunc.intervals()) {
    const double dj = whitney_interval(j).delta;
    const bool thin = dj <= delta / r;
    for (int k = 0; k <= trunc.k_max; ++k) {
      const double c = kPi * (k + 0.5) / dj;
      axis.push_back({j, k, thin, std::max(c - eta / dj, 0.0), c + eta / dj});
    }
    // The first index past the truncation must already be disjoint from S(r) on every axis.
    const double next_lo = (kPi * (trunc.k_max + 1.5) - eta) / dj;
    for (int i = 0; i < d && !thin; ++i) {
      if (next_lo <= r * body.axis_extent(i)) {
        std::ostringstream os;
        os << "k_max=" << trunc.k_max << " too small for interval j=" << j << " on axis " << i;
        part.warnings.push_back(os.str());
        break;
      }
    }
  }

  const std::size_t m = axis.size();
  struct Slot {
    std::vector<PacketIndex> low, res;
    std::uint64_t hi = 0;
  };
  std::vector<Slot> slots(m);
  parallel_for(
      m,
      [&](std::size_t first) {
        Slot& slot = slots[first];
        std::vector<std::size_t> pos(d, 0);
        pos[0] = first;
        std::vector<double> lo(d), hi(d);
        while (true) {
          bool thin = false;
          for (int i = 0; i < d; ++i) {
            const AxisEntry& e = axis[pos[i]];
            thin = thin || e.thin;
            lo[i] = e.lo;
            hi[i] = e.hi;
          }
          const Label l = thin ? Label::Hi : classify_corners(body, r, lo, hi);
          if (l == Label::Hi) {
            ++slot.hi;
          } else {
            PacketIndex nu;
            for (int i = 0; i < d; ++i) {
              nu.j.push_back(axis[pos[i]].j);
              nu.k.push_back(axis[pos[i]].k);
            }
            (l == Label::Low ? slot.low : slot.res).push_back(std::move(nu));
          }
          int a = 1;
          while (a < d && ++pos[a] == m) {
            pos[a] = 0;
            ++a;
          }
          if (a >= d) break;
        }
      },
      threads);

  for (auto& s : slots) {
    part.low.insert(part.low.end(), s.low.begin(), s.low.end());
    part.res.insert(part.res.end(), s.res.begin(), s.res.end());
    part.hi_count += s.hi;
  }
  std::sort(part.low.begin(), part.low.end(), canonical_less);
  std::sort(part.res.begin(), part.res.end(), canonical_less);
  part.total = part.low.size() + part.res.size() + part.hi_count;
  part.expected_low = body.volume(r) / std::pow(2.0 * kPi, d);
  part.deviation = std::abs(static_cast<double>(part.low.size()) - part.expected_low);
  return part;
}

nlohmann::json IndexPartition::to_json() const {
  auto list = [](const std::vector<PacketIndex>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& nu : v) arr.push_back({{"j", nu.j}, {"k", nu.k}});
    return arr;
  };
  return {
      {"params", {{"d", d}, {"r", r}, {"delta", delta}, {"eta", eta}, {"body", body}}},
      {"counts", {{"low", low.size()}, {"res", res.size()}, {"hi", hi_count}}},
      {"total", total},
      {"expected_low", expected_low},
      {"deviation", deviation},
      {"res_indices", list(res)},
      {"low_indices", list(low)},
      {"warnings", warnings},
  };
}

EnergySplit packet_energy_split(const PacketIndex& nu, const geometry::ConvexBody& body, double r,
                                const gevrey::CutoffProfile& profile) {
  check_index(nu);
  const int d = nu.dim();
  if (d != body.dim()) throw std::invalid_argument("packet_energy_split: dimension mismatch");
  if (d > 2) throw std::invalid_argument("packet_energy_split: direct quadrature supports d <= 2");
  if (!(r > 0.0)) throw std::invalid_argument("packet_energy_split: r must be positive");

  EnergySplit out;
  if (d == 1) {
    const LocalSineIndex idx = nu.axis(0);
    const double R = r * body.axis_extent(0);
    const double end = std::max(tail_end(idx), R);
    const auto s = localsine::sample_basis(idx, profile, end + localsine::carrier_frequency(idx));
    // |hat phi| is even for real phi.
    out.inside = 2.0 * energy_on(s, 0.0, R) / (2.0 * kPi);
    out.outside = 2.0 * energy_on(s, R, end) / (2.0 * kPi);
    out.total = out.inside + out.outside;
  } else {
    const LocalSineIndex i1 = nu.axis(0), i2 = nu.axis(1);
    const double R1 = r * body.axis_extent(0);
    const double R2 = r * body.axis_extent(1);
    const double end1 = std::max(tail_end(i1), R1), end2 = std::max(tail_end(i2), R2);
    const auto s1 = localsine::sample_basis(i1, profile, end1 + localsine::carrier_frequency(i1));
    const auto s2 = localsine::sample_basis(i2, profile, end2 + localsine::carrier_frequency(i2));
    const double l1 = support_length(i1.j), l2 = support_length(i2.j);

    // Cumulative G2(t) = int_0^t |hat phi_2|^2 at panel boundaries, completed on demand.
    const double panel = 4.0 * kPi / l2;
    const int n_panels = static_cast<int>(std::ceil(R2 / panel)) + 1;
    std::vector<double> cumulative(n_panels + 1, 0.0);
    const GaussRule& rule = gauss_legendre(kOrder);
    auto partial = [&](double a, double b) {
      double acc = 0.0;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = 0; q < kOrder; ++q)
        acc += half * rule.weights[q] * std::norm(localsine::fourier_transform(s2, mid + half * rule.nodes[q]));
      return acc;
    };
    for (int p = 0; p < n_panels; ++p) cumulative[p + 1] = cumulative[p] + partial(p * panel, (p + 1) * panel);
    auto G2 = [&](double t) {
      if (t <= 0.0) return 0.0;
      const int p = std::min(static_cast<int>(t / panel), n_panels - 1);
      return cumulative[p] + partial(p * panel, t);
    };

    // xi_1 = R1 sin(t) removes square-root endpoint behaviour of round bodies.
    const QuadPoints q = composite_gauss(0.0, 0.5 * kPi, panels_for(R1, l1), kOrder);
    double inside = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double x1 = R1 * std::sin(q.x[i]);
      const double h = r * body.half_chord(x1 / r);
      if (h <= 0.0) continue;
      inside += q.w[i] * R1 * std::cos(q.x[i]) * std::norm(localsine::fourier_transform(s1, x1)) * G2(h);
    }
    out.inside = 4.0 * inside / (4.0 * kPi * kPi);
    const double t1 = 2.0 * energy_on(s1, 0.0, end1) / (2.0 * kPi);
    const double t2 = 2.0 * energy_on(s2, 0.0, end2) / (2.0 * kPi);
    out.total = t1 * t2;
    out.outside = out.total - out.inside;
  }
  if (std::abs(out.total - 1.0) > 1e-4)
    throw ConvergenceError("packet_energy_split: Plancherel check failed for " + to_string(nu));
  return out;
}

}  // namespace sslo::packets
