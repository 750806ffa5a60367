#include "sslo/sslo_spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "sslo/bessel.hpp"
#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"
#include "sslo/simd/kernels.hpp"

namespace sslo::spectrum {

namespace {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void compare_leading(EigenSequence& coarse, const EigenSequence& fine, std::size_t count) {
  count = std::min({count, coarse.values.size(), fine.values.size()});
  double drift = 0.0;
  for (std::size_t k = 0; k < count; ++k) drift = std::max(drift, std::abs(coarse.values[k] - fine.values[k]));
  coarse.convergence_delta = drift;
  coarse.converged = drift <= 1e-8;
  if (!coarse.converged) {
    std::ostringstream os;
    os << "leading eigenvalues drift by " << drift << " between n=" << coarse.resolution << " and n=" << fine.resolution;
    coarse.warnings.push_back(os.str());
  }
}

}  // namespace

NystromGrid NystromGrid::gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("NystromGrid: n must be positive");
  if (!(b > a)) throw std::invalid_argument("NystromGrid: empty interval");
  const GaussRule& rule = sslo::gauss_legendre(n);
  NystromGrid g;
  g.order = n;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
    g.weights[i] = 0.5 * (b - a) * rule.weights[i];
  }
  return g;
}

double EigenSequence::trace() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

EigenSequence finalize_spectrum(std::vector<double> raw, int resolution, double clip_tolerance) {
  EigenSequence out;
  out.resolution = resolution;
  for (double& v : raw) {
    if (!std::isfinite(v)) throw std::range_error("eigenvalue is not finite");
    const double c = std::clamp(v, 0.0, 1.0);
    const double clip = std::abs(c - v);
    if (clip > 0.0) {
      ++out.clamp.clipped;
      out.clamp.max_clip = std::max(out.clamp.max_clip, clip);
    }
    v = c;
  }
  if (out.clamp.max_clip > clip_tolerance) {
    std::ostringstream os;
    os << "eigenvalue clamp of " << out.clamp.max_clip << " exceeds " << clip_tolerance;
    throw std::range_error(os.str());
  }
  std::sort(raw.begin(), raw.end(), std::greater<>());
  out.values = std::move(raw);
  return out;
}

double sinc_kernel(double W, double x, double y) {
  const double d = x - y;
  if (std::abs(d) < 1e-12) return W / kPi;
  return std::sin(W * d) / (kPi * d);
}

EigenSequence eigs_1d(double W, int n, bool check_convergence) {
  if (!(W > 0.0)) throw std::invalid_argument("eigs_1d: W must be positive");
  if (n < 64) throw std::invalid_argument("eigs_1d: n must be >= 64");
  const NystromGrid g = NystromGrid::gauss_legendre(n);
  const simd::SincTable table(W, g.nodes);
  Eigen::MatrixXd A(n, n);
  std::vector<double> row(n), sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(g.weights[i]);
  for (int i = 0; i < n; ++i) {
    simd::sinc_row(table, g.nodes[i], row);
    for (int j = 0; j < n; ++j) A(j, i) = sw[i] * row[j] * sw[j];
  }
  EigenSequence out = finalize_spectrum(symmetric_eigenvalues(A), n);
  if (check_convergence) {
    const EigenSequence fine = eigs_1d(W, 2 * n, false);
    compare_leading(out, fine, static_cast<std::size_t>(std::ceil(W / kPi)) + 10);
  }
  return out;
}

EigenSequence eigs_interval(double a, double b, double band_lo, double band_hi, int n) {
  if (!(b > a)) throw std::invalid_argument("eigs_interval: empty space interval");
  if (!(band_hi > band_lo)) throw std::invalid_argument("eigs_interval: empty frequency band");
  if (n < 16) throw std::invalid_argument("eigs_interval: n must be >= 16");
  const NystromGrid g = NystromGrid::gauss_legendre(n, a, b);
  const double reach = std::max(std::abs(band_lo), std::abs(band_hi));
  // (1 / 2 pi) int_lo^hi e^{i u xi} d xi
  auto kernel = [&](double u) -> std::complex<double> {
    if (std::abs(u) * reach < 1e-3) {
      std::complex<double> s = 0.0, iu_pow = 1.0;
      double fact = 1.0, hp = band_hi, lp = band_lo;
      for (int m = 0; m < 8; ++m) {
        s += iu_pow * (hp - lp) / ((m + 1.0) * fact);
        iu_pow *= std::complex<double>(0.0, u);
        fact *= m + 1.0;
        hp *= band_hi;
        lp *= band_lo;
      }
      return s / (2.0 * kPi);
    }
    const std::complex<double> num = std::polar(1.0, band_hi * u) - std::polar(1.0, band_lo * u);
    return num / (std::complex<double>(0.0, 2.0 * kPi * u));
  };
  std::vector<double> raw;
  if (band_lo == -band_hi) {
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        A(i, j) = std::sqrt(g.weights[i] * g.weights[j]) * sinc_kernel(band_hi, g.nodes[i], g.nodes[j]);
    raw = symmetric_eigenvalues(A);
  } else {
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = std::sqrt(g.weights[i] * g.weights[j]) * kernel(g.nodes[i] - g.nodes[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("hermitian eigensolver did not converge");
    raw.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  }
  return finalize_spectrum(std::move(raw), n);
}

EigenSequence eigs_cube_tensor(double W, int d, int n, std::size_t count) {
  if (d < 1 || d > 8) throw std::invalid_argument("eigs_cube_tensor: d must be in [1, 8]");
  if (count > 1000000) throw std::invalid_argument("eigs_cube_tensor: count must be <= 1e6");
  const EigenSequence base = eigs_1d(W, n, false);
  if (d == 1) {
    EigenSequence out = base;
    if (out.values.size() > count) out.values.resize(count);
    return out;
  }
  const std::vector<double>& lam = base.values;
  const double top = std::pow(lam[0], d - 1);
  std::size_t keep = 0;
  while (keep < lam.size() && lam[keep] * top >= 1e-14) ++keep;
  EigenSequence out;
  out.resolution = n;
  out.clamp = base.clamp;
  if (keep == lam.size()) out.warnings.push_back("tensor truncation: dropped products may exceed 1e-14");
  keep = std::max<std::size_t>(keep, 1);
  if (std::pow(static_cast<double>(keep), d) > 5e7) throw std::length_error("eigs_cube_tensor: too many products");
  std::vector<double> products{1.0};
  for (int axis = 0; axis < d; ++axis) {
    std::vector<double> next;
    next.reserve(products.size() * keep);
    for (double p : products)
      for (std::size_t l = 0; l < keep; ++l) next.push_back(p * lam[l]);
    products = std::move(next);
  }
  const std::size_t m = std::min(count, products.size());
  std::partial_sort(products.begin(), products.begin() + static_cast<std::ptrdiff_t>(m), products.end(),
                    std::greater<>());
  products.resize(m);
  out.values = std::move(products);
  return out;
}

double disc_kernel(double r, double u) {
  if (!(r > 0.0)) throw std::invalid_argument("disc_kernel: r must be positive");
  u = std::abs(u);
  const double z = r * u;
  if (z < 1e-4) {
    const double z2 = z * z;
    return r * r / (4.0 * kPi) * (1.0 - z2 / 8.0 + z2 * z2 / 192.0);
  }
  return r * special::bessel_j1(z) / (2.0 * kPi * u);
}

namespace {

// h(u) of an oracle body on |u_i| <= 1, tabulated and bilinearly interpolated.
class TabulatedKernel {
 public:
  TabulatedKernel(const geometry::ConvexBody& body, double r) {
    const double R1 = r * body.axis_extent(0);
    grid_ = std::max(129, static_cast<int>(16.0 * r) + 1);
    step_ = 1.0 / (grid_ - 1);
    // xi_1 = R1 sin(t) on [0, pi/2]; the kernel is even in each coordinate.
    const QuadPoints q = composite_gauss(0.0, 0.5 * kPi, std::max(16, static_cast<int>(R1 / 2.0)), 16);
    std::vector<double> xi(q.size()), w(q.size()), chord(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      xi[i] = R1 * std::sin(q.x[i]);
      w[i] = q.w[i] * R1 * std::cos(q.x[i]);
      chord[i] = std::max(0.0, r * body.half_chord(xi[i] / r));
    }
    table_.assign(static_cast<std::size_t>(grid_) * grid_, 0.0);
    for (int a = 0; a < grid_; ++a) {
      const double u1 = a * step_;
      for (int b = 0; b < grid_; ++b) {
        const double u2 = b * step_;
        double s = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) {
          const double inner = u2 == 0.0 ? 2.0 * chord[i] : 2.0 * std::sin(u2 * chord[i]) / u2;
          s += w[i] * std::cos(u1 * xi[i]) * inner;
        }
        table_[static_cast<std::size_t>(a) * grid_ + b] = 2.0 * s / (4.0 * kPi * kPi);
      }
    }
  }

  double operator()(double u1, double u2) const {
    const double p = std::min(std::abs(u1), 1.0) / step_, q = std::min(std::abs(u2), 1.0) / step_;
    const int a = std::min(static_cast<int>(p), grid_ - 2), b = std::min(static_cast<int>(q), grid_ - 2);
    const double fa = p - a, fb = q - b;
    auto at = [&](int i, int j) { return table_[static_cast<std::size_t>(i) * grid_ + j]; };
    return (1 - fa) * ((1 - fb) * at(a, b) + fb * at(a, b + 1)) + fa * ((1 - fb) * at(a + 1, b) + fb * at(a + 1, b + 1));
  }

 private:
  int grid_;
  double step_;
  std::vector<double> table_;
};

}  // namespace

std::function<double(double, double)> body_kernel_2d(const geometry::ConvexBody& body, double r) {
  if (body.dim() != 2) throw std::invalid_argument("body_kernel_2d: planar body required");
  if (!(r > 0.0)) throw std::invalid_argument("body_kernel_2d: r must be positive");
  const nlohmann::json spec = body.to_json();
  switch (body.kind()) {
    case geometry::BodyKind::Ball: {
      const double R = r * spec["radius"].get<double>();
      return [R](double u1, double u2) { return disc_kernel(R, std::hypot(u1, u2)); };
    }
    case geometry::BodyKind::Cube: {
      const double H = r * spec["halfwidth"].get<double>();
      return [H](double u1, double u2) { return sinc_kernel(H, u1, 0.0) * sinc_kernel(H, u2, 0.0); };
    }
    case geometry::BodyKind::L1Ball: {
      // The l1 ball is a square rotated by 45 degrees with half-width R / sqrt 2.
      const double c = r * spec["radius"].get<double>() / std::sqrt(2.0);
      return [c](double u1, double u2) {
        return sinc_kernel(c, (u1 + u2) / std::sqrt(2.0), 0.0) * sinc_kernel(c, (u1 - u2) / std::sqrt(2.0), 0.0);
      };
    }
    case geometry::BodyKind::Ellipsoid: {
      const double a = r * spec["radii"][0].get<double>(), b = r * spec["radii"][1].get<double>();
      return [a, b](double u1, double u2) { return a * b * disc_kernel(1.0, std::hypot(a * u1, b * u2)); };
    }
    case geometry::BodyKind::Oracle: {
      auto table = std::make_shared<TabulatedKernel>(body, r);
      return [table](double u1, double u2) { return (*table)(u1, u2); };
    }
  }
  throw std::invalid_argument("body_kernel_2d: unsupported body");
}

EigenSequence eigs_body_2d(const geometry::ConvexBody& body, double r, const Nystrom2dOptions& opt) {
  const int n = opt.n;
  if (n < 8 || n > 128) throw std::invalid_argument("eigs_body_2d: n per axis must be in [8, 128]");
  if (opt.use_parity && n % 2 != 0) throw std::invalid_argument("eigs_body_2d: parity split needs even n");
  if (r > 64.0) throw std::invalid_argument("eigs_body_2d: r must be <= 64");
  const auto h = body_kernel_2d(body, r);
  const NystromGrid g = NystromGrid::gauss_legendre(n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(g.weights[i]);

  std::vector<double> raw;
  if (!opt.use_parity) {
    const int N = n * n;
    Eigen::MatrixXd A(N, N);
    parallel_for(
        static_cast<std::size_t>(N),
        [&](std::size_t col) {
          const int j1 = static_cast<int>(col) / n, j2 = static_cast<int>(col) % n;
          for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
              A(i1 * n + i2, static_cast<Eigen::Index>(col)) =
                  sw[i1] * sw[i2] * sw[j1] * sw[j2] * h(g.nodes[i1] - g.nodes[j1], g.nodes[i2] - g.nodes[j2]);
        },
        opt.threads);
    raw = symmetric_eigenvalues(A);
  } else {
    // Nodes are symmetric about 1/2, so (e_i +- e_{n-1-i}) / sqrt 2 per axis block-diagonalizes the
    // matrix into four parity sectors of size (n/2)^2.
    const int half = n / 2, M = half * half;
    std::vector<Eigen::MatrixXd> blocks(4, Eigen::MatrixXd(M, M));
    parallel_for(
        static_cast<std::size_t>(M),
        [&](std::size_t col) {
          const int j1 = static_cast<int>(col) / half, j2 = static_cast<int>(col) % half;
          const double yj1[2] = {g.nodes[j1], g.nodes[n - 1 - j1]};
          const double yj2[2] = {g.nodes[j2], g.nodes[n - 1 - j2]};
          for (int i1 = 0; i1 < half; ++i1) {
            for (int i2 = 0; i2 < half; ++i2) {
              double v[2][2];
              for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) v[s1][s2] = h(g.nodes[i1] - yj1[s1], g.nodes[i2] - yj2[s2]);
              const double scale = sw[i1] * sw[i2] * sw[j1] * sw[j2];
              const Eigen::Index row = i1 * half + i2;
              const auto c = static_cast<Eigen::Index>(col);
              blocks[0](row, c) = scale * (v[0][0] + v[0][1] + v[1][0] + v[1][1]);
              blocks[1](row, c) = scale * (v[0][0] - v[0][1] + v[1][0] - v[1][1]);
              blocks[2](row, c) = scale * (v[0][0] + v[0][1] - v[1][0] - v[1][1]);
              blocks[3](row, c) = scale * (v[0][0] - v[0][1] - v[1][0] + v[1][1]);
            }
          }
        },
        opt.threads);
    for (auto& B : blocks) {
      auto part = symmetric_eigenvalues(B);
      raw.insert(raw.end(), part.begin(), part.end());
      B.resize(0, 0);
    }
  }
  EigenSequence out = finalize_spectrum(std::move(raw), n);
  if (opt.check_convergence) {
    Nystrom2dOptions fine_opt = opt;
    fine_opt.n = 2 * n;
    fine_opt.check_convergence = false;
    const EigenSequence fine = eigs_body_2d(body, r, fine_opt);
    compare_leading(out, fine, static_cast<std::size_t>(std::ceil(body.volume(r) / (4.0 * kPi * kPi))) + 10);
  }
  return out;
}

EigenSequence eigs_disc_2d(double r, int n) {
  Nystrom2dOptions opt;
  opt.n = n;
  return eigs_body_2d(geometry::ConvexBody::ball(2, 1.0), r, opt);
}

std::size_t count_above(const EigenSequence& eigs, double eps) {
  const auto it = std::partition_point(eigs.values.begin(), eigs.values.end(), [eps](double v) { return v > eps; });
  return static_cast<std::size_t>(it - eigs.values.begin());
}

std::size_t count_transition(const EigenSequence& eigs, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("count_transition: eps must lie in (0, 1/2)");
  const auto hi = std::partition_point(eigs.values.begin(), eigs.values.end(), [eps](double v) { return v >= 1.0 - eps; });
  const auto lo = std::partition_point(eigs.values.begin(), eigs.values.end(), [eps](double v) { return v > eps; });
  return static_cast<std::size_t>(lo - hi);
}

}  // namespace sslo::spectrum
