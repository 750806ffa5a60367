#include "sslo/convex_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sslo/common.hpp"
#include "sslo/quadrature.hpp"

namespace sslo::geometry {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_dim(int d) {
  if (d < 1 || d > 16) throw std::invalid_argument("dimension must be in [1, 16]");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double unit_ball_volume(int l) {
  if (l < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::pow(kPi, 0.5 * l) / std::tgamma(0.5 * l + 1.0);
}

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area: dimension must be >= 1");
  return d * unit_ball_volume(d);
}

ConvexBody ConvexBody::ball(int d, double radius) {
  require_dim(d);
  require_positive(radius, "ball radius");
  ConvexBody K;
  K.d_ = d;
  K.kind_ = BodyKind::Ball;
  K.params_ = {radius};
  K.bounding_radii_.assign(d, radius);
  K.volume_ = unit_ball_volume(d) * std::pow(radius, d);
  return K;
}

ConvexBody ConvexBody::cube(int d, double halfwidth) {
  require_dim(d);
  require_positive(halfwidth, "cube halfwidth");
  ConvexBody K;
  K.d_ = d;
  K.kind_ = BodyKind::Cube;
  K.params_ = {halfwidth};
  K.bounding_radii_.assign(d, halfwidth * std::sqrt(static_cast<double>(d)));
  K.volume_ = std::pow(2.0 * halfwidth, d);
  return K;
}

ConvexBody ConvexBody::l1_ball(int d, double radius) {
  require_dim(d);
  require_positive(radius, "l1 radius");
  ConvexBody K;
  K.d_ = d;
  K.kind_ = BodyKind::L1Ball;
  K.params_ = {radius};
  K.bounding_radii_.assign(d, radius);
  K.volume_ = std::pow(2.0 * radius, d) / factorial(d);
  return K;
}

ConvexBody ConvexBody::ellipsoid(std::vector<double> radii) {
  require_dim(static_cast<int>(radii.size()));
  for (double r : radii) require_positive(r, "ellipsoid radius");
  ConvexBody K;
  K.d_ = static_cast<int>(radii.size());
  K.kind_ = BodyKind::Ellipsoid;
  K.params_ = radii;
  K.bounding_radii_ = radii;
  K.volume_ = unit_ball_volume(K.d_) * std::accumulate(radii.begin(), radii.end(), 1.0, std::multiplies<>());
  return K;
}

ConvexBody ConvexBody::oracle(int d, Membership member, std::vector<double> bounding_radii, double volume) {
  require_dim(d);
  if (!member) throw std::invalid_argument("oracle body needs a membership function");
  if (static_cast<int>(bounding_radii.size()) != d) throw std::invalid_argument("oracle body: need d bounding radii");
  for (double r : bounding_radii) require_positive(r, "oracle bounding radius");
  require_positive(volume, "oracle volume");
  ConvexBody K;
  K.d_ = d;
  K.kind_ = BodyKind::Oracle;
  K.bounding_radii_ = std::move(bounding_radii);
  K.volume_ = volume;
  K.member_ = std::make_shared<const Membership>(std::move(member));
  return K;
}

ConvexBody ConvexBody::from_json(const nlohmann::json& spec, int d) {
  const char* schema =
      R"(expected {"kind":"ball","radius":r} | {"kind":"cube","halfwidth":h} | {"kind":"l1","radius":r} | )"
      R"({"kind":"ellipsoid","radii":[...]})";
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
    throw std::invalid_argument(std::string("body spec: ") + schema);
  const std::string kind = spec["kind"].get<std::string>();
  auto number = [&](const char* key) {
    if (!spec.contains(key) || !spec[key].is_number())
      throw std::invalid_argument("body spec '" + kind + "' needs numeric field '" + key + "'; " + schema);
    return spec[key].get<double>();
  };
  if (kind == "ball") return ball(d, number("radius"));
  if (kind == "cube") return cube(d, number("halfwidth"));
  if (kind == "l1") return l1_ball(d, number("radius"));
  if (kind == "ellipsoid") {
    if (!spec.contains("radii") || !spec["radii"].is_array())
      throw std::invalid_argument(std::string("body spec 'ellipsoid' needs array 'radii'; ") + schema);
    std::vector<double> radii;
    for (const auto& v : spec["radii"]) {
      if (!v.is_number()) throw std::invalid_argument("ellipsoid radii must be numbers");
      radii.push_back(v.get<double>());
    }
    if (static_cast<int>(radii.size()) != d)
      throw std::invalid_argument("ellipsoid radii count does not match dimension");
    return ellipsoid(std::move(radii));
  }
  throw std::invalid_argument("body spec: unknown kind '" + kind + "'; " + schema);
}

nlohmann::json ConvexBody::to_json() const {
  switch (kind_) {
    case BodyKind::Ball:
      return {{"kind", "ball"}, {"radius", params_[0]}};
    case BodyKind::Cube:
      return {{"kind", "cube"}, {"halfwidth", params_[0]}};
    case BodyKind::L1Ball:
      return {{"kind", "l1"}, {"radius", params_[0]}};
    case BodyKind::Ellipsoid:
      return {{"kind", "ellipsoid"}, {"radii", params_}};
    case BodyKind::Oracle:
      return {{"kind", "oracle"}, {"bounding_radii", bounding_radii_}, {"volume", volume_}};
  }
  return {};
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << to_json().dump() << " in R^" << d_;
  return os.str();
}

double ConvexBody::volume(double rho) const {
  require_positive(rho, "dilation");
  return volume_ * std::pow(rho, d_);
}

double ConvexBody::gauge(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("gauge: dimension mismatch");
  switch (kind_) {
    case BodyKind::Ball: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s) / params_[0];
    }
    case BodyKind::Cube: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m / params_[0];
    }
    case BodyKind::L1Ball: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s / params_[0];
    }
    case BodyKind::Ellipsoid: {
      double s = 0.0;
      for (int i = 0; i < d_; ++i) s += (x[i] / params_[i]) * (x[i] / params_[i]);
      return std::sqrt(s);
    }
    case BodyKind::Oracle: {
      // K lies inside its bounding ellipsoid, so that ellipsoid's gauge is a lower bound.
      double lo = 0.0;
      for (int i = 0; i < d_; ++i) lo += (x[i] / bounding_radii_[i]) * (x[i] / bounding_radii_[i]);
      lo = std::sqrt(lo);
      if (lo == 0.0) return 0.0;
      std::vector<double> y(d_);
      auto member_at = [&](double t) {
        for (int i = 0; i < d_; ++i) y[i] = x[i] / t;
        return (*member_)(y);
      };
      double hi = lo;
      int grow = 0;
      while (!member_at(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 200) throw ConvergenceError("oracle gauge: membership never satisfied");
      }
      for (int it = 0; it < 80 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (member_at(mid) ? hi : lo) = mid;
      }
      return hi;
    }
  }
  return 0.0;
}

bool ConvexBody::contains(std::span<const double> x, double rho) const {
  if (kind_ == BodyKind::Oracle) {
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v /= rho;
    return (*member_)(y);
  }
  return gauge(x) <= rho;
}

double ConvexBody::axis_extent(int i) const {
  if (i < 0 || i >= d_) throw std::invalid_argument("axis_extent: axis out of range");
  switch (kind_) {
    case BodyKind::Ball:
    case BodyKind::Cube:
    case BodyKind::L1Ball:
      return params_[0];
    case BodyKind::Ellipsoid:
      return params_[i];
    case BodyKind::Oracle: {
      std::vector<double> e(d_, 0.0);
      e[i] = 1.0;
      return 1.0 / gauge(e);
    }
  }
  return 0.0;
}

double ConvexBody::half_chord(double x1) const {
  if (d_ != 2) throw std::invalid_argument("half_chord: planar bodies only");
  const double a = std::abs(x1);
  switch (kind_) {
    case BodyKind::Ball:
      return a > params_[0] ? -1.0 : std::sqrt(std::max(0.0, params_[0] * params_[0] - a * a));
    case BodyKind::Cube:
      return a > params_[0] ? -1.0 : params_[0];
    case BodyKind::L1Ball:
      return a > params_[0] ? -1.0 : params_[0] - a;
    case BodyKind::Ellipsoid: {
      const double t = a / params_[0];
      return t > 1.0 ? -1.0 : params_[1] * std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    case BodyKind::Oracle: {
      const double p[2] = {a, 0.0};
      if (!(*member_)(p)) return -1.0;
      double lo = 0.0, hi = bounding_radii_[1];
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double q[2] = {a, mid};
        ((*member_)(q) ? lo : hi) = mid;
      }
      return lo;
    }
  }
  return -1.0;
}

bool ConvexBody::within_unit_ball() const {
  return *std::max_element(bounding_radii_.begin(), bounding_radii_.end()) <= 1.0 + 1e-15;
}

Lattice Lattice::integer(int d) { return {std::vector<double>(d, 0.0), 1.0}; }

Lattice Lattice::half_integer(int d) { return {std::vector<double>(d, 0.5), 1.0}; }

LatticeCounts lattice_counts(const ConvexBody& K, double rho, const Lattice& lattice, double eta) {
  const int d = K.dim();
  if (lattice.dim() != d) throw std::invalid_argument("lattice_counts: lattice dimension mismatch");
  require_positive(lattice.spacing, "lattice spacing");
  require_positive(rho, "dilation");
  if (!(eta > 0.0)) throw std::invalid_argument("lattice_counts: eta must be positive");
  for (double o : lattice.offset)
    if (!(o >= 0.0 && o < 1.0)) throw std::invalid_argument("lattice offset must lie in [0, 1)");

  // Integer ranges covering |x_i| <= rho extent_i + eta on each axis.
  std::vector<std::int64_t> lo(d), hi(d);
  double total = 1.0;
  for (int i = 0; i < d; ++i) {
    const double reach = rho * K.axis_extent(i) + eta;
    lo[i] = static_cast<std::int64_t>(std::floor((-reach - lattice.offset[i]) / lattice.spacing));
    hi[i] = static_cast<std::int64_t>(std::ceil((reach - lattice.offset[i]) / lattice.spacing));
    total *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  if (total > static_cast<double>(kMaxLatticePoints))
    throw std::length_error("lattice enumeration exceeds 1e8 points");

  LatticeCounts counts;
  std::vector<std::int64_t> z(lo);
  std::vector<double> far(d), near(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      const double x = std::abs(lattice.offset[i] + lattice.spacing * static_cast<double>(z[i]));
      far[i] = x + eta;
      near[i] = std::max(x - eta, 0.0);
    }
    if (K.contains(far, rho)) {
      ++counts.inner;
    } else if (K.gauge(near) < rho) {
      ++counts.boundary;
    }
    int axis = 0;
    while (axis < d && ++z[axis] > hi[axis]) {
      z[axis] = lo[axis];
      ++axis;
    }
    if (axis == d) break;
  }
  return counts;
}

std::int64_t lattice_count_inner(const ConvexBody& K, double rho, const Lattice& lattice, double eta) {
  return lattice_counts(K, rho, lattice, eta).inner;
}

std::int64_t lattice_count_boundary(const ConvexBody& K, double rho, const Lattice& lattice, double eta) {
  return lattice_counts(K, rho, lattice, eta).boundary;
}

namespace {

// max over j-subsets of the product of radii, i.e. the product of the j largest.
double top_product(std::vector<double> radii, int j) {
  std::sort(radii.begin(), radii.end(), std::greater<>());
  double p = 1.0;
  for (int i = 0; i < j; ++i) p *= radii[i];
  return p;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double steiner_error(std::span<const double> radii, double eta) {
  const int d = static_cast<int>(radii.size());
  require_dim(d);
  for (double r : radii) require_positive(r, "steiner radius");
  if (!(eta >= 1.0)) throw std::invalid_argument("steiner_error: eta must be >= 1");
  const std::vector<double> r(radii.begin(), radii.end());
  double s = 0.0;
  for (int j = 0; j < d; ++j)
    s += std::pow(std::sqrt(static_cast<double>(d)), d - j) * unit_ball_volume(d - j) * top_product(r, j) *
         std::pow(eta, d - j);
  return std::pow(4.0, d) * s;
}

double lattice_error(const ConvexBody& K, double rho, double eta) {
  const int d = K.dim();
  std::vector<double> r = K.bounding_radii();
  for (double& v : r) v *= rho;
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    const double C = std::ldexp(1.0, j) * binomial(d, j) * top_product(r, j);
    s += std::pow(2.0 * std::sqrt(static_cast<double>(d)), d - j) * unit_ball_volume(d - j) * C * std::pow(eta, d - j);
  }
  return s;
}

SandwichCheck lattice_sandwich(const ConvexBody& K, double rho, const Lattice& lattice, double eta) {
  SandwichCheck c;
  c.counts = lattice_counts(K, rho, lattice, eta);
  c.volume = K.volume(rho);
  std::vector<double> r = K.bounding_radii();
  for (double& v : r) v *= rho;
  c.e0 = steiner_error(r, eta);
  c.lemma_error = lattice_error(K, rho, eta);
  c.inner_ok = std::abs(static_cast<double>(c.counts.inner) - c.volume) <= c.e0;
  c.boundary_ok = static_cast<double>(c.counts.boundary) <= 2.0 * c.e0;
  return c;
}

double envelope(double a, double t, double exponent) { return std::exp(-a * std::pow(std::abs(t), exponent)); }

double upper_gamma_half_integer(double s, double x) {
  if (!(s > 0.0) || std::abs(2.0 * s - std::round(2.0 * s)) > 1e-12)
    throw std::invalid_argument("upper_gamma_half_integer: s must be a positive multiple of 1/2");
  if (!(x >= 0.0)) throw std::invalid_argument("upper_gamma_half_integer: x must be >= 0");
  const int twice = static_cast<int>(std::lround(2.0 * s));
  double g, order;
  if (twice % 2 == 0) {
    g = std::exp(-x);  // Gamma(1, x)
    order = 1.0;
  } else {
    g = std::sqrt(kPi) * std::erfc(std::sqrt(x));  // Gamma(1/2, x)
    order = 0.5;
  }
  while (order < s - 1e-12) {
    g = order * g + std::pow(x, order) * std::exp(-x);
    order += 1.0;
  }
  return g;
}

TailResult envelope_tail(double a, double eta, int d) {
  if (!(a > 0.0)) throw std::invalid_argument("envelope_tail: a must be positive");
  if (!(eta > 1.0)) throw std::invalid_argument("envelope_tail: eta must exceed 1");
  require_dim(d);
  // t = a r^{2/3} turns the radial integral into (3/2) a^{-3d/2} int_{t0}^inf e^{-t} t^{3d/2 - 1} dt,
  // and t = u^2 removes the square-root behaviour near small t0.
  const double s = 1.5 * d;
  const double t0 = a * std::pow(eta, 2.0 / 3.0);
  const double u0 = std::sqrt(t0);
  const double u_end = std::sqrt(t0 + 120.0 + 4.0 * s);
  auto integrate = [&](int panels) {
    const QuadPoints q = composite_gauss(u0, u_end, panels, 24);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      acc += q.w[i] * 2.0 * std::exp(-q.x[i] * q.x[i] + (2.0 * s - 1.0) * std::log(q.x[i]));
    return acc;
  };
  const double coarse = integrate(32);
  const double fine = integrate(64);
  TailResult r;
  const double scale = sphere_area(d) * 1.5 * std::pow(a, -s);
  r.numeric = scale * fine;
  r.converged = std::abs(fine - coarse) <= 1e-6 * std::abs(fine);
  r.bound = 3.0 * sphere_area(d) * std::sqrt(factorial(3 * d - 2)) * std::pow(a, -s) * envelope(a, eta / 4.0);
  return r;
}

double lattice_sum_constant(double a, int d) {
  return std::exp(a * std::pow(kPi * std::sqrt(static_cast<double>(d)), 2.0 / 3.0) * std::pow(2.0, 2.0 / 3.0));
}

LatticeSumResult lattice_envelope_sum(std::span<const std::vector<double>> points, const Lattice& lattice, double a) {
  const int d = lattice.dim();
  require_dim(d);
  const double delta = lattice.spacing;
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("lattice_envelope_sum: spacing must be in (0, 1)");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("lattice_envelope_sum: a must be in (0, 1)");
  constexpr int kOrder = 8;
  const GaussRule& rule = gauss_legendre(kOrder);
  LatticeSumResult out;
  double integral = 0.0;
  std::vector<int> node(d);
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("lattice_envelope_sum: point dimension mismatch");
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double steps = (x[i] - lattice.offset[i]) / delta;
      if (std::abs(steps - std::round(steps)) > 1e-9) throw std::invalid_argument("lattice_envelope_sum: point not on lattice");
      r2 += x[i] * x[i];
    }
    out.sum += envelope(a, kPi * std::sqrt(r2));
    // Tensor Gauss rule on the cell x + [-delta/2, delta/2]^d, split in 2^d subcells.
    const int sub = 2 * kOrder;
    std::fill(node.begin(), node.end(), 0);
    double cell = 0.0;
    while (true) {
      double w = 1.0, z2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const int half = node[i] / kOrder, q = node[i] % kOrder;
        const double centre = x[i] + (half == 0 ? -0.25 : 0.25) * delta;
        const double z = centre + 0.25 * delta * rule.nodes[q];
        w *= 0.25 * delta * rule.weights[q];
        z2 += z * z;
      }
      cell += w * envelope(a, kPi * std::sqrt(z2));
      int axis = 0;
      while (axis < d && ++node[axis] == sub) {
        node[axis] = 0;
        ++axis;
      }
      if (axis == d) break;
    }
    integral += cell;
  }
  out.integral_bound = lattice_sum_constant(a, d) * std::pow(delta, -d) * integral;
  return out;
}

}  // namespace sslo::geometry
