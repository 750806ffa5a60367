#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include "json.hpp"
#include <span>
#include <string>
#include <vector>

namespace sslo::geometry {

enum class BodyKind { Ball, Cube, L1Ball, Ellipsoid, Oracle };

// Unconditional convex body K in R^d: symmetric under every coordinate reflection.
class ConvexBody {
 public:
  using Membership = std::function<bool(std::span<const double>)>;

  static ConvexBody ball(int d, double radius);
  static ConvexBody cube(int d, double halfwidth);
  static ConvexBody l1_ball(int d, double radius);
  static ConvexBody ellipsoid(std::vector<double> radii);
  // Membership-only body; K must lie in the ellipsoid with semi-axes `bounding_radii`.
  static ConvexBody oracle(int d, Membership member, std::vector<double> bounding_radii, double volume);
  // {"kind": "ball", "radius": r} | {"kind": "cube", "halfwidth": h} | {"kind": "l1", "radius": r} |
  // {"kind": "ellipsoid", "radii": [...]}
  static ConvexBody from_json(const nlohmann::json& spec, int d);

  nlohmann::json to_json() const;
  std::string describe() const;

  int dim() const { return d_; }
  BodyKind kind() const { return kind_; }
  double volume() const { return volume_; }
  double volume(double rho) const;
  // Minkowski functional; x in K iff gauge(x) <= 1.
  double gauge(std::span<const double> x) const;
  bool contains(std::span<const double> x, double rho = 1.0) const;
  // Semi-axes of an ellipsoid containing K.
  const std::vector<double>& bounding_radii() const { return bounding_radii_; }
  // sup |x_i| over K
  double axis_extent(int i) const;
  // sup { t : (x1, t) in K } for d = 2, or -1 when x1 is outside the projection.
  double half_chord(double x1) const;
  bool within_unit_ball() const;

 private:
  ConvexBody() = default;

  int d_ = 0;
  BodyKind kind_ = BodyKind::Ball;
  std::vector<double> params_;
  std::vector<double> bounding_radii_;
  double volume_ = 0.0;
  std::shared_ptr<const Membership> member_;
};

// kappa_l, the volume of the unit ball in R^l (kappa_0 = 1).
double unit_ball_volume(int l);
// sigma_d, the surface area of the unit sphere in R^d.
double sphere_area(int d);

// x0 + spacing Z^d with offset x0 in [0, 1)^d.
struct Lattice {
  std::vector<double> offset;
  double spacing = 1.0;

  static Lattice integer(int d);
  static Lattice half_integer(int d);
  int dim() const { return static_cast<int>(offset.size()); }
};

struct LatticeCounts {
  // points with dist(x, complement of rho K) >= eta
  std::int64_t inner = 0;
  // points not counted above with dist(x, rho K) < eta
  std::int64_t boundary = 0;
};

// Enumerates the bounding box of rho K; aborts above kMaxLatticePoints candidates.
inline constexpr std::int64_t kMaxLatticePoints = 100000000;
LatticeCounts lattice_counts(const ConvexBody& K, double rho, const Lattice& lattice, double eta);
std::int64_t lattice_count_inner(const ConvexBody& K, double rho, const Lattice& lattice, double eta);
std::int64_t lattice_count_boundary(const ConvexBody& K, double rho, const Lattice& lattice, double eta);

// Steiner-type bound for eta-neighbourhoods of an ellipsoid with the given semi-axes:
// e0 = 4^d sum_{j<d} (sqrt d)^{d-j} kappa_{d-j} (max product of j radii) eta^{d-j}
double steiner_error(std::span<const double> radii, double eta);
// sum_{j<d} (2 sqrt d)^{d-j} kappa_{d-j} C_j eta^{d-j}, C_j = 2^j binom(d, j) (product of the j largest radii)
double lattice_error(const ConvexBody& K, double rho, double eta);

// Both conclusions of the lattice corollary: |inner - mu(rho K)| <= e0 and boundary <= 2 e0,
// with e0 from the bounding ellipsoid of rho K.
struct SandwichCheck {
  LatticeCounts counts;
  double volume = 0.0;
  double e0 = 0.0;
  double lemma_error = 0.0;
  bool inner_ok = false;
  bool boundary_ok = false;
  bool ok() const { return inner_ok && boundary_ok; }
};
SandwichCheck lattice_sandwich(const ConvexBody& K, double rho, const Lattice& lattice, double eta);

// Psi_a(t) = exp(-a |t|^p)
double envelope(double a, double t, double exponent = 2.0 / 3.0);

struct TailResult {
  double numeric = 0.0;
  double bound = 0.0;
  // false when two quadrature refinements disagree by more than 1e-6 relative
  bool converged = true;
  bool satisfied() const { return numeric <= bound; }
};
// int_{|x| > eta} exp(-a |x|^{2/3}) dx in R^d by radial quadrature, against
// 3 sigma_d sqrt((3d-2)!) a^{-3d/2} Psi_a(eta/4).
TailResult envelope_tail(double a, double eta, int d);
// Upper incomplete gamma Gamma(s, x) for s in (1/2) Z, s > 0, in closed form.
double upper_gamma_half_integer(double s, double x);

// Comparability constant exp(a (pi sqrt d)^{2/3} 2^{2/3}) of the lattice envelope sum.
double lattice_sum_constant(double a, int d);

struct LatticeSumResult {
  double sum = 0.0;
  double integral_bound = 0.0;
  bool satisfied() const { return sum <= integral_bound; }
};
// sum_{x in X} Psi_a(pi |x|) against C delta^{-d} int_{D(X)} Psi_a(pi |z|) dz, where D(X) is the
// union of the cells x + [-delta/2, delta/2]^d and delta is the lattice spacing.
LatticeSumResult lattice_envelope_sum(std::span<const std::vector<double>> points, const Lattice& lattice, double a);

}  // namespace sslo::geometry
