#include "sslo/bound_evaluators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sslo/common.hpp"

namespace sslo::bounds {

namespace {

constexpr double kTwoOverPi2 = 2.0 / (kPi * kPi);

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

}  // namespace

double karnik_bound(double W, double eps) {
  require(W > 0.0, "karnik_bound: W must be positive");
  require(eps > 0.0 && eps < 1.0, "karnik_bound: eps must lie in (0, 1)");
  return kTwoOverPi2 * std::log(50.0 * W / kPi + 25.0) * std::log(5.0 / (eps * (1.0 - eps))) + 7.0;
}

double landau_widom_leading(double W, double eps) {
  require(W > 1.0, "landau_widom_leading: W must exceed 1");
  require(eps > 0.0 && eps < 1.0, "landau_widom_leading: eps must lie in (0, 1)");
  return kTwoOverPi2 * std::log(W) * std::log(1.0 / eps - 1.0);
}

double decay_bound_1d(double W, int k, double c1, double c2) {
  require(W > 0.0, "decay_bound_1d: W must be positive");
  require(c1 > 0.0, "decay_bound_1d: c1 must be positive");
  require(W + c2 > 1.0, "decay_bound_1d: W + c2 must exceed 1");
  const int N = static_cast<int>(std::ceil(W / kPi));
  require(k >= N, "decay_bound_1d: k must be >= ceil(W/pi)");
  return 10.0 * std::exp(-(k - N - 6.0) / (c1 * std::log(W + c2)));
}

double thm1_error(int d, double eps, double r, double exponent) {
  require(d >= 1, "thm1_error: d must be >= 1");
  require(r >= 1.0, "thm1_error: r must be >= 1");
  require(eps > 0.0 && eps <= 0.5, "thm1_error: eps must lie in (0, 1/2]");
  const double L = std::log(r / eps);
  return std::max(std::pow(r, d - 1) * std::pow(L, exponent), std::pow(L, exponent * d));
}

double thm2_error(int d, double eps, double r) {
  require(d >= 1, "thm2_error: d must be >= 1");
  require(r >= 2.0 * kPi, "thm2_error: r must be >= 2 pi");
  require(eps > 0.0 && eps < 0.5, "thm2_error: eps must lie in (0, 1/2)");
  const double L = std::log(r) * std::log(1.0 / eps);
  return std::max(std::pow(r, d - 1) * L, std::pow(L, d));
}

double corollary_decay(double diam_product, int k, double C_d, double c, int d) {
  require(diam_product > 0.0, "corollary_decay: diameter product must be positive");
  require(k >= 1, "corollary_decay: k must be >= 1");
  require(d >= 1, "corollary_decay: d must be >= 1");
  return C_d * std::exp(-c * std::pow(static_cast<double>(k), 1.0 / d));
}

double landau_plunge_count_bound(double W, double gamma) {
  require(W >= 2.0 * kPi, "landau_plunge_count_bound: W must be >= 2 pi");
  require(gamma > 0.0 && gamma < 1.0, "landau_plunge_count_bound: gamma must lie in (0, 1)");
  return kTwoOverPi2 * std::log(50.0 * W / kPi + 25.0) * std::log(5.0 / (gamma * (1.0 - gamma))) + 9.0;
}

double mrs_bound(double dQ_measure, double dS_measure, double kappa_Q, double kappa_S, double alpha, int d, double eps,
                 double A) {
  require(alpha > 0.0 && alpha <= 0.5, "mrs_bound: alpha must lie in (0, 1/2]");
  require(dQ_measure > 0.0 && dS_measure > 0.0 && kappa_Q > 0.0 && kappa_S > 0.0, "mrs_bound: measures must be positive");
  require(eps > 0.0 && eps < 0.5, "mrs_bound: eps must lie in (0, 1/2)");
  require(d >= 1, "mrs_bound: d must be >= 1");
  const double power = 2.0 * d * (1.0 + alpha) + 1.0;
  return A * (dQ_measure / kappa_Q) * (dS_measure / kappa_S) *
         std::pow(std::log(dQ_measure * dS_measure / (kappa_Q * eps)), power);
}

double BoundReport::ratio() const {
  const double e = two_sided ? std::abs(empirical_value - center) : empirical_value;
  return bound_value != 0.0 ? e / bound_value : (e == 0.0 ? 0.0 : INFINITY);
}

BoundReport upper_report(std::string name, std::map<std::string, double> params, double bound, double empirical) {
  BoundReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.bound_value = bound;
  r.empirical_value = empirical;
  r.satisfied = empirical <= bound;
  r.slack = bound - empirical;
  return r;
}

BoundReport two_sided_report(std::string name, std::map<std::string, double> params, double bound, double center,
                             double empirical) {
  BoundReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.bound_value = bound;
  r.empirical_value = empirical;
  r.two_sided = true;
  r.center = center;
  r.satisfied = std::abs(empirical - center) <= bound;
  r.slack = bound - std::abs(empirical - center);
  return r;
}

BoundReport shape_report(std::string name, std::map<std::string, double> params, double bound, double empirical) {
  BoundReport r = upper_report(std::move(name), std::move(params), bound, empirical);
  r.asserted = false;
  return r;
}

DecayFit fit_decay_constants(const spectrum::EigenSequence& eigs, double W, double c2, double floor) {
  require(W + c2 > 1.0, "fit_decay_constants: W + c2 must exceed 1");
  const int N = static_cast<int>(std::ceil(W / kPi));
  DecayFit fit;
  fit.c2 = c2;
  double best = INFINITY;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = N; k < eigs.values.size(); ++k) {
    const double lam = eigs.values[k];
    if (!(lam > floor)) break;
    const double t = static_cast<double>(k) - N - 6.0;
    ++fit.samples;
    sx += t;
    sy += std::log(lam);
    sxx += t * t;
    sxy += t * std::log(lam);
    if (t > 0.0) best = std::min(best, (std::log(10.0) - std::log(lam)) / t);
  }
  if (!std::isfinite(best) || !(best > 0.0)) throw std::domain_error("fit_decay_constants: not enough decaying eigenvalues");
  fit.rate = best;
  fit.c1 = 1.0 / (best * std::log(W + c2));
  const double m = static_cast<double>(fit.samples);
  const double denom = m * sxx - sx * sx;
  fit.ls_rate = denom > 0.0 ? -(m * sxy - sx * sy) / denom : 0.0;
  return fit;
}

ExponentialFit fit_corollary_decay(const spectrum::EigenSequence& eigs, int d, double floor) {
  require(d >= 1, "fit_corollary_decay: d must be >= 1");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 1; k < eigs.values.size(); ++k) {
    if (!(eigs.values[k] > floor)) break;
    pts.emplace_back(std::pow(static_cast<double>(k), 1.0 / d), std::log(eigs.values[k]));
  }
  if (pts.size() < 3) throw std::domain_error("fit_corollary_decay: too few eigenvalues above the floor");
  // Least squares on the lower half of the range, where the decay regime has set in.
  const std::size_t start = pts.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(pts.size() - start);
  for (std::size_t i = start; i < pts.size(); ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
    sxx += pts[i].first * pts[i].first;
    sxy += pts[i].first * pts[i].second;
  }
  ExponentialFit fit;
  fit.samples = pts.size();
  fit.c = std::max(0.0, -(m * sxy - sx * sy) / (m * sxx - sx * sx));
  double logC = -INFINITY;
  for (const auto& [x, y] : pts) logC = std::max(logC, y + fit.c * x);
  fit.C = std::exp(logC);
  return fit;
}

std::vector<BoundReport> sweep_1d(std::span<const double> Ws, std::span<const double> eps, int n) {
  std::vector<BoundReport> out;
  for (double W : Ws) {
    const spectrum::EigenSequence e = spectrum::eigs_1d(W, n, false);
    for (double ep : eps) {
      const std::map<std::string, double> p{{"W", W}, {"eps", ep}, {"n", n}};
      out.push_back(upper_report("karnik", p, karnik_bound(W, ep), static_cast<double>(spectrum::count_transition(e, ep))));
      if (W > 1.0)
        out.push_back(shape_report("landau_widom_leading", p, landau_widom_leading(W, ep),
                                   static_cast<double>(spectrum::count_transition(e, ep))));
      if (W >= 2.0 * kPi)
        out.push_back(two_sided_report("landau_plunge", p, landau_plunge_count_bound(W, ep), W / kPi,
                                       static_cast<double>(spectrum::count_above(e, ep))));
    }
    const DecayFit fit = fit_decay_constants(e, W);
    const int N = static_cast<int>(std::ceil(W / kPi));
    double worst = 0.0;
    for (std::size_t k = N; k < e.values.size() && e.values[k] > 1e-10; ++k)
      worst = std::max(worst, e.values[k] / decay_bound_1d(W, static_cast<int>(k), fit.c1, fit.c2));
    out.push_back(upper_report("decay_1d_fit", {{"W", W}, {"c1", fit.c1}, {"c2", fit.c2}, {"rate", fit.rate}, {"n", n}},
                               1.0 + 1e-12, worst));
  }
  return out;
}

}  // namespace sslo::bounds
