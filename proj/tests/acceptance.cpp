// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "sslo/bound_evaluators.hpp"
#include "sslo/common.hpp"
#include "sslo/convex_geometry.hpp"
#include "sslo/sslo_spectrum.hpp"
#include "sslo/wave_packets.hpp"
#include "sslo/whitney_localsine.hpp"

using namespace sslo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = secs <= budget_s;
  const bool pass = o.pass && in_budget;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s of %.0f s%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              budget_s, in_budget ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const double kWs[] = {4 * kPi, 10 * kPi, 20 * kPi};

}  // namespace

int main() {
  criterion(1, "trace identity", 15.0, [] {
    double worst = 0.0;
    for (double W : kWs) worst = std::max(worst, std::abs(spectrum::eigs_1d(W, 512).trace() - W / kPi));
    return Outcome{worst <= 1e-10, "max |sum - W/pi| = " + fmt(worst)};
  });

  criterion(2, "Landau half-point", 5.0, [] {
    bool ok = true;
    std::ostringstream os;
    for (double W : kWs) {
      const auto e = spectrum::eigs_1d(W, 512);
      const int N = static_cast<int>(std::floor(W / kPi));
      ok = ok && e.values[N - 1] > 0.5 && 0.5 > e.values[N + 1];
      os << "W/pi=" << N << ": " << fmt(e.values[N - 1]) << " > 1/2 > " << fmt(e.values[N + 1]) << "; ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(3, "Karnik transition bound", 15.0, [] {
    int ok = 0;
    double worst = 0.0;
    for (double W : kWs) {
      const auto e = spectrum::eigs_1d(W, 512);
      for (double eps : {0.1, 0.01, 0.001}) {
        const double n = static_cast<double>(spectrum::count_transition(e, eps));
        const double b = bounds::karnik_bound(W, eps);
        ok += n <= b;
        worst = std::max(worst, n / b);
      }
    }
    return Outcome{ok == 9, std::to_string(ok) + "/9 pairs, max N_eps/bound = " + fmt(worst)};
  });

  criterion(4, "local sine orthonormality", 60.0, [] {
    gevrey::CutoffProfile profile;
    double worst = 0.0;
    std::ostringstream os;
    for (int kmax : {24, 256}) {
      localsine::BasisTruncation trunc{1.0 / 4096, kmax};
      auto idx = trunc.indices();
      std::sort(idx.begin(), idx.end());
      idx.resize(200);
      const double dev = localsine::gram_deviation(localsine::gram_matrix(idx, profile, 4 * kmax + 16));
      worst = std::max(worst, dev);
      os << "k_max=" << kmax << " (j " << idx.front().j << ".." << idx.back().j << "): " << fmt(dev) << "; ";
    }
    return Outcome{worst <= 1e-8, "max |G - I| " + os.str()};
  });

  criterion(5, "Fourier decay certificate", 120.0, [] {
    gevrey::CutoffProfile profile;
    double worst = 0.0;
    localsine::EnvelopeRecord at;
    for (int j = -3; j <= 3; ++j)
      for (int k : {0, 1, 2, 8, 32}) {
        const double span = 500.0 / localsine::whitney_interval(j).delta;
        const auto rep = localsine::verify_fourier_decay({j, k}, -span, span, 4001, profile);
        if (rep.worst.ratio > worst) {
          worst = rep.worst.ratio;
          at = rep.worst;
        }
      }
    return Outcome{worst <= 1.0, "max ratio " + fmt(worst) + " at (j,k)=(" + std::to_string(at.j) + "," +
                                     std::to_string(at.k) + "), xi=" + fmt(at.xi)};
  });

  criterion(6, "tensor equivalence", 60.0, [] {
    const auto tensor = spectrum::eigs_cube_tensor(2 * kPi, 2, 512, 30);
    spectrum::Nystrom2dOptions opt;
    opt.n = 64;
    opt.use_parity = false;
    const auto direct = spectrum::eigs_body_2d(geometry::ConvexBody::cube(2, 1.0), 2 * kPi, opt);
    double worst = 0.0;
    for (int k = 0; k < 30; ++k) worst = std::max(worst, std::abs(tensor.values[k] - direct.values[k]));
    return Outcome{worst <= 1e-4, "max diff over top 30 = " + fmt(worst)};
  });

  criterion(7, "disc trace and clustering shape", 600.0, [] {
    bool trace_ok = true;
    double cmin = INFINITY, cmax = 0.0;
    std::ostringstream os;
    for (double r : {8.0, 16.0, 32.0}) {
      const auto e = spectrum::eigs_disc_2d(r, 96);
      const double centre = r * r / (4 * kPi);
      trace_ok = trace_ok && std::abs(e.trace() - centre) <= 1e-4 * r * r;
      const double dev = std::abs(static_cast<double>(spectrum::count_above(e, 0.5)) - centre);
      const double ratio = dev / bounds::thm1_error(2, 0.5, r);
      cmin = std::min(cmin, ratio);
      cmax = std::max(cmax, ratio);
      os << "r=" << r << " M=" << spectrum::count_above(e, 0.5) << " dev/E2=" << fmt(ratio) << "; ";
    }
    const bool stable = cmax <= 3.0 * cmin;
    os << "trace " << (trace_ok ? "ok" : "off") << ", fitted C=" << fmt(cmax) << ", spread " << fmt(cmax / cmin)
       << (stable ? " <= 3" : " > 3");
    return Outcome{trace_ok && stable, os.str()};
  });

  criterion(8, "lattice-count sandwich", 30.0, [] {
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> dist(5.0, 40.0);
    int ok = 0, total = 0;
    for (const auto& K : {geometry::ConvexBody::ball(2, 1.0), geometry::ConvexBody::cube(2, 1.0)})
      for (int i = 0; i < 20; ++i) {
        const double rho = dist(gen);
        for (double eta : {1.0, 2.0}) {
          ok += geometry::lattice_sandwich(K, rho, geometry::Lattice::half_integer(2), eta).ok();
          ++total;
        }
      }
    return Outcome{ok == total, std::to_string(ok) + "/" + std::to_string(total) + " (body, rho, eta) cases"};
  });

  criterion(9, "envelope tail", 5.0, [] {
    int ok = 0, total = 0;
    double worst = 0.0;
    for (int d : {1, 2, 3})
      for (double a : {1.0 / 115, 0.1})
        for (double eta : {4.0, 16.0, 64.0}) {
          const auto t = geometry::envelope_tail(a, eta, d);
          ok += t.satisfied() && t.converged;
          ++total;
          worst = std::max(worst, t.numeric / t.bound);
        }
    return Outcome{ok == total, std::to_string(ok) + "/" + std::to_string(total) + ", max numeric/bound = " + fmt(worst)};
  });

  criterion(10, "partition energy property", 600.0, [] {
    const auto S = geometry::ConvexBody::ball(1, 1.0);
    const double r = 64.0, eta = 2.0;
    const double deltas[] = {0.04, 0.02, 0.01};
    localsine::BasisTruncation trunc{1.0 / 8192, 32};
    gevrey::CutoffProfile profile(2, 200, 256);
    std::vector<packets::IndexPartition> parts;
    for (double delta : deltas) parts.push_back(packets::enumerate_partition(S, r, delta, eta, trunc));
    const auto loss = spectrum::energy_loss_sweep(S, r, parts, trunc, profile, 256);
    bool mono = true;
    double qmin = INFINITY, qmax = 0.0;
    std::ostringstream os;
    for (std::size_t i = 0; i < loss.size(); ++i) {
      if (i > 0) mono = mono && loss[i].total <= loss[i - 1].total;
      const double q = loss[i].total / (deltas[i] * r);
      qmin = std::min(qmin, q);
      qmax = std::max(qmax, q);
      os << "delta=" << deltas[i] << " E=" << fmt(loss[i].total) << "; ";
    }
    for (const auto& p : parts)
      if (!p.warnings.empty()) return Outcome{false, "truncation warning: " + p.warnings.front()};
    os << (mono ? "nonincreasing" : "not monotone") << ", E/(delta r) spread " << fmt(qmax / qmin);
    return Outcome{mono && qmax <= 10.0 * qmin, os.str()};
  });

  criterion(11, "decay-rate envelope", 5.0, [] {
    const double W = 10 * kPi;
    const auto e = spectrum::eigs_1d(W, 512);
    const auto fit = bounds::fit_decay_constants(e, W, 1.0);
    const int N = static_cast<int>(std::ceil(W / kPi));
    int bad = 0, total = 0;
    for (int k = N; k < static_cast<int>(e.values.size()) && e.values[k] > 1e-10; ++k, ++total)
      bad += e.values[k] > bounds::decay_bound_1d(W, k, fit.c1, fit.c2) * (1 + 1e-12);
    return Outcome{bad == 0 && fit.rate > 0.0, "c1=" + fmt(fit.c1) + " c2=" + fmt(fit.c2) + " rate=" + fmt(fit.rate) +
                                                    ", " + std::to_string(total - bad) + "/" + std::to_string(total) +
                                                    " eigenvalues below the envelope"};
  });

  criterion(12, "duality and monotonicity", 10.0, [] {
    double dual = 0.0;
    for (double W : {3 * kPi, 8 * kPi}) {
      const auto base = spectrum::eigs_interval(0.0, 1.0, -W, W, 256);
      for (double kappa : {0.5, 2.0, 3.7}) {
        const auto scaled = spectrum::eigs_interval(0.0, 1.0 / kappa, -kappa * W, kappa * W, 256);
        for (int k = 0; k <= 40; ++k) dual = std::max(dual, std::abs(base.values[k] - scaled.values[k]));
      }
    }
    int violations = 0;
    spectrum::EigenSequence prev;
    const double Ws[] = {kPi, 2 * kPi, 4 * kPi, 7 * kPi, 10 * kPi, 20 * kPi};
    for (std::size_t i = 0; i < std::size(Ws); ++i) {
      auto e = spectrum::eigs_1d(Ws[i], 512);
      if (i > 0)
        for (int k = 0; k <= 40; ++k) violations += prev.values[k] > e.values[k];
      prev = std::move(e);
    }
    return Outcome{dual <= 1e-8 && violations == 0,
                   "max rescaling diff " + fmt(dual) + ", " + std::to_string(violations) + " monotonicity violations"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
