#include <cmath>

#include "doctest.h"
#include "sslo/bound_evaluators.hpp"
#include "sslo/common.hpp"

using namespace sslo;
using namespace sslo::bounds;

TEST_CASE("closed-form bound values") {
  const double W = 10 * kPi;
  CHECK(karnik_bound(W, 0.1) ==
        doctest::Approx(2 / (kPi * kPi) * std::log(50 * W / kPi + 25) * std::log(5 / 0.09) + 7).epsilon(1e-15));
  CHECK(landau_plunge_count_bound(W, 0.1) == doctest::Approx(karnik_bound(W, 0.1) + 2));
  CHECK(landau_widom_leading(W, 0.5) == 0.0);
  CHECK(decay_bound_1d(W, 16, 1.0, 1.0) == doctest::Approx(10.0));
  CHECK(thm1_error(2, 0.5, 8.0) == doctest::Approx(std::max(8 * std::pow(std::log(16.0), 2.5), std::pow(std::log(16.0), 5.0))));
  CHECK(thm1_error(1, 0.1, 4.0, 2.5) == doctest::Approx(std::pow(std::log(40.0), 2.5)));
  CHECK(thm2_error(2, 0.1, 10.0) == doctest::Approx(std::max(10 * std::log(10.0) * std::log(10.0), std::pow(std::log(10.0), 4.0))));
  CHECK(corollary_decay(1.0, 1, 2.0, 0.5, 2) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(corollary_decay(1.0, 16, 1.0, 1.0, 2) == doctest::Approx(std::exp(-4.0)));
  const double mrs = mrs_bound(2.0, 3.0, 1.0, 1.0, 0.5, 1, 0.1, 1.0);
  CHECK(mrs == doctest::Approx(6.0 * std::pow(std::log(60.0), 4.0)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(karnik_bound(10, 0.0), std::domain_error);
  CHECK_THROWS_AS(landau_widom_leading(0.5, 0.1), std::domain_error);
  CHECK_THROWS_AS(decay_bound_1d(10 * kPi, 5, 1, 1), std::domain_error);
  CHECK_THROWS_AS(thm2_error(2, 0.1, 5.0), std::domain_error);
  CHECK_THROWS_AS(landau_plunge_count_bound(5.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(mrs_bound(1, 1, 1, 1, 0.7, 1, 0.1, 1), std::domain_error);
  CHECK_THROWS_AS(corollary_decay(0.0, 1, 1, 1, 1), std::domain_error);
}

TEST_CASE("bounds are monotone in their parameters") {
  for (double W = 7.0; W < 200; W *= 1.3) {
    CHECK(karnik_bound(W, 0.01) < karnik_bound(W * 1.3, 0.01));
    CHECK(karnik_bound(W, 0.01) < karnik_bound(W, 0.001));
    CHECK(thm1_error(2, 0.1, W) < thm1_error(2, 0.1, W * 1.3));
  }
}

TEST_CASE("report comparisons") {
  const auto u = upper_report("x", {}, 3.0, 2.0);
  CHECK(u.satisfied);
  CHECK(u.slack == 1.0);
  const auto t = two_sided_report("y", {}, 1.0, 10.0, 11.5);
  CHECK_FALSE(t.satisfied);
  CHECK(t.ratio() == doctest::Approx(1.5));
  CHECK_FALSE(shape_report("z", {}, 1.0, 2.0).asserted);
}

TEST_CASE("decay fit envelopes the spectrum") {
  const double W = 6 * kPi;
  const auto e = spectrum::eigs_1d(W, 256);
  const auto fit = fit_decay_constants(e, W, 1.0);
  CHECK(fit.rate > 0.0);
  CHECK(fit.ls_rate > 0.0);
  const int N = static_cast<int>(std::ceil(W / kPi));
  for (int k = N; k < static_cast<int>(e.values.size()) && e.values[k] > 1e-10; ++k)
    CHECK(e.values[k] <= decay_bound_1d(W, k, fit.c1, fit.c2) * (1 + 1e-12));
  const auto ex = fit_corollary_decay(e, 1);
  CHECK(ex.c > 0.0);
  for (int k = 1; k < 20 && e.values[k] > 1e-10; ++k) CHECK(e.values[k] <= corollary_decay(1.0, k, ex.C, ex.c, 1) * (1 + 1e-12));
}

TEST_CASE("one-dimensional sweep reports") {
  const std::vector<double> Ws{4 * kPi}, eps{0.1, 0.01};
  const auto reps = sweep_1d(Ws, eps, 256);
  CHECK(reps.size() == 7);
  for (const auto& r : reps)
    if (r.asserted) CHECK(r.satisfied);
}
