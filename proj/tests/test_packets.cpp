#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sslo/wave_packets.hpp"

using namespace sslo;
using namespace sslo::packets;

TEST_CASE("packets are tensor products of local sine elements") {
  gevrey::CutoffProfile p;
  const auto nu = make_index({-1, 2}, {3, 0});
  const std::vector<double> x{0.3, 0.8};
  CHECK(eval_packet(nu, x, p) ==
        doctest::Approx(localsine::eval_basis({-1, 3}, 0.3, p) * localsine::eval_basis({2, 0}, 0.8, p)));
  const std::vector<double> xi{17.0, -40.0};
  const auto f = packet_fourier_transform(nu, xi, p);
  const auto g = localsine::fourier_transform({-1, 3}, 17.0, p) * localsine::fourier_transform({2, 0}, -40.0, p);
  CHECK(std::abs(f - g) < 1e-13);
  CHECK(nu.measure() == doctest::Approx(0.25 * 0.0625));
  CHECK(nu.min_delta() == 0.0625);
}

TEST_CASE("packet transform is dominated by its envelope") {
  gevrey::CutoffProfile p;
  const auto nu = make_index({0, -2}, {1, 4});
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-3000, 3000);
  for (int i = 0; i < 300; ++i) {
    const std::vector<double> xi{u(g), u(g)};
    CHECK(std::abs(packet_fourier_transform(nu, xi, p)) <= packet_fourier_envelope(nu, xi));
  }
}

TEST_CASE("eta_of_delta domain") {
  CHECK(eta_of_delta(0.1) == doctest::Approx(125.0 * std::pow(std::log(10.0) * 115.0, 1.5)));
  CHECK_THROWS_AS(eta_of_delta(1.5), std::domain_error);
  CHECK_THROWS_AS(eta_of_delta(0.0), std::domain_error);
}

TEST_CASE("classification of hand-picked indices") {
  const auto S = geometry::ConvexBody::ball(1, 1.0);
  // delta_j = 1/4, carrier 2 pi, box [2 pi - 4, 2 pi + 4] well inside S(64)
  CHECK(classify_index(make_index({-1}, {0}), S, 64.0, 0.04, 1.0) == Label::Low);
  // carrier far beyond r
  CHECK(classify_index(make_index({-1}, {60}), S, 64.0, 0.04, 1.0) == Label::Hi);
  // box straddles r = 64
  CHECK(classify_index(make_index({-1}, {5}), S, 64.0, 0.04, 2.0) == Label::Res);
  // thin interval
  CHECK(classify_index(make_index({-12}, {0}), S, 64.0, 0.04, 1.0) == Label::Hi);
  CHECK_THROWS(classify_index(make_index({-1}, {0}), geometry::ConvexBody::cube(1, 2.0), 64.0, 0.04, 1.0));
  CHECK_THROWS(classify_index(make_index({-1}, {0}), S, 64.0, 0.7, 1.0));
}

TEST_CASE("enumerated partition agrees with pointwise classification") {
  const auto S = geometry::ConvexBody::ball(2, 1.0);
  const double r = 24.0, delta = 0.2, eta = 1.0;
  localsine::BasisTruncation t{1.0 / 128, 12};
  const auto part = enumerate_partition(S, r, delta, eta, t);
  CHECK(part.total == t.size() * t.size());
  CHECK(part.low.size() + part.res.size() + part.hi_count == part.total);
  CHECK(std::is_sorted(part.low.begin(), part.low.end(), canonical_less));
  for (const auto& nu : part.low) CHECK(classify_index(nu, S, r, delta, eta) == Label::Low);
  for (const auto& nu : part.res) CHECK(classify_index(nu, S, r, delta, eta) == Label::Res);
  const auto j = part.to_json();
  CHECK(j["counts"]["low"].get<std::size_t>() == part.low.size());
}

TEST_CASE("energy split sums to the packet norm") {
  gevrey::CutoffProfile p;
  for (const auto& [nu, d] : {std::pair{make_index({-1}, {4}), 1}, std::pair{make_index({0, -1}, {2, 1}), 2}}) {
    const auto S = geometry::ConvexBody::ball(d, 1.0);
    const auto e = packet_energy_split(nu, S, 20.0, p);
    CHECK(e.total == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(e.inside + e.outside == doctest::Approx(e.total).epsilon(1e-12));
    CHECK(e.inside > 0.0);
    CHECK(e.outside > 0.0);
  }
}
