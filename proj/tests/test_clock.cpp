#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tempus/clock.hpp"
#include "tempus/probability.hpp"

using namespace tempus;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gaussian_profile") {
  CHECK_THAT(gaussian_profile({0, 0, 0}, 1.0), WithinRel(std::pow(2 * std::numbers::pi, -1.5), 1e-15));
  CHECK_THAT(gaussian_profile({0, 0, 0}, 1.0), WithinAbs(0.063494, 5e-7));
  // depends only on |u|
  const double s = 0.4;
  CHECK_THAT(gaussian_profile({0.3, 0.0, 0.0}, s), WithinRel(gaussian_profile({0.0, 0.0, -0.3}, s), 1e-15));
  CHECK_THAT(gaussian_profile({0.3, 0.4, 0.0}, s), WithinRel(gaussian_profile({0.0, 0.5, 0.0}, s), 1e-14));
  CHECK_THROWS(gaussian_profile({0, 0, 0}, 0.0));
}

TEST_CASE("gaussian_profile integrates to one") {
  const double s = 0.3, L = 8 * s;
  QuadratureSpec q;
  q.rel_tol = 1e-10;
  const auto qy = q.inner(), qz = qy.inner();
  const auto r = integrate_1d(
      [&](double x) {
        return integrate_1d(
            [&](double y) { return integrate_1d([&](double z) { return gaussian_profile({x, y, z}, s); }, -L, L, qz); },
            -L, L, qy);
      },
      -L, L, q);
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinAbs(1.0, 1e-8));
}

TEST_CASE("ideal_rate") {
  CHECK(ideal_rate(0.0, 0.1) == 0.0);
  CHECK_THAT(ideal_rate(2.0, 0.0), WithinRel(1.0 / std::numbers::pi, 1e-15));
  CHECK_THAT(ideal_rate(2.0, 0.0), WithinAbs(0.31831, 5e-6));
  CHECK_THAT(ideal_rate(2.0, 0.1), WithinRel(std::exp(-0.04) / std::numbers::pi, 1e-15));
  CHECK_THAT(ideal_rate(2.0, 0.1), WithinAbs(0.30583, 5e-6));

  for (double s : {0.1, 0.3, 1.0}) {
    const double peak = 1.0 / (s * std::numbers::sqrt2);
    const double h = 1e-4 * peak;
    const double d = (ideal_rate(peak + h, s) - ideal_rate(peak - h, s)) / (2 * h);
    CHECK_THAT(d, WithinAbs(0.0, 1e-8));
    CHECK(ideal_rate(peak, s) > ideal_rate(0.9 * peak, s));
    CHECK(ideal_rate(peak, s) > ideal_rate(1.1 * peak, s));
  }
}

TEST_CASE("carbon dating illustration") {
  const double rate = decay_rate_from_half_life(5730.0 * kSecondsPerJulianYear);
  CHECK_THAT(rate, WithinRel(3.83e-12, 1e-3));
  CHECK_THAT(rate, WithinRel(3.84e-12, 5e-3));
  CHECK_THAT(decay_rate_from_half_life(std::numbers::ln2), WithinRel(1.0, 1e-15));
  CHECK_THAT(decay_rate_from_half_life(2.0), WithinRel(0.5 * decay_rate_from_half_life(1.0), 1e-15));

  const auto n = expected_decays(1e15, 3.84e-12, 1.0);
  CHECK_THAT(n.count, WithinRel(3840.0, 1e-12));
  CHECK(n.linear_regime);
  CHECK(expected_decays(1e15, 3.84e-12, 0.0).count == 0.0);
  CHECK_THAT(expected_decays(2e15, 3.84e-12, 1.0).count, WithinRel(2 * n.count, 1e-15));
  CHECK_FALSE(expected_decays(1.0, 1.0, 1.0).linear_regime);
}

TEST_CASE("clock_time_from_probability") {
  CHECK(clock_time_from_probability(0.0, 0.3) == 0.0);
  for (double T : {0.5, 3.0, 1e4}) CHECK_THAT(clock_time_from_probability(0.3 * T, 0.3), WithinRel(T, 1e-15));
  CHECK_THROWS_AS(clock_time_from_probability(1.0, 0.0), std::domain_error);

  // a clock running for T = 1000 sigma reads T to 0.3%
  const double sigma = 0.1, T = 1000 * sigma;
  const auto p = inertial_probability(T, 2.0, sigma);
  CHECK(std::abs(clock_time_from_probability(p.value, ideal_rate(2.0, sigma)) - T) / T < 3e-3);
}
