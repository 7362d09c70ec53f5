#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "tempus/integrands.hpp"

using namespace tempus;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

namespace {

// Alice-frame event of Fermi point (tau, X) on segment k, written out from
// the unsimplified chart maps so that nothing is shared with geometry.hpp.
std::pair<double, double> chart_map(std::size_t k, double tau, double X, double a, double T) {
  const double sh = std::sinh(a * T / 4), ch = std::cosh(a * T / 4);
  switch (k) {
    case 0:
      return {(X + 1 / a) * std::sinh(a * tau), (X + 1 / a) * std::cosh(a * tau) - 1 / a};
    case 1:
      return {(-X + 1 / a) * std::sinh(a * (tau - T / 2)) + 2 / a * sh,
              (X - 1 / a) * std::cosh(a * (tau - T / 2)) + 2 / a * ch - 1 / a};
    default:
      return {(X + 1 / a) * std::sinh(a * (tau - T)) + 4 / a * sh, (X + 1 / a) * std::cosh(a * (tau - T)) - 1 / a};
  }
}

// Smeared plane-wave amplitude of the clock on segment k at tau:
// e^{i Omega tau} Int d^3 xi F(xi) e^{i (k.x - w t)}, k = w (cos th, sin th cos ph, sin th sin ph),
// by 3-D Gauss-Legendre cubature over [-8 sigma, 8 sigma]^3.
std::complex<double> smeared_amplitude(std::size_t k, double tau, double theta, double w, const Scenario& s) {
  using GL = boost::math::quadrature::gauss<double, 60>;
  const double L = 8 * s.sigma;
  const double phi = 0.7;  // the amplitude's modulus and phase do not depend on phi
  const double ky = w * std::sin(theta) * std::cos(phi), kz = w * std::sin(theta) * std::sin(phi);
  auto g1 = [&](double u) { return std::exp(-u * u / (2 * s.sigma * s.sigma)) / (std::sqrt(2 * pi) * s.sigma); };
  const auto Iy = GL::integrate([&](double y) { return g1(y) * std::exp(std::complex<double>(0, ky * y)); }, -L, L);
  const auto Iz = GL::integrate([&](double z) { return g1(z) * std::exp(std::complex<double>(0, kz * z)); }, -L, L);
  const auto IX = GL::integrate(
      [&](double X) {
        const auto [t, x] = chart_map(k, tau, X, s.a, s.T);
        return g1(X) * std::exp(std::complex<double>(0, w * std::cos(theta) * x - w * t));
      },
      -L, L);
  return std::exp(std::complex<double>(0, s.omega * tau)) * IX * Iy * Iz;
}

// Wightman mode sum: d^3k / (2 (2 pi)^3 |k|) -> w sin(theta) dw dtheta / (8 pi^2) after the phi integral.
std::complex<double> brute_force_kernel(TermLabel l, const IntegrandPoint& p, const Scenario& s) {
  const auto [i, j] = segments_of(l);
  return p.omega_k * std::sin(p.theta) / (8 * pi * pi) * smeared_amplitude(i, p.tau, p.theta, p.omega_k, s) *
         std::conj(smeared_amplitude(j, p.tau_prime, p.theta, p.omega_k, s));
}

}  // namespace

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK_THAT(sinc(1e-5), WithinRel(std::sin(1e-5) / 1e-5, 1e-15));
  CHECK_THAT(sinc(pi), WithinAbs(0.0, 1e-16));
  CHECK_THAT(sinc(2.0), WithinRel(std::sin(2.0) / 2.0, 1e-15));
}

TEST_CASE("alice_integrand examples") {
  const Scenario s = Scenario::from_dimensionless(2.0, 3.0, 0.2, 2.0);
  const double sh = std::sinh(s.aT() / 4);
  const double pre = 4 * sh * sh / (pi * pi * s.a * s.a);
  CHECK_THAT(alice_integrand(s.omega, s), WithinRel(pre * std::exp(-s.sigma * s.sigma * 4.0) * 2.0, 1e-14));
  CHECK(alice_integrand(0.0, s) == 0.0);
  // first zero of the sinc
  CHECK_THAT(alice_integrand(s.omega + pi * s.a / (2 * sh), s), WithinAbs(0.0, 1e-15));
  // midway to the first zero: sinc(pi/2) = 2/pi
  const double w = s.omega + pi * s.a / (4 * sh);
  CHECK_THAT(alice_integrand(w, s), WithinRel(pre * std::exp(-s.sigma * s.sigma * w * w) * w * 4 / (pi * pi), 1e-13));
}

TEST_CASE("inertial_integrand examples") {
  CHECK(inertial_integrand(0.0, 2.0, 2.0, 0.1) == 0.0);
  CHECK_THAT(inertial_integrand(2.0, 6.0, 2.0, 0.1), WithinRel(4 * inertial_integrand(2.0, 3.0, 2.0, 0.1), 1e-15));
  const Scenario s = Scenario::from_dimensionless(2.0, 3.0, 0.2, 2.0);
  const double TA = elapsed_inertial_time(s.a, s.T);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uw(0.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    const double w = uw(rng);
    CHECK_THAT(alice_integrand(w, s), WithinRel(inertial_integrand(w, TA, s.omega, s.sigma), 1e-12));
  }
}

TEST_CASE("f_term vanishes on the measure zeros") {
  const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.1, 2.0);
  for (TermLabel l : kAllTerms) {
    CHECK(f_term(l, {0.1, 0.6, 0.0, 5.0}, s) == complex{});
    CHECK(std::abs(f_term(l, {0.1, 0.6, pi, 5.0}, s)) < 1e-17);
    CHECK(f_term(l, {0.1, 0.6, 1.0, 0.0}, s) == complex{});
  }
}

TEST_CASE("f_ij against brute-force smearing of the Wightman function") {
  for (double aT : {2.0, 4.0}) {
    const Scenario s = Scenario::from_dimensionless(aT, 1.0, 0.1, 2.0);
    const PiecewiseTrajectory tr(s);
    std::mt19937_64 rng(static_cast<unsigned>(aT * 10));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (TermLabel l : kAllTerms) {
      const auto [i, j] = segments_of(l);
      for (int n = 0; n < 3; ++n) {
        IntegrandPoint p;
        p.tau = tr.segment_begin(i) + u01(rng) * 0.25 * (i == 1 ? 2 : 1) * s.T;
        p.tau_prime = tr.segment_begin(j) + u01(rng) * 0.25 * (j == 1 ? 2 : 1) * s.T;
        p.theta = 0.1 + 2.9 * u01(rng);
        p.omega_k = 0.5 + 15.0 * u01(rng);
        const complex f = f_term(l, p, s);
        const complex o = brute_force_kernel(l, p, s);
        INFO(term_name(l) << " aT=" << aT << " at " << p.tau << "," << p.tau_prime << "," << p.theta << ","
                          << p.omega_k);
        CHECK(std::abs(f - o) <= 1e-6 * std::abs(o));
      }
    }
  }
  // the documented point: (0.1T, 0.2T, pi/3, 1/sigma), aT = 2
  const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.1, 2.0);
  const IntegrandPoint p{0.1, 0.2, pi / 3, 10.0};
  const complex o = brute_force_kernel(TermLabel::p11, p, s);
  CHECK(std::abs(f_term(TermLabel::p11, p, s) - o) <= 1e-6 * std::abs(o));
}

TEST_CASE("f_ij regression goldens") {
  // frozen after agreement with the brute-force oracle above
  const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.1, 2.0);
  struct Golden {
    TermLabel l;
    IntegrandPoint p;
    complex v;
  };
  const Golden g[] = {
      {TermLabel::p11, {0.1, 0.2, 1.0471975511965976, 10}, {0.037637233958850928, 0.031353476896508484}},
      {TermLabel::p22, {0.4, 0.6, 0.8, 5}, {0.028630934954399976, 0.019869540309390438}},
      {TermLabel::p33, {0.8, 0.95, 2.0, 12}, {0.0076458866735194479, 0.038265135543515003}},
      {TermLabel::p12, {0.1, 0.5, 1.2, 7}, {-0.01404350976661241, 0.0499797932955292}},
      {TermLabel::p13, {0.2, 0.9, 0.5, 15}, {-0.0082574198724836012, -0.0058819635980729389}},
      {TermLabel::p23, {0.3, 0.8, 2.5, 3}, {0.018240060180777114, 0.0088424148856733834}},
  };
  for (const auto& x : g) {
    INFO(term_name(x.l));
    CHECK(std::abs(f_term(x.l, x.p, s) - x.v) <= 1e-12 * std::abs(x.v));
    CHECK(std::abs(brute_force_kernel(x.l, x.p, s) - x.v) <= 1e-6 * std::abs(x.v));
  }
}

TEST_CASE("diagonal kernels are conjugate symmetric") {
  const Scenario s = Scenario::from_dimensionless(4.0, 2.0, 0.2, 2.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (TermLabel l : {TermLabel::p11, TermLabel::p22, TermLabel::p33})
    for (int n = 0; n < 100; ++n) {
      IntegrandPoint p{u01(rng) * s.T, u01(rng) * s.T, u01(rng) * pi, 40 * u01(rng)};
      const complex f = f_term(l, p, s);
      std::swap(p.tau, p.tau_prime);
      CHECK(std::abs(f - std::conj(f_term(l, p, s))) <= 1e-12 * std::abs(f) + 1e-300);
    }
}

TEST_CASE("kernels dominated by a Gaussian in omega") {
  for (double aT : {1.0, 2.0, 4.0}) {
    const Scenario s = Scenario::from_dimensionless(aT, 2.0, 0.1, 2.0);
    const PiecewiseTrajectory tr(s);
    const double c = std::exp(-aT / 2);
    for (TermLabel l : kAllTerms) {
      const auto [i, j] = segments_of(l);
      for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
          for (double th : {0.2, 1.0, 1.6, 2.4, 3.0})
            for (double w : {1.0, 10.0, 40.0, 80.0}) {
              const double t = tr.segment_begin(i) + (tr.segment_end(i) - tr.segment_begin(i)) * a / 8;
              const double tp = tr.segment_begin(j) + (tr.segment_end(j) - tr.segment_begin(j)) * b / 8;
              const IntegrandPoint p{t, tp, th, w};
              const double re = std::log(std::abs(f_term(l, p, s)) / mode_measure(th, w));
              CHECK(re <= -c * s.sigma * s.sigma * w * w + 1e-9);
            }
    }
  }
}

TEST_CASE("kernels are smooth in every variable") {
  const Scenario s = Scenario::from_dimensionless(2.0, 2.0, 0.2, 2.0);
  const PiecewiseTrajectory tr(s);
  for (TermLabel l : kAllTerms) {
    const auto [i, j] = segments_of(l);
    const IntegrandPoint p{0.5 * (tr.segment_begin(i) + tr.segment_end(i)),
                           0.5 * (tr.segment_begin(j) + tr.segment_end(j)), 1.1, 6.0};
    for (int var = 0; var < 4; ++var) {
      auto at = [&](double d) {
        IntegrandPoint q = p;
        (var == 0 ? q.tau : var == 1 ? q.tau_prime : var == 2 ? q.theta : q.omega_k) += d;
        return f_term(l, q, s);
      };
      // second-order difference against its Richardson extrapolation
      // a fine central difference against the Richardson value of a coarse pair
      auto central = [&](double h) { return (at(h) - at(-h)) / (2 * h); };
      const complex rich = (4.0 * central(5e-4) - central(1e-3)) / 3.0;
      CHECK(std::abs(central(1e-4) - rich) <= 1e-6 * std::max(std::abs(rich), std::abs(at(0.0))));
    }
  }
}

TEST_CASE("small aT kernels use the factor product") {
  const Scenario tiny = Scenario::from_dimensionless(1e-8, 2.0, 0.2, 2.0);
  const Scenario small = Scenario::from_dimensionless(1e-5, 2.0, 0.2, 2.0);
  const IntegrandPoint p{0.3, 1.7, 0.9, 4.0};
  for (TermLabel l : kAllTerms) {
    const complex a = f_term(l, p, tiny);
    const complex b = f_term(l, p, small);
    CHECK(std::isfinite(a.real()));
    CHECK(std::abs(a - b) <= 1e-4 * std::abs(a));
  }
  // inertial limit: every term equals the straight-line kernel
  const double m = mode_measure(p.theta, p.omega_k);
  const complex expect = m * std::exp(complex(-tiny.sigma * tiny.sigma * p.omega_k * p.omega_k,
                                              (tiny.omega - p.omega_k) * (p.tau - p.tau_prime)));
  CHECK(std::abs(f_term(TermLabel::p13, p, tiny) - expect) <= 1e-7 * std::abs(expect));
}
