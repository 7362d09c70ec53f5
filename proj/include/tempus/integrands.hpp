#pragma once

// Integrands of the leading-order de-excitation probabilities.
//
// Bob's probability splits over pairs of worldline segments (i, j); the
// kernels f_ij below are the closed forms obtained after the Gaussian
// spatial integrals and the azimuthal momentum integral have been done
// analytically. segment_factor() is the same object built directly from
// the Fermi frames: f_ij(tau, tau') = (w sin(theta) / 8 pi^2) G_i(tau) conj(G_j(tau')).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <utility>

#include "tempus/geometry.hpp"

namespace tempus {

using complex = std::complex<double>;

/// Unnormalized sinc, sin(x)/x.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

struct IntegrandPoint {
  double tau = 0.0;
  double tau_prime = 0.0;
  double theta = 0.0;
  double omega_k = 0.0;
};

enum class TermLabel { p11, p22, p33, p12, p13, p23 };

inline constexpr std::array<TermLabel, 6> kAllTerms = {TermLabel::p11, TermLabel::p22, TermLabel::p33,
                                                       TermLabel::p12, TermLabel::p13, TermLabel::p23};

/// Zero-based (i, j) segment pair of a term.
constexpr std::pair<std::size_t, std::size_t> segments_of(TermLabel l) {
  switch (l) {
    case TermLabel::p11: return {0, 0};
    case TermLabel::p22: return {1, 1};
    case TermLabel::p33: return {2, 2};
    case TermLabel::p12: return {0, 1};
    case TermLabel::p13: return {0, 2};
    case TermLabel::p23: return {1, 2};
  }
  return {0, 0};
}

constexpr std::string_view term_name(TermLabel l) {
  switch (l) {
    case TermLabel::p11: return "P11";
    case TermLabel::p22: return "P22";
    case TermLabel::p33: return "P33";
    case TermLabel::p12: return "P12";
    case TermLabel::p13: return "P13";
    case TermLabel::p23: return "P23";
  }
  return "?";
}

constexpr bool is_diagonal(TermLabel l) {
  return l == TermLabel::p11 || l == TermLabel::p22 || l == TermLabel::p33;
}

/// (T/2pi)^2 e^{-sigma^2 w^2} w sinc^2((w - Omega) T / 2)
inline double inertial_integrand(double omega_k, double T, double omega, double sigma) {
  const double pre = T / (2.0 * std::numbers::pi);
  const double s = sinc(0.5 * (omega_k - omega) * T);
  return pre * pre * std::exp(-sigma * sigma * omega_k * omega_k) * omega_k * s * s;
}

/// Alice's integrand, written in terms of aT as printed:
/// (4 sinh^2(aT/4) / pi^2 a^2) e^{-sigma^2 w^2} w sinc^2(2 (w - Omega) sinh(aT/4) / a).
inline double alice_integrand(double omega_k, const Scenario& scn) {
  // 2 sinh(aT/4) / a, finite as a -> 0
  const double half = 0.5 * scn.T * detail::sinhc(0.25 * scn.a * scn.T);
  const double pre = half * half / (std::numbers::pi * std::numbers::pi);
  const double s = sinc((omega_k - scn.omega) * half);
  return pre * std::exp(-scn.sigma * scn.sigma * omega_k * omega_k) * omega_k * s * s;
}

/// Plane-wave mode weight of segment k's smeared clock at proper time tau,
/// including the gap phase e^{i Omega tau}. Uses segment k's formulas even
/// outside its own interval.
inline complex segment_factor(const PiecewiseTrajectory& traj, std::size_t k, double tau, double theta,
                              double omega_k, double omega, double sigma) {
  const FermiFrame f = traj.frame_of_segment(k, tau);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double phase = omega * tau + omega_k * (c * f.x - f.t);
  const double d = c * f.ex - f.et;
  const double damp = -0.5 * sigma * sigma * omega_k * omega_k * (d * d + s * s);
  return std::exp(complex(damp, phase));
}

inline complex segment_factor(std::size_t k, double tau, double theta, double omega_k, const Scenario& scn) {
  return segment_factor(PiecewiseTrajectory(scn), k, tau, theta, omega_k, scn.omega, scn.sigma);
}

inline double mode_measure(double theta, double omega_k) {
  return omega_k * std::sin(theta) / (8.0 * std::numbers::pi * std::numbers::pi);
}

namespace detail {

// Exponents of the six kernels, as closed-form functions of (tau, tau',
// theta, w). Nothing here is simplified; each line mirrors one line of the
// analytic result.
inline complex f_exponent(TermLabel label, const IntegrandPoint& p, const Scenario& scn) {
  using std::cosh;
  using std::sinh;
  const complex I(0.0, 1.0);
  const double a = scn.a;
  const double T = scn.T;
  const double O = scn.omega;
  const double s2 = scn.sigma * scn.sigma;
  const double w = p.omega_k;
  const double t = p.tau;
  const double tp = p.tau_prime;
  const double c = std::cos(p.theta);
  const double c2 = std::cos(2.0 * p.theta);
  const double sn = std::sin(p.theta);
  const double sin2 = sn * sn;
  const double sw2 = s2 * w * w;

  switch (label) {
    case TermLabel::p11:
      return 0.125 * (-sw2 + 8.0 * I * (t - tp) * O + 3.0 * sw2 * c2 -
                      (w / a) * (-8.0 * I * c * cosh(a * t) + 4.0 * a * s2 * w * c * c * cosh(a * t) * cosh(a * t) +
                                 8.0 * I * (c * cosh(a * tp) + sinh(a * t) - sinh(a * tp)) +
                                 a * s2 * w *
                                     (2.0 * cosh(2.0 * a * t) + (3.0 + c2) * cosh(2.0 * a * tp) -
                                      4.0 * c * (sinh(2.0 * a * t) + sinh(2.0 * a * tp)))));

    case TermLabel::p22:
      return I * (t - tp) * O +
             (w / (8.0 * a)) *
                 (-8.0 * I * c * cosh(0.5 * a * (T - 2.0 * t)) +
                  8.0 * I *
                      (c * cosh(0.5 * a * (T - 2.0 * tp)) + sinh(0.5 * a * (T - 2.0 * t)) -
                       sinh(0.5 * a * (T - 2.0 * tp))) -
                  a * s2 * w *
                      ((3.0 + c2) * cosh(a * (T - 2.0 * t)) + (3.0 + c2) * cosh(a * (T - 2.0 * tp)) + 4.0 * sin2 -
                       4.0 * c * (sinh(a * (T - 2.0 * t)) + sinh(a * (T - 2.0 * tp)))));

    case TermLabel::p33:
      return I * (t - tp) * O -
             (sw2 / 8.0) * ((3.0 + c2) * cosh(2.0 * a * (T - t)) + (3.0 + c2) * cosh(2.0 * a * (-T + tp)) +
                            4.0 * (sin2 + c * (sinh(2.0 * a * (T - t)) + sinh(2.0 * a * (T - tp))))) +
             (I * w / a) * (c * (cosh(a * (-T + t)) - cosh(a * (-T + tp))) + sinh(a * (T - t)) +
                            sinh(a * (-T + tp)));

    case TermLabel::p12:
      return 0.125 *
             (-2.0 * sw2 + 8.0 * I * (t - tp) * O + 2.0 * sw2 * c2 +
              (w / a) * (-a * s2 * w * (3.0 + c2) * (cosh(2.0 * a * t) + cosh(a * (T - 2.0 * tp))) +
                         8.0 * I * (2.0 * sinh(a * T / 4.0) - sinh(a * t) - sinh(0.5 * a * (T - 2.0 * tp))) +
                         4.0 * c *
                             (-4.0 * I * cosh(a * T / 4.0) + 2.0 * I * cosh(a * t) +
                              2.0 * I * cosh(0.5 * a * (T - 2.0 * tp)) +
                              a * s2 * w * (sinh(2.0 * a * t) + sinh(a * (T - 2.0 * tp))))));

    case TermLabel::p13:
      return 0.125 *
             (-sw2 + 8.0 * I * (t - tp) * O + 3.0 * sw2 * c2 -
              (w / a) * (-8.0 * I * c * cosh(a * t) + 4.0 * a * s2 * w * c * c * cosh(a * t) * cosh(a * t) +
                         8.0 * I *
                             (c * cosh(a * (-T + tp)) - 4.0 * sinh(a * T / 4.0) + sinh(a * t) +
                              sinh(a * (T - tp))) +
                         a * s2 * w *
                             (2.0 * cosh(2.0 * a * t) + (3.0 + c2) * cosh(2.0 * a * (-T + tp)) -
                              4.0 * c * (sinh(2.0 * a * t) + sinh(2.0 * a * (-T + tp))))));

    case TermLabel::p23:
      return 0.125 *
             (-2.0 * sw2 + 8.0 * I * (t - tp) * O + 2.0 * sw2 * c2 +
              (w / a) * (-a * s2 * w * (3.0 + c2) * (cosh(a * (T - 2.0 * t)) + cosh(2.0 * a * (-T + tp))) +
                         8.0 * I *
                             (2.0 * sinh(a * T / 4.0) + sinh(0.5 * a * (T - 2.0 * t)) + sinh(a * (-T + tp))) +
                         4.0 * c *
                             (4.0 * I * cosh(a * T / 4.0) - 2.0 * I * cosh(0.5 * a * (T - 2.0 * t)) -
                              2.0 * I * cosh(a * (-T + tp)) +
                              a * s2 * w * (sinh(a * (T - 2.0 * t)) + sinh(2.0 * a * (-T + tp))))));
  }
  return {};
}

}  // namespace detail

/// Kernel f_ij(tau, tau', theta, w) of term `label`, including the
/// (1/8pi^2) w sin(theta) mode measure. For |aT| < 1e-6 the 1/a forms are
/// replaced by the series-safe product of segment factors.
inline complex f_term(TermLabel label, const IntegrandPoint& p, const Scenario& scn) {
  const double measure = mode_measure(p.theta, p.omega_k);
  if (measure == 0.0) return {};
  if (std::abs(scn.a * scn.T) < 1e-6) {
    const auto [i, j] = segments_of(label);
    const PiecewiseTrajectory traj(scn);
    return measure * segment_factor(traj, i, p.tau, p.theta, p.omega_k, scn.omega, scn.sigma) *
           std::conj(segment_factor(traj, j, p.tau_prime, p.theta, p.omega_k, scn.omega, scn.sigma));
  }
  return measure * std::exp(detail::f_exponent(label, p, scn));
}

}  // namespace tempus
