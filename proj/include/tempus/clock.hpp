#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tempus {

/// Two-level clock: Gaussian spatial profile of width `sigma`, energy gap
/// `omega`, coupling `lambda`. Probabilities elsewhere in the library are
/// reported in units of lambda^2.
struct ClockProfile {
  double sigma = 0.1;
  double omega = 2.0;
  double lambda = 1.0;

  void validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("clock.sigma must be > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("clock.omega must be >= 0");
  }
};

/// F(u) = exp(-|u|^2 / 2 sigma^2) / (sqrt(2 pi) sigma)^3
inline double gaussian_profile(const std::array<double, 3>& u, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("gaussian_profile: sigma must be > 0");
  const double r2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  const double norm = std::sqrt(2.0 * std::numbers::pi) * sigma;
  return std::exp(-r2 / (2.0 * sigma * sigma)) / (norm * norm * norm);
}

/// Long-time de-excitation rate of an inertial clock, Omega e^{-sigma^2 Omega^2} / 2pi.
inline double ideal_rate(double omega, double sigma) {
  if (!(sigma >= 0.0)) throw std::domain_error("ideal_rate: sigma must be >= 0");
  return omega * std::exp(-sigma * sigma * omega * omega) / (2.0 * std::numbers::pi);
}

inline constexpr double kSecondsPerJulianYear = 3.15576e7;

inline double decay_rate_from_half_life(double t_half) {
  if (!(t_half > 0.0)) throw std::domain_error("decay_rate_from_half_life: t_half must be > 0");
  return std::numbers::ln2 / t_half;
}

struct DecayCount {
  double count = 0.0;
  // false once rate * t is no longer small; N * rate * t then overestimates.
  bool linear_regime = true;
};

inline DecayCount expected_decays(double n, double rate, double t) {
  const double p = rate * t;
  return {n * p, p < 1e-2};
}

/// Proper time read off a clock: probability divided by its rate.
inline double clock_time_from_probability(double p, double rate) {
  if (!(rate > 0.0)) throw std::domain_error("clock_time_from_probability: rate must be > 0");
  return p / rate;
}

}  // namespace tempus
