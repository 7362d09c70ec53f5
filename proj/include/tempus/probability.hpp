#pragma once

// Leading-order de-excitation probabilities (units of lambda^2) for
// Alice's inertial clock and Bob's accelerated clock, their ratio, and the
// finite-time deviation of an inertial clock from the ideal rate.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempus/clock.hpp"
#include "tempus/geometry.hpp"
#include "tempus/integrands.hpp"
#include "tempus/quadrature.hpp"

namespace tempus {

namespace detail {

// Initial panel count so that each panel spans about two periods of an
// oscillation with the given angular frequency over `length`.
inline std::size_t oscillation_panels(double angular_rate, double length) {
  const double n = std::ceil(angular_rate * length / (4.0 * std::numbers::pi));
  if (!(n >= 1.0)) return 1;
  return static_cast<std::size_t>(std::min(n, 100000.0));
}

}  // namespace detail

/// P(T) of an inertial clock switched on for proper time T.
inline IntegralResult<double> inertial_probability(double T, double omega, double sigma,
                                                   const QuadratureSpec& spec = QuadratureSpec::one_dimensional()) {
  if (!(T > 0.0)) throw std::domain_error("inertial_probability: T must be > 0");
  if (!(sigma > 0.0)) throw std::domain_error("inertial_probability: sigma must be > 0");
  spec.validate();
  const double cutoff = spec.omega_cutoff_multiple / sigma;
  return integrate_omega([&](double w) { return inertial_integrand(w, T, omega, sigma); }, spec, sigma,
                         {1, "omega"}, detail::oscillation_panels(T, cutoff));
}

/// P_A, integrated from Alice's integrand. Equal to
/// inertial_probability(T_A, Omega, sigma) by construction; debug builds check it.
inline IntegralResult<double> alice_probability(const Scenario& scn,
                                                const QuadratureSpec& spec = QuadratureSpec::one_dimensional()) {
  scn.validate();
  spec.validate();
  const double TA = elapsed_inertial_time(scn.a, scn.T);
  const double cutoff = spec.omega_cutoff_multiple / scn.sigma;
  auto r = integrate_omega([&](double w) { return alice_integrand(w, scn); }, spec, scn.sigma, {1, "omega"},
                           detail::oscillation_panels(TA, cutoff));
#ifndef NDEBUG
  const auto check = inertial_probability(TA, scn.omega, scn.sigma, spec);
  if (std::abs(check.value - r.value) > 1e-12 * std::abs(r.value))
    throw std::logic_error("alice_probability: disagrees with inertial_probability(T_A)");
#endif
  return r;
}

/// Proper-time segments (0-based) integrated by tau and tau' for each of
/// the six terms, in kAllTerms order.
struct TermLimits {
  std::array<std::pair<std::size_t, std::size_t>, 6> ranges;

  /// Each P_ij over segment i x segment j.
  static TermLimits segment_pairing() { return {{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}}}; }

  /// The limits as typeset for the original derivation (P22 over
  /// S1 x S3, P23 over S2 x S2). Inconsistent with the kernels; kept only
  /// so validation can demonstrate that the oracle rejects it.
  static TermLimits as_printed() { return {{{{0, 0}, {0, 2}, {2, 2}, {0, 1}, {0, 2}, {1, 1}}}}; }

  std::pair<std::size_t, std::size_t> of(TermLabel l) const {
    return ranges[static_cast<std::size_t>(l)];
  }
};

using TermVector = std::array<complex, 6>;

struct BobResult {
  IntegralResult<double> total;
  TermVector terms{};
  // Error bound shared by every component of `terms`.
  double term_error = 0.0;
};

namespace detail {

struct FactorKey {
  std::size_t formula = 0;
  std::size_t range = 0;
  bool operator==(const FactorKey&) const = default;
};

inline double max_rapidity(const PiecewiseTrajectory& traj, std::size_t formula, const Interval& r) {
  const double a = traj.acceleration();
  const double T = traj.total_time();
  const double shift = formula == 0 ? 0.0 : (formula == 1 ? 0.5 * T : T);
  return std::max(std::abs(a * (r.lo - shift)), std::abs(a * (r.hi - shift)));
}

// \int_{range} G_formula(tau; theta, w) dtau
inline IntegralResult<complex> factor_integral(const PiecewiseTrajectory& traj, const FactorKey& key, double theta,
                                               double w, double omega, double sigma, const QuadratureSpec& spec) {
  const Interval r{traj.segment_begin(key.range), traj.segment_end(key.range)};
  const double rate = omega + w * std::exp(max_rapidity(traj, key.formula, r));
  const auto breaks = uniform_breaks(r.lo, r.hi, oscillation_panels(rate, r.width()));
  return integrate_1d(
      [&](double tau) { return segment_factor(traj, key.formula, tau, theta, w, omega, sigma); },
      std::span<const double>(breaks), spec, {1, "tau"});
}

// Largest coordinate extent (t plus |x|) swept by the worldline; sets the
// oscillation scale of the segment integrals as functions of w.
inline double coordinate_extent(const PiecewiseTrajectory& traj) {
  const double T = traj.total_time();
  const Event mid = traj.position(0.5 * T);
  return elapsed_inertial_time(traj.acceleration(), T) + std::abs(mid.x);
}

}  // namespace detail

/// Integrates the requested terms of Bob's probability. Each kernel
/// factorizes into segment factors, so for every (theta, w) node the tau
/// and tau' integrals reduce to products of one-dimensional integrals:
///   P_ij = \int dtheta \int dw (w sin theta / 8pi^2) g_i(theta, w) conj(g_j(theta, w)),
///   g_s  = \int_{S_s} G_s(tau; theta, w) dtau.
/// Nesting: theta (outer, spec tolerance), w (tol/10), tau (tol/100).
/// Unrequested components of the returned vector are zero.
inline IntegralResult<TermVector> bob_terms(const Scenario& scn, std::span<const TermLabel> wanted,
                                            const QuadratureSpec& spec, RunOptions opts = {},
                                            const TermLimits& limits = TermLimits::segment_pairing()) {
  scn.validate();
  spec.validate();
  const PiecewiseTrajectory traj(scn);

  std::vector<detail::FactorKey> keys;
  struct Slot {
    std::size_t term = 0;
    std::size_t left = 0;
    std::size_t right = 0;
  };
  std::vector<Slot> slots;
  auto key_index = [&](detail::FactorKey k) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == k) return i;
    keys.push_back(k);
    return keys.size() - 1;
  };
  for (TermLabel l : wanted) {
    const auto [fi, fj] = segments_of(l);
    const auto [ri, rj] = limits.of(l);
    slots.push_back({static_cast<std::size_t>(l), key_index({fi, ri}), key_index({fj, rj})});
  }

  const QuadratureSpec s_w = spec.inner();
  const QuadratureSpec s_tau = s_w.inner();
  const double cutoff = spec.omega_cutoff_multiple / scn.sigma;
  const std::size_t w_panels = detail::oscillation_panels(detail::coordinate_extent(traj), cutoff);

  auto at_mode = [&](double theta, double w) {
    IntegralResult<TermVector> out;
    const double m = mode_measure(theta, w);
    if (m == 0.0) return out;
    std::vector<IntegralResult<complex>> g;
    g.reserve(keys.size());
    for (const auto& k : keys) {
      g.push_back(detail::factor_integral(traj, k, theta, w, scn.omega, scn.sigma, s_tau));
      out.evaluations += g.back().evaluations;
      out.converged = out.converged && g.back().converged;
      detail::merge_warnings(out.warnings, g.back().warnings);
    }
    for (const Slot& s : slots) {
      const auto& gi = g[s.left];
      const auto& gj = g[s.right];
      out.value[s.term] = m * gi.value * std::conj(gj.value);
      const double e = m * (std::abs(gi.value) * gj.error_estimate + std::abs(gj.value) * gi.error_estimate +
                            gi.error_estimate * gj.error_estimate);
      out.error_estimate = std::max(out.error_estimate, e);
    }
    return out;
  };
  auto over_w = [&](double theta) {
    return integrate_omega([&](double w) { return at_mode(theta, w); }, s_w, scn.sigma, {1, "omega"}, w_panels);
  };
  const auto theta_breaks = uniform_breaks(0.0, std::numbers::pi, 4);
  auto r = integrate_1d(over_w, std::span<const double>(theta_breaks), spec, {opts.workers, "theta"});
  detail::merge_warnings(r.warnings, chart_warnings(scn));
  return r;
}

/// One term P_ij, complex.
inline IntegralResult<complex> bob_term(TermLabel label, const Scenario& scn,
                                        const QuadratureSpec& spec = QuadratureSpec::four_dimensional(),
                                        RunOptions opts = {},
                                        const TermLimits& limits = TermLimits::segment_pairing()) {
  const std::array<TermLabel, 1> one = {label};
  auto r = bob_terms(scn, one, spec, opts, limits);
  return {r.value[static_cast<std::size_t>(label)], r.error_estimate, r.evaluations, r.converged,
          std::move(r.warnings)};
}

/// The same term from the kernel f_ij directly, by iterated 4-D
/// integration in (tau, tau', theta, w) order. Much slower than bob_term;
/// an independent route used to cross-check it.
inline IntegralResult<complex> bob_term_direct(TermLabel label, const Scenario& scn,
                                               const QuadratureSpec& spec = QuadratureSpec::four_dimensional(),
                                               RunOptions opts = {},
                                               const TermLimits& limits = TermLimits::segment_pairing()) {
  scn.validate();
  const PiecewiseTrajectory traj(scn);
  const auto [ri, rj] = limits.of(label);
  Box4 box;
  box.tau = {traj.segment_begin(ri), traj.segment_end(ri)};
  box.tau_prime = {traj.segment_begin(rj), traj.segment_end(rj)};
  box.theta = {0.0, std::numbers::pi};
  box.omega_scale = scn.sigma;
  return integrate_4d(
      [&](double t, double tp, double th, double w) { return f_term(label, {t, tp, th, w}, scn); }, box, spec,
      opts);
}

/// P_B = P11 + P22 + P33 + 2 Re(P12 + P13 + P23). The imaginary part of
/// the diagonal sum must vanish within the error estimate; it is then dropped.
inline BobResult bob_probability(const Scenario& scn,
                                 const QuadratureSpec& spec = QuadratureSpec::four_dimensional(),
                                 RunOptions opts = {},
                                 const TermLimits& limits = TermLimits::segment_pairing()) {
  auto r = bob_terms(scn, kAllTerms, spec, opts, limits);
  BobResult out;
  out.terms = r.value;
  out.term_error = r.error_estimate;
  complex diag{};
  double cross = 0.0;
  for (TermLabel l : kAllTerms) {
    const complex v = r.value[static_cast<std::size_t>(l)];
    if (is_diagonal(l))
      diag += v;
    else
      cross += 2.0 * v.real();
  }
  out.total.value = diag.real() + cross;
  out.total.error_estimate = 9.0 * r.error_estimate;
  out.total.evaluations = r.evaluations;
  out.total.converged = r.converged;
  out.total.warnings = std::move(r.warnings);
  if (std::abs(diag.imag()) > 3.0 * r.error_estimate + 1e-14 * std::abs(diag.real())) {
    out.total.converged = false;
    out.total.warnings.push_back("imaginary part of diagonal terms exceeds error estimate");
  }
  return out;
}

struct TwinResult {
  double p_alice = 0.0;
  double p_alice_err = 0.0;
  double p_bob = 0.0;
  double p_bob_err = 0.0;
  double ratio = 0.0;
  double ratio_err = 0.0;
  double classical_ratio = 1.0;
  TermVector terms{};
  double term_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

/// P_B / P_A next to the classical proper-time ratio. Alice's single
/// integral is run a hundred times tighter than Bob's so that the ratio
/// error is dominated by P_B.
inline TwinResult twin_ratio(const Scenario& scn, const QuadratureSpec& spec = QuadratureSpec::four_dimensional(),
                             RunOptions opts = {}) {
  QuadratureSpec alice_spec = spec.inner().inner();
  alice_spec.max_subdivisions = std::max<std::size_t>(spec.max_subdivisions, 2000);
  const auto pa = alice_probability(scn, alice_spec);
  auto pb = bob_probability(scn, spec, opts);

  TwinResult t;
  t.p_alice = pa.value;
  t.p_alice_err = pa.error_estimate;
  t.p_bob = pb.total.value;
  t.p_bob_err = pb.total.error_estimate;
  t.ratio = t.p_bob / t.p_alice;
  t.ratio_err = std::abs(t.ratio) * (t.p_alice_err / t.p_alice + t.p_bob_err / std::abs(t.p_bob));
  t.classical_ratio = classical_ratio(scn.aT());
  t.terms = pb.terms;
  t.term_error = pb.term_error;
  t.evaluations = pa.evaluations + pb.total.evaluations;
  t.converged = pa.converged && pb.total.converged;
  t.warnings = pa.warnings;
  detail::merge_warnings(t.warnings, pb.total.warnings);
  return t;
}

/// alpha(T, Omega, sigma) = |P(T)/T - alpha_inf| / alpha_inf for an inertial clock.
inline IntegralResult<double> inertial_deviation(double T, double omega, double sigma,
                                                 const QuadratureSpec& spec = QuadratureSpec::one_dimensional()) {
  const double ideal = ideal_rate(omega, sigma);
  if (!(ideal > 0.0)) throw std::domain_error("inertial_deviation: ideal rate vanishes (omega = 0)");
  auto p = inertial_probability(T, omega, sigma, spec);
  IntegralResult<double> out;
  out.value = std::abs(p.value / T - ideal) / ideal;
  out.error_estimate = p.error_estimate / (T * ideal);
  out.evaluations = p.evaluations;
  out.converged = p.converged;
  out.warnings = std::move(p.warnings);
  return out;
}

}  // namespace tempus
