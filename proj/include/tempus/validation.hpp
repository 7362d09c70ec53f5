#pragma once

// Desk-scale invariant checks run by `tempus validate`. Each check is
// independent and reports pass/fail with a short numeric detail. Faults can
// be injected through ValidationOptions to confirm a check has teeth.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tempus/clock.hpp"
#include "tempus/geometry.hpp"
#include "tempus/integrands.hpp"
#include "tempus/probability.hpp"
#include "tempus/quadrature.hpp"

namespace tempus {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using SegmentFrameFn = std::function<FermiFrame(const PiecewiseTrajectory&, std::size_t, double)>;

struct ValidationOptions {
  SegmentFrameFn frame = [](const PiecewiseTrajectory& tr, std::size_t k, double tau) {
    return tr.frame_of_segment(k, tau);
  };
  TermLimits limits = TermLimits::segment_pairing();
  std::size_t workers = 1;
  std::uint64_t seed = 20240917;
};

namespace mutations {

/// Middle-segment center with x(tau) = +(1/a)cosh(a(tau - T/2)) + (2/a)cosh(aT/4) - 1/a,
/// i.e. without the sign repair; discontinuous at tau = T/4.
inline FermiFrame unrepaired_middle_segment(const PiecewiseTrajectory& tr, std::size_t k, double tau) {
  FermiFrame f = tr.frame_of_segment(k, tau);
  if (k == 1) {
    const double a = tr.acceleration();
    const double T = tr.total_time();
    f.x = std::cosh(a * (tau - 0.5 * T)) / a + 2.0 * std::cosh(0.25 * a * T) / a - 1.0 / a;
  }
  return f;
}

}  // namespace mutations

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

template <class Fn>
CheckResult timed(std::string name, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = std::move(name);
  try {
    auto [ok, detail] = fn();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Closed-form test integrals: integrand, interval, exact value.
struct ClosedForm {
  std::function<double(double)> f;
  double lo;
  double hi;
  double exact;
};

inline std::vector<ClosedForm> closed_form_suite() {
  using std::numbers::pi;
  return {
      {[](double x) { return x; }, 0.0, 1.0, 0.5},
      {[](double x) { return std::exp(-x * x); }, 0.0, 40.0, 0.5 * std::sqrt(pi)},
      {[](double x) { return std::sin(x); }, 0.0, pi, 2.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 0.25 * pi},
      {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
      {[](double x) { return std::log(x); }, 0.0, 1.0, -1.0},
      {[](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, std::sin(50.0) / 50.0},
      {[](double x) { return x * std::exp(-x * x); }, 0.0, 10.0, 0.5 * (1.0 - std::exp(-100.0))},
      {[](double x) { return std::exp(x); }, -1.0, 2.0, std::exp(2.0) - std::exp(-1.0)},
      {[](double x) { return 1.0 / (1e-2 + x * x); }, -1.0, 1.0, 20.0 * std::atan(10.0)},
  };
}

}  // namespace detail

inline CheckResult check_trajectory_continuity(const ValidationOptions& opt) {
  return detail::timed("trajectory_c1_continuity", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> ua(0.01, 2.0), uT(0.5, 20.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const PiecewiseTrajectory tr(ua(rng), uT(rng));
      for (std::size_t k = 0; k < 2; ++k) {
        const double tj = tr.segment_end(k);
        const FermiFrame l = opt.frame(tr, k, tj);
        const FermiFrame r = opt.frame(tr, k + 1, tj);
        const double scale = std::max({1.0, std::abs(l.t), std::abs(l.x)});
        worst = std::max({worst, std::abs(l.t - r.t) / scale, std::abs(l.x - r.x) / scale,
                          detail::rel_diff(l.ut, r.ut), detail::rel_diff(l.ux, r.ux)});
      }
    }
    return {worst < 1e-12, "max relative jump " + detail::fmt(worst)};
  });
}

inline CheckResult check_four_velocity_normalization(const ValidationOptions& opt) {
  return detail::timed("four_velocity_normalization", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> ua(0.0, 2.0), uT(0.5, 10.0), u01(0.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const PiecewiseTrajectory tr(ua(rng), uT(rng));
      const double tau = u01(rng) * tr.total_time();
      const FermiFrame f = opt.frame(tr, tr.segment_of(tau), tau);
      worst = std::max(worst, std::abs(f.ut * f.ut - f.ux * f.ux - 1.0));
      // spatial axis: unit and orthogonal to the 4-velocity
      worst = std::max(worst, std::abs(f.ex * f.ex - f.et * f.et - 1.0));
      worst = std::max(worst, std::abs(-f.ut * f.et + f.ux * f.ex));
    }
    return {worst < 1e-10, "max |u.u + 1| " + detail::fmt(worst)};
  });
}

inline CheckResult check_trajectory_closure(const ValidationOptions& opt) {
  return detail::timed("trajectory_closure", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> ua(0.0, 2.0), uT(0.5, 10.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const PiecewiseTrajectory tr(ua(rng), uT(rng));
      const double T = tr.total_time();
      const FermiFrame end = opt.frame(tr, 2, T);
      const FermiFrame start = opt.frame(tr, 0, 0.0);
      const double TA = elapsed_inertial_time(tr.acceleration(), T);
      worst = std::max({worst, std::abs(end.x) / TA, detail::rel_diff(end.t, TA), std::abs(start.t),
                        std::abs(start.x), std::abs(end.ux)});
    }
    return {worst < 1e-12, "max deviation " + detail::fmt(worst)};
  });
}

/// The Fermi maps re-evaluated from their unsimplified (X +- 1/a) forms.
inline CheckResult check_fermi_maps(const ValidationOptions& opt) {
  return detail::timed("fermi_chart_maps", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> ua(0.05, 2.0), uT(0.5, 10.0), u01(0.0, 1.0), uX(-0.3, 0.3);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const double a = ua(rng);
      const double T = uT(rng);
      const PiecewiseTrajectory tr(a, T);
      const double tau = u01(rng) * T;
      const double X = uX(rng) / a;
      long double t = 0, x = 0;
      const long double A = a, tt = tau, TT = T, XX = X;
      const long double sh = std::sinh(A * TT / 4), ch = std::cosh(A * TT / 4);
      switch (tr.segment_of(tau)) {
        case 0:
          t = (XX + 1 / A) * std::sinh(A * tt);
          x = (XX + 1 / A) * std::cosh(A * tt) - 1 / A;
          break;
        case 1:
          t = (-XX + 1 / A) * std::sinh(A * (tt - TT / 2)) + 2 / A * sh;
          x = (XX - 1 / A) * std::cosh(A * (tt - TT / 2)) + 2 / A * ch - 1 / A;
          break;
        default:
          t = (XX + 1 / A) * std::sinh(A * (tt - TT)) + 4 / A * sh;
          x = (XX + 1 / A) * std::cosh(A * (tt - TT)) - 1 / A;
      }
      const FermiFrame f = opt.frame(tr, tr.segment_of(tau), tau);
      const Event e = f.at(X);
      const double scale = std::max({1.0, static_cast<double>(std::abs(t)), 1.0 / a});
      worst = std::max({worst, std::abs(e.t - static_cast<double>(t)) / scale,
                        std::abs(e.x - static_cast<double>(x)) / scale});
      // chart centred on the worldline
      const Event c = f.at(0.0);
      worst = std::max({worst, std::abs(c.t - f.t), std::abs(c.x - f.x)});
    }
    return {worst < 1e-12, "max relative deviation " + detail::fmt(worst)};
  });
}

inline CheckResult check_classical_ratio_monotone() {
  return detail::timed("classical_ratio_monotone", []() -> std::pair<bool, std::string> {
    double prev = classical_ratio(0.0);
    bool ok = prev == 1.0;
    for (int i = 1; i <= 2000; ++i) {
      const double r = classical_ratio(0.01 * i);
      ok = ok && r < prev && r > 0.0 && r <= 1.0;
      prev = r;
    }
    return {ok, "classical_ratio(20) = " + detail::fmt(prev)};
  });
}

inline CheckResult check_gaussian_normalization() {
  return detail::timed("gaussian_normalization", []() -> std::pair<bool, std::string> {
    const double sigma = 0.7;
    QuadratureSpec q;
    q.rel_tol = 1e-10;
    const QuadratureSpec qy = q.inner();
    const QuadratureSpec qz = qy.inner();
    const double L = 8.0 * sigma;
    auto r = integrate_1d(
        [&](double x) {
          return integrate_1d(
              [&](double y) {
                return integrate_1d([&](double z) { return gaussian_profile({x, y, z}, sigma); }, -L, L, qz);
              },
              -L, L, qy);
        },
        -L, L, q);
    const double dev = std::abs(r.value - 1.0);
    return {dev < 1e-8 && r.converged, "|I - 1| = " + detail::fmt(dev)};
  });
}

inline CheckResult check_ideal_rate_maximum() {
  return detail::timed("ideal_rate_stationary_point", []() -> std::pair<bool, std::string> {
    const double sigma = 0.3;
    const double peak = 1.0 / (sigma * std::numbers::sqrt2);
    const double h = 1e-4;
    const double d1 = (ideal_rate(peak + h, sigma) - ideal_rate(peak - h, sigma)) / (2 * h);
    const double d2 = (ideal_rate(peak + h, sigma) - 2 * ideal_rate(peak, sigma) + ideal_rate(peak - h, sigma)) / (h * h);
    return {std::abs(d1) < 1e-7 && d2 < 0.0, "d/dOmega at peak " + detail::fmt(d1)};
  });
}

namespace detail {

inline IntegrandPoint random_point(std::mt19937_64& rng, double T) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  return {u01(rng) * T, u01(rng) * T, u01(rng) * std::numbers::pi, 0.5 + 30.0 * u01(rng)};
}

inline IntegrandPoint point_in(std::mt19937_64& rng, const PiecewiseTrajectory& tr, TermLabel l, double wmax) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const auto [i, j] = segments_of(l);
  const double t = tr.segment_begin(i) + u01(rng) * (tr.segment_end(i) - tr.segment_begin(i));
  const double tp = tr.segment_begin(j) + u01(rng) * (tr.segment_end(j) - tr.segment_begin(j));
  return {t, tp, (0.02 + 0.96 * u01(rng)) * std::numbers::pi, wmax * (0.01 + 0.99 * u01(rng))};
}

}  // namespace detail

inline CheckResult check_kernel_conjugate_symmetry(const ValidationOptions& opt) {
  return detail::timed("kernel_conjugate_symmetry", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 4);
    double worst = 0.0;
    for (double aT : {0.5, 2.0, 4.0}) {
      const Scenario s = Scenario::from_dimensionless(aT, 2.0, 0.1, 2.0);
      for (TermLabel l : {TermLabel::p11, TermLabel::p22, TermLabel::p33})
        for (int n = 0; n < 200; ++n) {
          IntegrandPoint p = detail::random_point(rng, s.T);
          const complex f = f_term(l, p, s);
          std::swap(p.tau, p.tau_prime);
          const complex g = std::conj(f_term(l, p, s));
          worst = std::max(worst, std::abs(f - g) / std::max(std::abs(f), 1e-300));
        }
    }
    return {worst < 1e-9, "max relative asymmetry " + detail::fmt(worst)};
  });
}

/// f_ij against (w sin theta / 8 pi^2) G_i(tau) conj(G_j(tau')) built from the Fermi frames.
inline CheckResult check_kernel_factorization(const ValidationOptions& opt) {
  return detail::timed("kernel_factorization", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 5);
    double worst = 0.0;
    for (double aT : {0.3, 2.0, 4.0}) {
      const Scenario s = Scenario::from_dimensionless(aT, 3.0, 0.2, 2.0);
      const PiecewiseTrajectory tr(s);
      for (TermLabel l : kAllTerms)
        for (int n = 0; n < 200; ++n) {
          const IntegrandPoint p = detail::point_in(rng, tr, l, 20.0 / s.sigma);
          const auto [i, j] = segments_of(l);
          const complex f = f_term(l, p, s);
          const complex g = mode_measure(p.theta, p.omega_k) *
                            segment_factor(tr, i, p.tau, p.theta, p.omega_k, s.omega, s.sigma) *
                            std::conj(segment_factor(tr, j, p.tau_prime, p.theta, p.omega_k, s.omega, s.sigma));
          const double scale = std::max(std::abs(f), 1e-300);
          worst = std::max(worst, std::abs(f - g) / scale);
        }
    }
    return {worst < 1e-8, "max relative mismatch " + detail::fmt(worst)};
  });
}

/// |f_ij| <= (w sin theta / 8 pi^2) exp(-c sigma^2 w^2) with c = e^{-aT/2}.
inline CheckResult check_gaussian_dominance(const ValidationOptions& opt) {
  return detail::timed("gaussian_dominance", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 6);
    double worst = -1e300;
    for (double aT : {0.5, 2.0, 4.0}) {
      const Scenario s = Scenario::from_dimensionless(aT, 2.0, 0.1, 2.0);
      const PiecewiseTrajectory tr(s);
      const double c = std::exp(-0.5 * aT);
      for (TermLabel l : kAllTerms)
        for (int n = 0; n < 300; ++n) {
          const IntegrandPoint p = detail::point_in(rng, tr, l, 16.0 / s.sigma);
          const double m = mode_measure(p.theta, p.omega_k);
          const double excess = std::log(std::abs(f_term(l, p, s)) / m) + c * s.sigma * s.sigma * p.omega_k * p.omega_k;
          worst = std::max(worst, excess);
        }
    }
    return {worst <= 1e-9, "max (Re exponent + c sigma^2 w^2) = " + detail::fmt(worst)};
  });
}

/// Central differences at step h and h/2 agree; a transcription slip that
/// creates a kink or jump shows up as a mismatch.
inline CheckResult check_kernel_smoothness(const ValidationOptions& opt) {
  return detail::timed("kernel_smoothness", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(opt.seed + 7);
    const Scenario s = Scenario::from_dimensionless(2.0, 2.0, 0.2, 2.0);
    const PiecewiseTrajectory tr(s);
    double worst = 0.0;
    for (TermLabel l : kAllTerms)
      for (int n = 0; n < 20; ++n) {
        const IntegrandPoint p = detail::point_in(rng, tr, l, 10.0);
        for (int var = 0; var < 4; ++var) {
          auto shifted = [&](double d) {
            IntegrandPoint q = p;
            (var == 0 ? q.tau : var == 1 ? q.tau_prime : var == 2 ? q.theta : q.omega_k) += d;
            return f_term(l, q, s);
          };
          // fine central difference against a Richardson-extrapolated coarse pair
          auto central = [&](double h) { return (shifted(h) - shifted(-h)) / (2 * h); };
          const complex fine = central(1e-4);
          const complex rich = (4.0 * central(5e-4) - central(1e-3)) / 3.0;
          const double scale = std::max(std::abs(rich), std::abs(f_term(l, p, s))) + 1e-300;
          worst = std::max(worst, std::abs(fine - rich) / scale);
        }
      }
    return {worst < 1e-6, "max derivative mismatch " + detail::fmt(worst)};
  });
}

inline CheckResult check_quadrature_determinism(const ValidationOptions& opt) {
  return detail::timed("quadrature_determinism", [&]() -> std::pair<bool, std::string> {
    const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.2, 2.0);
    const auto q = QuadratureSpec::four_dimensional();
    const auto a = bob_probability(s, q, {1, "theta"}, opt.limits);
    const auto b = bob_probability(s, q, {std::max<std::size_t>(3, opt.workers), "theta"}, opt.limits);
    const auto c = bob_probability(s, q, {1, "theta"}, opt.limits);
    const bool same = a.total.value == b.total.value && a.total.value == c.total.value && a.terms == b.terms &&
                      a.total.error_estimate == b.total.error_estimate;
    return {same, same ? "bit-identical across worker counts" : "results differ between runs"};
  });
}

inline CheckResult check_tolerance_monotonicity() {
  return detail::timed("tolerance_monotonicity", []() -> std::pair<bool, std::string> {
    int failures = 0;
    for (const auto& c : detail::closed_form_suite()) {
      QuadratureSpec q;
      for (double tol : {1e-4, 1e-6, 1e-8}) {
        q.rel_tol = tol;
        const auto coarse = integrate_1d(c.f, c.lo, c.hi, q);
        q.rel_tol = tol / 2;
        const auto fine = integrate_1d(c.f, c.lo, c.hi, q);
        if (std::abs(fine.value - coarse.value) > coarse.error_estimate) ++failures;
      }
    }
    return {failures == 0, std::to_string(failures) + " violations in 30 cases"};
  });
}

inline CheckResult check_error_honesty() {
  return detail::timed("error_honesty", []() -> std::pair<bool, std::string> {
    int total = 0;
    int honest = 0;
    for (const auto& c : detail::closed_form_suite())
      for (double tol : {1e-3, 1e-5, 1e-7, 1e-9}) {
        QuadratureSpec q;
        q.rel_tol = tol;
        const auto r = integrate_1d(c.f, c.lo, c.hi, q);
        ++total;
        if (std::abs(r.value - c.exact) <= 10.0 * r.error_estimate + 1e-15 * std::abs(c.exact)) ++honest;
      }
    return {honest >= 0.95 * total, std::to_string(honest) + "/" + std::to_string(total) + " honest"};
  });
}

inline CheckResult check_alice_identity() {
  return detail::timed("alice_inertial_identity", []() -> std::pair<bool, std::string> {
    double worst = 0.0;
    for (double aT : {0.5, 2.0, 4.0})
      for (double T : {1.0, 4.0}) {
        const Scenario s = Scenario::from_dimensionless(aT, T, 0.1, 2.0);
        const double a = alice_probability(s).value;
        const double b = inertial_probability(elapsed_inertial_time(s.a, s.T), s.omega, s.sigma).value;
        worst = std::max(worst, std::abs(a - b) / b);
      }
    return {worst < 1e-12, "max relative difference " + detail::fmt(worst)};
  });
}

/// Bob at aT = 1e-3 must reproduce the inertial clock of duration T.
inline CheckResult check_inertial_oracle(const ValidationOptions& opt) {
  return detail::timed("inertial_degeneration_oracle", [&]() -> std::pair<bool, std::string> {
    const Scenario s = Scenario::from_dimensionless(1e-3, 4.0, 0.1, 2.0);
    const auto b = bob_probability(s, QuadratureSpec::four_dimensional(), {opt.workers, "theta"}, opt.limits);
    const double p = inertial_probability(s.T, s.omega, s.sigma).value;
    const double dev = std::abs(b.total.value - p) / p;
    return {dev < 1e-3, "relative deviation " + detail::fmt(dev)};
  });
}

/// Diagonal terms by the direct 4-D route are real, and the swapped
/// (tau <-> tau') kernel integrates to the conjugate of P12.
inline CheckResult check_direct_route_symmetries(const ValidationOptions& opt) {
  return detail::timed("direct_route_symmetries", [&]() -> std::pair<bool, std::string> {
    const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.2, 2.0);
    const auto q = QuadratureSpec::four_dimensional();
    double worst_im = 0.0;
    bool ok = true;
    for (TermLabel l : {TermLabel::p11, TermLabel::p22, TermLabel::p33}) {
      const auto r = bob_term_direct(l, s, q, {opt.workers, "tau"});
      const double rel_err = r.error_estimate / std::abs(r.value);
      worst_im = std::max(worst_im, std::abs(r.value.imag()) / std::abs(r.value));
      ok = ok && r.converged && std::abs(r.value.imag()) / std::abs(r.value) < 10.0 * rel_err + 1e-15;
    }
    const PiecewiseTrajectory tr(s);
    const auto p12 = bob_term_direct(TermLabel::p12, s, q, {opt.workers, "tau"});
    Box4 box{{tr.segment_begin(1), tr.segment_end(1)},
             {tr.segment_begin(0), tr.segment_end(0)},
             {0.0, std::numbers::pi}};
    box.omega_scale = s.sigma;
    const auto p21 = integrate_4d(
        [&](double t, double tp, double th, double w) { return std::conj(f_term(TermLabel::p12, {tp, t, th, w}, s)); },
        box, q, {opt.workers, "tau"});
    const double swap = std::abs(p21.value - std::conj(p12.value));
    ok = ok && swap <= p21.error_estimate + p12.error_estimate;
    return {ok, "max |Im P_ii|/|P_ii| " + detail::fmt(worst_im) + ", |P21 - conj P12| " + detail::fmt(swap)};
  });
}

/// All six terms by the factorized route against the direct 4-D route.
inline CheckResult check_direct_vs_factorized(const ValidationOptions& opt) {
  return detail::timed("direct_vs_factorized_terms", [&]() -> std::pair<bool, std::string> {
    const Scenario s = Scenario::from_dimensionless(2.0, 1.0, 0.2, 2.0);
    const auto q = QuadratureSpec::four_dimensional();
    const auto fact = bob_terms(s, kAllTerms, q, {opt.workers, "theta"});
    double worst = 0.0;
    bool ok = true;
    for (TermLabel l : kAllTerms) {
      const auto d = bob_term_direct(l, s, q, {opt.workers, "tau"});
      const complex f = fact.value[static_cast<std::size_t>(l)];
      const double diff = std::abs(d.value - f);
      worst = std::max(worst, diff / std::abs(f));
      ok = ok && diff <= d.error_estimate + fact.error_estimate;
    }
    return {ok, "max relative difference " + detail::fmt(worst)};
  });
}

inline CheckResult check_closed_forms() {
  return detail::timed("closed_form_values", []() -> std::pair<bool, std::string> {
    bool ok = true;
    auto near = [&](double got, double want, double rel) { ok = ok && std::abs(got - want) <= rel * std::abs(want); };
    near(classical_ratio(2.0), 0.95951737566747, 1e-12);
    near(classical_ratio(4.0), 0.85091812823932, 1e-12);
    near(max_relative_velocity(2.0), 0.462117157260010, 1e-12);
    near(max_relative_velocity(4.0), 0.761594155955765, 1e-12);
    near(elapsed_inertial_time(1.0, 4.0), 4.70080477457521, 1e-12);
    near(ideal_rate(2.0, 0.1), 0.305828777023164, 1e-12);
    const double carbon = decay_rate_from_half_life(5730.0 * kSecondsPerJulianYear);
    near(carbon, 3.833e-12, 1e-3);
    near(carbon, 3.84e-12, 5e-3);
    near(expected_decays(1e15, 3.84e-12, 1.0).count, 3840.0, 1e-12);
    return {ok, ok ? "all closed forms match" : "closed-form mismatch"};
  });
}

inline std::vector<CheckResult> run_validation(const ValidationOptions& opt = {}) {
  std::vector<CheckResult> out;
  out.push_back(check_trajectory_continuity(opt));
  out.push_back(check_four_velocity_normalization(opt));
  out.push_back(check_trajectory_closure(opt));
  out.push_back(check_fermi_maps(opt));
  out.push_back(check_classical_ratio_monotone());
  out.push_back(check_gaussian_normalization());
  out.push_back(check_ideal_rate_maximum());
  out.push_back(check_kernel_conjugate_symmetry(opt));
  out.push_back(check_kernel_factorization(opt));
  out.push_back(check_gaussian_dominance(opt));
  out.push_back(check_kernel_smoothness(opt));
  out.push_back(check_quadrature_determinism(opt));
  out.push_back(check_tolerance_monotonicity());
  out.push_back(check_error_honesty());
  out.push_back(check_alice_identity());
  out.push_back(check_inertial_oracle(opt));
  out.push_back(check_direct_route_symmetries(opt));
  out.push_back(check_direct_vs_factorized(opt));
  out.push_back(check_closed_forms());
  return out;
}

}  // namespace tempus
