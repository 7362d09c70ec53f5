#pragma once

// Kinematics of the twin setup: Alice at rest at the origin, Bob on a
// three-segment worldline of piecewise constant proper acceleration
// (+a, -a, +a over proper-time quarters 1, 2-3, 4). Natural units c = 1,
// signature (-,+,+,+).

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempus {

struct Event {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Physical parameters of one twin-paradox instance. `a` is Bob's proper
/// acceleration, `T` his total proper time, `omega` the clock gap and `sigma`
/// the clock width (also its light-crossing time). `t0` is the reference
/// timescale used only for reporting.
struct Scenario {
  double a = 0.0;
  double T = 1.0;
  double omega = 2.0;
  double sigma = 0.1;
  double lambda = 1.0;
  double t0 = 1.0;

  double aT() const { return a * T; }

  void validate() const {
    auto require = [](bool ok, const char* field, const char* what) {
      if (!ok) throw std::invalid_argument(std::string("scenario.") + field + " " + what);
    };
    require(std::isfinite(a) && a >= 0.0, "a", "must be finite and >= 0");
    require(std::isfinite(T) && T > 0.0, "T", "must be finite and > 0");
    require(std::isfinite(omega) && omega >= 0.0, "omega", "must be finite and >= 0");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma", "must be finite and > 0");
    require(std::isfinite(lambda), "lambda", "must be finite");
    require(std::isfinite(t0) && t0 > 0.0, "t0", "must be finite and > 0");
  }

  /// Builds a scenario from the dimensionless figure parameters
  /// (aT, T/T0, sigma/T0, Omega*T0) with T0 = 1.
  static Scenario from_dimensionless(double aT, double T_over_T0, double sigma_over_T0,
                                     double omega_T0) {
    Scenario s;
    s.T = T_over_T0;
    s.a = aT / T_over_T0;
    s.sigma = sigma_over_T0;
    s.omega = omega_T0;
    s.t0 = 1.0;
    return s;
  }
};

namespace detail {

// sinh(x)/x and (cosh(x) - 1)/x, accurate down to x = 0.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(x) / x;
}

inline double coshm1c(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 0.5 * x * (1.0 + x2 / 12.0 * (1.0 + x2 / 30.0));
  }
  const double s = std::sinh(0.5 * x);
  return 2.0 * s * s / x;
}

}  // namespace detail

/// T_A = (4/a) sinh(aT/4): Alice's proper time between departure and reunion.
inline double elapsed_inertial_time(double a, double T) {
  if (!(a >= 0.0) || !(T > 0.0)) throw std::domain_error("elapsed_inertial_time: need a >= 0, T > 0");
  return T * detail::sinhc(0.25 * a * T);
}

/// Inverse of elapsed_inertial_time at fixed a: T_B = (4/a) asinh(a T_A / 4).
inline double bob_proper_time(double a, double T_alice) {
  if (!(a >= 0.0) || !(T_alice > 0.0)) throw std::domain_error("bob_proper_time: need a >= 0, T_A > 0");
  const double u = 0.25 * a * T_alice;
  if (std::abs(u) < 1e-4) return T_alice * (1.0 - u * u / 6.0 * (1.0 - 0.45 * u * u));
  return T_alice * std::asinh(u) / u;
}

/// T_B / T_A = aT / (4 sinh(aT/4)).
inline double classical_ratio(double aT) {
  if (!(aT >= 0.0)) throw std::domain_error("classical_ratio: need aT >= 0");
  return 1.0 / detail::sinhc(0.25 * aT);
}

/// Bob's peak speed relative to Alice, reached at tau = T/4 and 3T/4.
inline double max_relative_velocity(double aT) {
  if (!(aT >= 0.0)) throw std::domain_error("max_relative_velocity: need aT >= 0");
  return std::tanh(0.25 * aT);
}

/// Local Fermi frame of one segment at proper time tau: the center event,
/// the unit 4-velocity and the unit spatial axis d(t,x)/dX. The y and z
/// axes are inherited unchanged from Alice's frame.
struct FermiFrame {
  double t = 0.0;
  double x = 0.0;
  double ut = 1.0;
  double ux = 0.0;
  double et = 0.0;
  double ex = 1.0;

  Event at(double X, double y = 0.0, double z = 0.0) const { return {t + X * et, x + X * ex, y, z}; }
};

/// Three-segment worldline. Segment k (0-based) covers the proper-time
/// interval [bounds[k], bounds[k+1]); the final segment also owns tau = T.
class PiecewiseTrajectory {
 public:
  static constexpr std::size_t kSegments = 3;

  PiecewiseTrajectory(double a, double T) : a_(a), T_(T) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::domain_error("trajectory: acceleration must be >= 0");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::domain_error("trajectory: proper time must be > 0");
  }
  explicit PiecewiseTrajectory(const Scenario& s) : PiecewiseTrajectory(s.a, s.T) {}

  double acceleration() const { return a_; }
  double total_time() const { return T_; }

  double segment_begin(std::size_t k) const { return bounds()[k]; }
  double segment_end(std::size_t k) const { return bounds()[k + 1]; }

  std::array<double, 4> bounds() const { return {0.0, 0.25 * T_, 0.75 * T_, T_}; }

  std::size_t segment_of(double tau) const {
    check_range(tau);
    if (tau < 0.25 * T_) return 0;
    if (tau < 0.75 * T_) return 1;
    return 2;
  }

  /// Evaluates segment k's chart formula at tau. No range check: the
  /// formulas are entire in tau, and the integration layer needs them
  /// outside their own segment when testing alternative limit assignments.
  FermiFrame frame_of_segment(std::size_t k, double tau) const {
    FermiFrame f;
    const double a = a_;
    switch (k) {
      case 0: {
        const double u = a * tau;
        f.t = tau * detail::sinhc(u);
        f.x = tau * detail::coshm1c(u);
        f.ut = std::cosh(u);
        f.ux = std::sinh(u);
        f.et = std::sinh(u);
        f.ex = std::cosh(u);
        break;
      }
      case 1: {
        const double s = tau - 0.5 * T_;
        const double u = a * s;
        const double q = 0.25 * T_;
        const double uq = a * q;
        // x(tau) = -(1/a)cosh(u) + (2/a)cosh(aT/4) - 1/a, written in
        // cancellation-free form; continuous with segment 0 at tau = T/4.
        f.t = s * detail::sinhc(u) + 2.0 * q * detail::sinhc(uq);
        f.x = -s * detail::coshm1c(u) + 2.0 * q * detail::coshm1c(uq);
        f.ut = std::cosh(u);
        f.ux = -std::sinh(u);
        f.et = -std::sinh(u);
        f.ex = std::cosh(u);
        break;
      }
      case 2: {
        const double s = tau - T_;
        const double u = a * s;
        const double q = 0.25 * T_;
        f.t = s * detail::sinhc(u) + 4.0 * q * detail::sinhc(a * q);
        f.x = s * detail::coshm1c(u);
        f.ut = std::cosh(u);
        f.ux = std::sinh(u);
        f.et = std::sinh(u);
        f.ex = std::cosh(u);
        break;
      }
      default:
        throw std::out_of_range("trajectory: segment index must be 0, 1 or 2");
    }
    return f;
  }

  FermiFrame frame(double tau) const { return frame_of_segment(segment_of(tau), tau); }

  Event position(double tau) const { return frame(tau).at(0.0); }

  Event fermi_to_inertial(double tau, double X, double y, double z) const {
    return frame(tau).at(X, y, z);
  }

 private:
  void check_range(double tau) const {
    if (!(tau >= 0.0 && tau <= T_)) throw std::domain_error("trajectory: tau outside [0, T]");
  }

  double a_;
  double T_;
};

inline Event bob_position(double tau, const Scenario& scn) {
  return PiecewiseTrajectory(scn).position(tau);
}

inline Event bob_fermi_to_inertial(double tau, const std::array<double, 3>& xi, const Scenario& scn) {
  return PiecewiseTrajectory(scn).fermi_to_inertial(tau, xi[0], xi[1], xi[2]);
}

struct ChartSample {
  double tau = 0.0;
  double X = 0.0;
  double t = 0.0;
  double x = 0.0;
};

/// Maps a (tau, X) grid of Bob's Fermi chart into Alice's (t, x) plane.
/// Rows are tau-major: for each tau, every X in order.
inline std::vector<ChartSample> fermi_chart_samples(const Scenario& scn, std::span<const double> tau_grid,
                                                    std::span<const double> X_grid) {
  const PiecewiseTrajectory traj(scn);
  std::vector<ChartSample> rows;
  rows.reserve(tau_grid.size() * X_grid.size());
  for (double tau : tau_grid) {
    const FermiFrame f = traj.frame(tau);
    for (double X : X_grid) {
      const Event e = f.at(X);
      rows.push_back({tau, X, e.t, e.x});
    }
  }
  return rows;
}

/// The segment charts degenerate at |X| = 1/a; a Gaussian of width sigma
/// reaches there with non-negligible weight once sigma * a is sizeable.
inline std::vector<std::string> chart_warnings(const Scenario& scn) {
  std::vector<std::string> w;
  if (scn.sigma * scn.a > 0.5) w.emplace_back("sigma*a exceeds 0.5");
  return w;
}

}  // namespace tempus
