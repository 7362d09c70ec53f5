#pragma once

// Adaptive Gauss-Kronrod (10/21) quadrature for real, complex and
// fixed-size vector-valued integrands, plus the semi-infinite Gaussian-tail
// truncation and an iterated 4-D driver.
//
// An integrand may return either a plain value or an IntegralResult (the
// result of an inner integration); in the latter case the inner error
// estimates are carried to the outer level weighted by the Kronrod weights.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "tempus/parallel.hpp"

namespace tempus {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 2000;
  // omega is truncated at omega_cutoff_multiple / sigma
  double omega_cutoff_multiple = 8.0;

  static QuadratureSpec one_dimensional() { return {}; }
  static QuadratureSpec four_dimensional() { return {1e-4, 1e-14, 200, 8.0}; }

  /// Tolerances for the next nested level.
  QuadratureSpec inner() const {
    QuadratureSpec s = *this;
    s.rel_tol /= 10.0;
    return s;
  }

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quadrature.rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature.abs_tol must be > 0");
    if (max_subdivisions == 0) throw std::invalid_argument("quadrature.max_subdivisions must be > 0");
    if (!(omega_cutoff_multiple >= 4.0))
      throw std::invalid_argument("quadrature.omega_cutoff_multiple must be >= 4");
  }
};

template <class V>
struct IntegralResult {
  using value_type = V;

  V value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

template <class T>
struct is_integral_result : std::false_type {};
template <class V>
struct is_integral_result<IntegralResult<V>> : std::true_type {};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct RunOptions {
  std::size_t workers = 1;
  std::string_view level = "1d";
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class T, std::size_t N>
double magnitude(const std::array<T, N>& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, magnitude(e));
  return m;
}

inline void add_scaled(double& acc, double w, double v) { acc += w * v; }
inline void add_scaled(std::complex<double>& acc, double w, const std::complex<double>& v) { acc += w * v; }
template <class T, std::size_t N>
void add_scaled(std::array<T, N>& acc, double w, const std::array<T, N>& v) {
  for (std::size_t i = 0; i < N; ++i) add_scaled(acc[i], w, v[i]);
}

inline double distance(double a, double b) { return std::abs(a - b); }
inline double distance(const std::complex<double>& a, const std::complex<double>& b) { return std::abs(a - b); }
template <class T, std::size_t N>
double distance(const std::array<T, N>& a, const std::array<T, N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, distance(a[i], b[i]));
  return m;
}

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const std::complex<double>& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
template <class T, std::size_t N>
bool is_finite(const std::array<T, N>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& e) { return is_finite(e); });
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// xgk[1], xgk[3], ..., xgk[9] are the Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr std::size_t kNodes = 21;

// Node i of a panel: i < 10 -> left of centre, i == 10 -> centre, i > 10 -> right.
inline double node(double centre, double half, std::size_t i) {
  if (i < 10) return centre - half * kXgk[i];
  if (i == 10) return centre;
  return centre + half * kXgk[20 - i];
}

template <class F>
auto sample(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (is_integral_result<R>::value) {
    return f(x);
  } else {
    return IntegralResult<R>{f(x), 0.0, 1, true, {}};
  }
}

template <class F>
using sample_t = decltype(sample(std::declval<F&>(), 0.0));

template <class V>
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  V value{};
  double discrepancy = 0.0;
  double inner_error = 0.0;
  std::size_t evaluations = 0;
  bool finite = true;
  std::vector<std::string> warnings;
};

template <class V>
Panel<V> reduce_panel(double lo, double hi, std::span<const IntegralResult<V>> s) {
  Panel<V> p;
  p.lo = lo;
  p.hi = hi;
  const double half = 0.5 * (hi - lo);
  V kronrod{};
  V gauss{};
  add_scaled(kronrod, kWgk[10], s[10].value);
  p.inner_error += kWgk[10] * s[10].error_estimate;
  for (std::size_t j = 0; j < 10; ++j) {
    const auto& l = s[j];
    const auto& r = s[20 - j];
    add_scaled(kronrod, kWgk[j], l.value);
    add_scaled(kronrod, kWgk[j], r.value);
    p.inner_error += kWgk[j] * (l.error_estimate + r.error_estimate);
    if (j % 2 == 1) {
      add_scaled(gauss, kWg[j / 2], l.value);
      add_scaled(gauss, kWg[j / 2], r.value);
    }
  }
  V scaled{};
  add_scaled(scaled, half, kronrod);
  V gscaled{};
  add_scaled(gscaled, half, gauss);
  p.value = scaled;
  p.discrepancy = distance(scaled, gscaled);
  p.inner_error *= half;
  for (const auto& e : s) {
    p.evaluations += e.evaluations;
    p.finite = p.finite && is_finite(e.value);
    for (const auto& w : e.warnings) p.warnings.push_back(w);
  }
  std::sort(p.warnings.begin(), p.warnings.end());
  p.warnings.erase(std::unique(p.warnings.begin(), p.warnings.end()), p.warnings.end());
  return p;
}

// Evaluates the 21 Kronrod nodes of every interval; node evaluations are
// independent and may run concurrently.
template <class F>
auto evaluate_panels(F& f, std::span<const Interval> cells, std::size_t workers) {
  using S = sample_t<F>;
  using V = typename S::value_type;
  std::vector<S> samples(cells.size() * kNodes);
  parallel_for(samples.size(), workers, [&](std::size_t k) {
    const Interval& c = cells[k / kNodes];
    samples[k] = sample(f, node(0.5 * (c.lo + c.hi), 0.5 * (c.hi - c.lo), k % kNodes));
  });
  std::vector<Panel<V>> panels;
  panels.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    panels.push_back(reduce_panel<V>(cells[i].lo, cells[i].hi,
                                     std::span<const S>(samples.data() + i * kNodes, kNodes)));
  return panels;
}

inline void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace detail

template <class F>
using integral_value_t = typename detail::sample_t<std::remove_reference_t<F>>::value_type;

/// Globally adaptive integration over consecutive panels delimited by
/// `breaks` (strictly increasing, at least two points). The panel with the
/// largest Gauss/Kronrod discrepancy is bisected until the summed error
/// meets max(rel_tol |I|, abs_tol) or max_subdivisions bisections are spent.
/// Panels are kept in order and summed left to right, so the result is
/// bit-reproducible for a fixed spec whatever `opts.workers` is.
template <class F>
IntegralResult<integral_value_t<F>> integrate_1d(F&& f, std::span<const double> breaks, const QuadratureSpec& spec,
                                                 RunOptions opts = {}) {
  using V = integral_value_t<F>;
  if (breaks.size() < 2) throw std::invalid_argument("integrate_1d: need at least two break points");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1])) throw std::invalid_argument("integrate_1d: break points must increase");

  std::vector<Interval> cells;
  for (std::size_t i = 1; i < breaks.size(); ++i) cells.push_back({breaks[i - 1], breaks[i]});
  auto panels = detail::evaluate_panels(f, std::span<const Interval>(cells), opts.workers);

  IntegralResult<V> out;
  std::size_t subdivisions = 0;
  bool budget_hit = false;
  bool inner_limited = false;
  bool underflow = false;
  for (;;) {
    V total{};
    double disc = 0.0;
    double inner = 0.0;
    bool finite = true;
    for (const auto& p : panels) {
      detail::add_scaled(total, 1.0, p.value);
      disc += p.discrepancy;
      inner += p.inner_error;
      finite = finite && p.finite;
    }
    if (!finite) throw std::domain_error("integrate_1d: integrand is not finite");
    const double tol = std::max(spec.rel_tol * detail::magnitude(total), spec.abs_tol);
    if (disc + inner <= tol) break;
    // bisecting cannot remove error carried up from the inner level
    if (inner > tol && disc <= inner) {
      inner_limited = true;
      break;
    }
    if (subdivisions >= spec.max_subdivisions) {
      budget_hit = true;
      break;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].discrepancy > panels[worst].discrepancy) worst = i;
    const double lo = panels[worst].lo;
    const double hi = panels[worst].hi;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) || (hi - lo) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      underflow = true;
      break;
    }
    const std::array<Interval, 2> halves = {Interval{lo, mid}, Interval{mid, hi}};
    auto split = detail::evaluate_panels(f, std::span<const Interval>(halves), opts.workers);
    panels[worst] = std::move(split[0]);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, std::move(split[1]));
    ++subdivisions;
  }

  // Inner levels carry their error estimates up, so convergence is judged
  // against this level's budget; inner warnings are still passed on.
  for (const auto& p : panels) {
    detail::add_scaled(out.value, 1.0, p.value);
    out.error_estimate += p.discrepancy + p.inner_error;
    out.evaluations += p.evaluations;
    detail::merge_warnings(out.warnings, p.warnings);
  }
  const std::string level(opts.level);
  if (budget_hit) out.warnings.push_back("subdivision budget exhausted at level " + level);
  if (underflow) out.warnings.push_back("panel width underflow at level " + level);
  if (inner_limited) out.warnings.push_back("inner error exceeds tolerance at level " + level);
  out.converged = !budget_hit && !underflow && !inner_limited;
  std::sort(out.warnings.begin(), out.warnings.end());
  out.warnings.erase(std::unique(out.warnings.begin(), out.warnings.end()), out.warnings.end());
  return out;
}

template <class F>
IntegralResult<integral_value_t<F>> integrate_1d(F&& f, double lo, double hi, const QuadratureSpec& spec,
                                                 RunOptions opts = {}) {
  if (!(lo < hi)) throw std::invalid_argument("integrate_1d: need lo < hi");
  const std::array<double, 2> b = {lo, hi};
  return integrate_1d(std::forward<F>(f), std::span<const double>(b), spec, opts);
}

/// Equally spaced break points: `panels` cells over [lo, hi].
inline std::vector<double> uniform_breaks(double lo, double hi, std::size_t panels) {
  panels = std::max<std::size_t>(panels, 1);
  std::vector<double> b(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) b[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(panels);
  b.back() = hi;
  return b;
}

/// Integral over [0, inf) of an integrand with Gaussian damping on the
/// scale 1/sigma, truncated at omega_max = K / sigma and split into
/// `initial_panels` equal cells. The slab [K, 2K] / sigma is integrated as
/// well; if it exceeds the tolerance the result is flagged unconverged.
/// The returned value is the K-truncated integral; the slab magnitude is
/// added to its error estimate.
template <class F>
IntegralResult<integral_value_t<F>> integrate_omega(F&& f, const QuadratureSpec& spec, double sigma,
                                                    RunOptions opts = {}, std::size_t initial_panels = 1) {
  if (!(sigma > 0.0)) throw std::invalid_argument("integrate_omega: sigma must be > 0");
  const double cutoff = spec.omega_cutoff_multiple / sigma;
  const auto breaks = uniform_breaks(0.0, cutoff, initial_panels);
  auto main = integrate_1d(f, std::span<const double>(breaks), spec, opts);
  auto tail = integrate_1d(f, cutoff, 2.0 * cutoff, spec, opts);
  const double slab = detail::magnitude(tail.value);
  main.error_estimate += slab + tail.error_estimate;
  main.evaluations += tail.evaluations;
  detail::merge_warnings(main.warnings, tail.warnings);
  if (slab > std::max(spec.rel_tol * detail::magnitude(main.value), spec.abs_tol)) {
    main.converged = false;
    main.warnings.push_back("omega cutoff not converged at level " + std::string(opts.level));
  }
  main.converged = main.converged && tail.converged;
  return main;
}

/// Integration box for integrate_4d. An infinite omega.hi means [omega.lo = 0, inf)
/// with Gaussian truncation on the scale `omega_scale` (sigma).
struct Box4 {
  Interval tau;
  Interval tau_prime;
  Interval theta;
  Interval omega{0.0, std::numeric_limits<double>::infinity()};
  double omega_scale = 1.0;
};

/// Iterated adaptive integration of f(tau, tau', theta, omega), nested in
/// that order with omega innermost. Each inner level runs at one tenth of
/// the relative tolerance of the level enclosing it.
template <class F>
auto integrate_4d(F&& f, const Box4& box, const QuadratureSpec& spec, RunOptions opts = {}) {
  using V = std::invoke_result_t<F&, double, double, double, double>;
  spec.validate();
  if (std::isinf(box.omega.hi) && box.omega.lo != 0.0)
    throw std::invalid_argument("integrate_4d: semi-infinite omega range must start at 0");
  const QuadratureSpec s_tp = spec.inner();
  const QuadratureSpec s_th = s_tp.inner();
  const QuadratureSpec s_w = s_th.inner();

  auto over_omega = [&](double t, double tp, double th) -> IntegralResult<V> {
    auto g = [&](double w) { return f(t, tp, th, w); };
    if (std::isinf(box.omega.hi)) return integrate_omega(g, s_w, box.omega_scale, {1, "omega"});
    return integrate_1d(g, box.omega.lo, box.omega.hi, s_w, {1, "omega"});
  };
  auto over_theta = [&](double t, double tp) {
    return integrate_1d([&](double th) { return over_omega(t, tp, th); }, box.theta.lo, box.theta.hi, s_th,
                        {1, "theta"});
  };
  auto over_tau_prime = [&](double t) {
    return integrate_1d([&](double tp) { return over_theta(t, tp); }, box.tau_prime.lo, box.tau_prime.hi, s_tp,
                        {1, "tau_prime"});
  };
  return integrate_1d(over_tau_prime, box.tau.lo, box.tau.hi, spec, {opts.workers, "tau"});
}

}  // namespace tempus
