#pragma once

// Batch sweeps over figure parameters and their CSV tables. All physical
// inputs are dimensionless multiples of the reference timescale T0.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tempus/geometry.hpp"
#include "tempus/parallel.hpp"
#include "tempus/probability.hpp"
#include "tempus/quadrature.hpp"

namespace tempus {

inline constexpr std::string_view kTwinHeader =
    "aT,T_over_T0,sigma_over_T0,omega_T0,P_A,P_A_err,P_B,P_B_err,ratio,classical_ratio,converged,warnings";
inline constexpr std::string_view kInertialHeader = "T_over_T0,sigma_over_T0,omega_T0,alpha,converged";
inline constexpr std::string_view kChartHeader = "tau,X,t,x";

/// Quadrature keys present in a config file; absent keys fall back to the
/// defaults of the sweep that uses them (1-D or 4-D).
struct QuadratureOverrides {
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<std::size_t> max_subdivisions;
  std::optional<double> omega_cutoff_multiple;

  QuadratureSpec apply(QuadratureSpec base) const {
    if (rel_tol) base.rel_tol = *rel_tol;
    if (abs_tol) base.abs_tol = *abs_tol;
    if (max_subdivisions) base.max_subdivisions = *max_subdivisions;
    if (omega_cutoff_multiple) base.omega_cutoff_multiple = *omega_cutoff_multiple;
    return base;
  }
};

/// Single scenario used by `chart` and `classical`.
struct ScenarioConfig {
  double aT = 2.0;
  double T_over_T0 = 1.0;
  double sigma_over_T0 = 0.1;
  double omega_T0 = 2.0;
  std::size_t tau_points = 41;
  std::vector<double> X_over_sigma_values = {-3, -2, -1, 0, 1, 2, 3};

  Scenario scenario() const { return Scenario::from_dimensionless(aT, T_over_T0, sigma_over_T0, omega_T0); }
};

struct SweepConfig {
  std::vector<double> aT_values;
  std::vector<double> T_over_T0_values;
  std::vector<double> sigma_over_T0_values;
  double omega_T0 = 2.0;
  QuadratureOverrides quadrature;
  std::string output_path;
  std::size_t workers = 1;
  ScenarioConfig scenario;

  QuadratureSpec twin_quadrature() const { return quadrature.apply(QuadratureSpec::four_dimensional()); }
  QuadratureSpec inertial_quadrature() const { return quadrature.apply(QuadratureSpec::one_dimensional()); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(std::string_view text, std::string_view field) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string(field) + ": not a number: '" + s + "'");
  return v;
}

// Comma-separated numbers; an item "lo:step:hi" expands to an inclusive range.
inline std::vector<double> parse_list(std::string_view text, std::string_view field) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_double(item, field));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument(std::string(field) + ": range must be lo:step:hi");
    const double lo = parse_double(item.substr(0, c1), field);
    const double step = parse_double(item.substr(c1 + 1, c2 - c1 - 1), field);
    const double hi = parse_double(item.substr(c2 + 1), field);
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument(std::string(field) + ": bad range " + item);
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline void require_positive_list(const std::vector<double>& v, const char* field) {
  if (v.empty()) throw std::invalid_argument(std::string(field) + " must not be empty");
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument(std::string(field) + " must contain only positive values (got " +
                                  format_double(x) + ")");
}

inline void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(field) + " must be positive (got " + format_double(v) + ")");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::string join_warnings(const std::vector<std::string>& w) {
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += ';';
    for (char c : x) s += (c == ',' || c == '\n') ? ' ' : c;
  }
  return s;
}

inline std::vector<std::string> split_warnings(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("csv: expected true/false, got '" + s + "'");
}

inline void check_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw std::invalid_argument("csv: header mismatch, expected '" + std::string(header) + "'");
}

}  // namespace detail

/// Reads an INI-style config with sections [scenario], [sweep],
/// [quadrature] and [output]. Keys mirror the SweepConfig field names.
inline SweepConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  SweepConfig cfg;
  auto get = [&](const char* path) { return tree.get_optional<std::string>(path); };
  if (auto v = get("sweep.aT_values")) cfg.aT_values = detail::parse_list(*v, "sweep.aT_values");
  if (auto v = get("sweep.T_over_T0_values")) cfg.T_over_T0_values = detail::parse_list(*v, "sweep.T_over_T0_values");
  if (auto v = get("sweep.sigma_over_T0_values"))
    cfg.sigma_over_T0_values = detail::parse_list(*v, "sweep.sigma_over_T0_values");
  if (auto v = get("sweep.omega_T0")) cfg.omega_T0 = detail::parse_double(*v, "sweep.omega_T0");
  if (auto v = get("sweep.workers"))
    cfg.workers = static_cast<std::size_t>(detail::parse_double(*v, "sweep.workers"));

  if (auto v = get("quadrature.rel_tol")) cfg.quadrature.rel_tol = detail::parse_double(*v, "quadrature.rel_tol");
  if (auto v = get("quadrature.abs_tol")) cfg.quadrature.abs_tol = detail::parse_double(*v, "quadrature.abs_tol");
  if (auto v = get("quadrature.max_subdivisions"))
    cfg.quadrature.max_subdivisions =
        static_cast<std::size_t>(detail::parse_double(*v, "quadrature.max_subdivisions"));
  if (auto v = get("quadrature.omega_cutoff_multiple"))
    cfg.quadrature.omega_cutoff_multiple = detail::parse_double(*v, "quadrature.omega_cutoff_multiple");

  if (auto v = get("output.output_path")) cfg.output_path = detail::trim(*v);

  auto& sc = cfg.scenario;
  if (auto v = get("scenario.aT")) sc.aT = detail::parse_double(*v, "scenario.aT");
  if (auto v = get("scenario.T_over_T0")) sc.T_over_T0 = detail::parse_double(*v, "scenario.T_over_T0");
  if (auto v = get("scenario.sigma_over_T0")) sc.sigma_over_T0 = detail::parse_double(*v, "scenario.sigma_over_T0");
  if (auto v = get("scenario.omega_T0")) sc.omega_T0 = detail::parse_double(*v, "scenario.omega_T0");
  if (auto v = get("scenario.tau_points"))
    sc.tau_points = static_cast<std::size_t>(detail::parse_double(*v, "scenario.tau_points"));
  if (auto v = get("scenario.X_over_sigma_values"))
    sc.X_over_sigma_values = detail::parse_list(*v, "scenario.X_over_sigma_values");
  return cfg;
}

inline SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  return parse_config(in);
}

enum class SweepKind { twin, inertial, chart };

/// Rejects empty axes and non-positive physical parameters, naming the field.
inline void validate_config(const SweepConfig& cfg, SweepKind kind) {
  switch (kind) {
    case SweepKind::twin:
      detail::require_positive_list(cfg.aT_values, "sweep.aT_values");
      [[fallthrough]];
    case SweepKind::inertial:
      detail::require_positive_list(cfg.T_over_T0_values, "sweep.T_over_T0_values");
      detail::require_positive_list(cfg.sigma_over_T0_values, "sweep.sigma_over_T0_values");
      detail::require_positive(cfg.omega_T0, "sweep.omega_T0");
      (kind == SweepKind::twin ? cfg.twin_quadrature() : cfg.inertial_quadrature()).validate();
      break;
    case SweepKind::chart: {
      const auto& s = cfg.scenario;
      if (!(s.aT >= 0.0)) throw std::invalid_argument("scenario.aT must be >= 0");
      detail::require_positive(s.T_over_T0, "scenario.T_over_T0");
      detail::require_positive(s.sigma_over_T0, "scenario.sigma_over_T0");
      if (s.tau_points < 2) throw std::invalid_argument("scenario.tau_points must be >= 2");
      if (s.X_over_sigma_values.empty()) throw std::invalid_argument("scenario.X_over_sigma_values must not be empty");
      break;
    }
  }
}

struct TwinRow {
  double aT = 0.0;
  double T_over_T0 = 0.0;
  double sigma_over_T0 = 0.0;
  double omega_T0 = 0.0;
  double P_A = 0.0;
  double P_A_err = 0.0;
  double P_B = 0.0;
  double P_B_err = 0.0;
  double ratio = 0.0;
  double classical_ratio = 0.0;
  bool converged = true;
  std::vector<std::string> warnings;

  bool operator==(const TwinRow&) const = default;
};

struct InertialRow {
  double T_over_T0 = 0.0;
  double sigma_over_T0 = 0.0;
  double omega_T0 = 0.0;
  double alpha = 0.0;
  bool converged = true;

  bool operator==(const InertialRow&) const = default;
};

using SweepTable = std::vector<TwinRow>;

/// One row per (aT, T/T0, sigma/T0) in nested list order, aT outermost.
/// Rows are independent and computed concurrently; each row's arithmetic is
/// sequential, so the table is identical for any worker count.
inline SweepTable run_twin_sweep(const SweepConfig& cfg) {
  validate_config(cfg, SweepKind::twin);
  const QuadratureSpec spec = cfg.twin_quadrature();
  SweepTable rows;
  for (double aT : cfg.aT_values)
    for (double T : cfg.T_over_T0_values)
      for (double s : cfg.sigma_over_T0_values) {
        TwinRow r;
        r.aT = aT;
        r.T_over_T0 = T;
        r.sigma_over_T0 = s;
        r.omega_T0 = cfg.omega_T0;
        rows.push_back(std::move(r));
      }
  const std::size_t workers = resolve_workers(cfg.workers);
  const std::size_t inner = std::max<std::size_t>(1, workers / std::max<std::size_t>(rows.size(), 1));
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    TwinRow& r = rows[i];
    const auto res = twin_ratio(Scenario::from_dimensionless(r.aT, r.T_over_T0, r.sigma_over_T0, r.omega_T0), spec,
                                {inner, "theta"});
    r.P_A = res.p_alice;
    r.P_A_err = res.p_alice_err;
    r.P_B = res.p_bob;
    r.P_B_err = res.p_bob_err;
    r.ratio = res.ratio;
    r.classical_ratio = res.classical_ratio;
    r.converged = res.converged;
    r.warnings = res.warnings;
  });
  return rows;
}

inline std::vector<InertialRow> run_inertial_sweep(const SweepConfig& cfg) {
  validate_config(cfg, SweepKind::inertial);
  const QuadratureSpec spec = cfg.inertial_quadrature();
  std::vector<InertialRow> rows;
  for (double T : cfg.T_over_T0_values)
    for (double s : cfg.sigma_over_T0_values) rows.push_back({T, s, cfg.omega_T0});
  parallel_for(rows.size(), resolve_workers(cfg.workers), [&](std::size_t i) {
    InertialRow& r = rows[i];
    const auto a = inertial_deviation(r.T_over_T0, r.omega_T0, r.sigma_over_T0, spec);
    r.alpha = a.value;
    r.converged = a.converged;
  });
  return rows;
}

/// Fermi-chart samples on `tau_points` equally spaced proper times in
/// [0, T] and X = k * sigma for each listed multiple k.
inline std::vector<ChartSample> run_chart_export(const ScenarioConfig& sc) {
  const Scenario scn = sc.scenario();
  scn.validate();
  const auto taus = uniform_breaks(0.0, scn.T, sc.tau_points - 1);
  std::vector<double> xs;
  for (double k : sc.X_over_sigma_values) xs.push_back(k * scn.sigma);
  return fermi_chart_samples(scn, taus, xs);
}

inline void write_twin_csv(std::ostream& out, const SweepTable& rows) {
  using detail::format_double;
  out << kTwinHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.aT) << ',' << format_double(r.T_over_T0) << ',' << format_double(r.sigma_over_T0) << ','
        << format_double(r.omega_T0) << ',' << format_double(r.P_A) << ',' << format_double(r.P_A_err) << ','
        << format_double(r.P_B) << ',' << format_double(r.P_B_err) << ',' << format_double(r.ratio) << ','
        << format_double(r.classical_ratio) << ',' << (r.converged ? "true" : "false") << ','
        << detail::join_warnings(r.warnings) << '\n';
  }
}

inline SweepTable read_twin_csv(std::istream& in) {
  detail::check_header(in, kTwinHeader);
  SweepTable rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = detail::split_csv_line(line);
    if (c.size() != 12) throw std::invalid_argument("csv: twin row needs 12 columns: " + line);
    TwinRow r;
    double* num[] = {&r.aT, &r.T_over_T0, &r.sigma_over_T0, &r.omega_T0, &r.P_A,
                     &r.P_A_err, &r.P_B, &r.P_B_err, &r.ratio, &r.classical_ratio};
    for (std::size_t i = 0; i < 10; ++i) *num[i] = detail::parse_double(c[i], "csv");
    r.converged = detail::parse_bool(c[10]);
    r.warnings = detail::split_warnings(c[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_inertial_csv(std::ostream& out, const std::vector<InertialRow>& rows) {
  using detail::format_double;
  out << kInertialHeader << '\n';
  for (const auto& r : rows)
    out << format_double(r.T_over_T0) << ',' << format_double(r.sigma_over_T0) << ',' << format_double(r.omega_T0)
        << ',' << format_double(r.alpha) << ',' << (r.converged ? "true" : "false") << '\n';
}

inline std::vector<InertialRow> read_inertial_csv(std::istream& in) {
  detail::check_header(in, kInertialHeader);
  std::vector<InertialRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = detail::split_csv_line(line);
    if (c.size() != 5) throw std::invalid_argument("csv: inertial row needs 5 columns: " + line);
    rows.push_back({detail::parse_double(c[0], "csv"), detail::parse_double(c[1], "csv"),
                    detail::parse_double(c[2], "csv"), detail::parse_double(c[3], "csv"),
                    detail::parse_bool(c[4])});
  }
  return rows;
}

inline void write_chart_csv(std::ostream& out, const std::vector<ChartSample>& rows) {
  using detail::format_double;
  out << kChartHeader << '\n';
  for (const auto& r : rows)
    out << format_double(r.tau) << ',' << format_double(r.X) << ',' << format_double(r.t) << ','
        << format_double(r.x) << '\n';
}

inline std::vector<ChartSample> read_chart_csv(std::istream& in) {
  detail::check_header(in, kChartHeader);
  std::vector<ChartSample> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = detail::split_csv_line(line);
    if (c.size() != 4) throw std::invalid_argument("csv: chart row needs 4 columns: " + line);
    rows.push_back({detail::parse_double(c[0], "csv"), detail::parse_double(c[1], "csv"),
                    detail::parse_double(c[2], "csv"), detail::parse_double(c[3], "csv")});
  }
  return rows;
}

/// Opens `path` for writing in binary mode ('\n' line endings everywhere).
inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("output: cannot write " + path);
  return out;
}

}  // namespace tempus
