// tempus: batch front end for the twin-clock simulations.
//
//   tempus twin-sweep     --config configs/fig2.ini --out fig2.csv
//   tempus inertial-sweep --config configs/fig3.ini --out fig3.csv
//   tempus chart          --config configs/chart_sigma01.ini --out chart.csv
//   tempus classical      --aT 2
//   tempus validate
//
// Exit status: 0 success, 1 bad input or I/O failure, 2 unconverged rows
// under --strict or a failed validation check.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "tempus/geometry.hpp"
#include "tempus/parallel.hpp"
#include "tempus/sweep.hpp"
#include "tempus/validation.hpp"

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::size_t> workers;
  bool strict = false;
  std::optional<double> rel_tol;
  std::optional<double> cutoff_multiple;
};

tempus::SweepConfig load(const Globals& g) {
  tempus::SweepConfig cfg;
  if (!g.config.empty()) cfg = tempus::load_config(g.config);
  if (!g.out.empty()) cfg.output_path = g.out;
  cfg.workers = g.workers ? *g.workers : tempus::workers_from_env(cfg.workers);
  if (g.rel_tol) cfg.quadrature.rel_tol = *g.rel_tol;
  if (g.cutoff_multiple) cfg.quadrature.omega_cutoff_multiple = *g.cutoff_multiple;
  return cfg;
}

// Output goes to a file, or stdout for "" and "-". Opened before any
// computation so an unwritable path fails fast.
class Sink {
 public:
  explicit Sink(std::string path) : path_(std::move(path)) {
    if (!to_stdout()) file_ = tempus::open_output(path_);
  }
  std::ostream& stream() { return to_stdout() ? std::cout : file_; }
  void close() {
    if (to_stdout()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw std::runtime_error("output: failed writing " + path_);
    std::cerr << "wrote " << path_ << '\n';
  }

 private:
  bool to_stdout() const { return path_.empty() || path_ == "-"; }
  std::string path_;
  std::ofstream file_;
};

template <class Rows>
int finish(const Globals& g, const Rows& rows) {
  const auto bad = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.converged; });
  if (bad > 0) std::cerr << bad << " of " << rows.size() << " rows did not converge\n";
  return (g.strict && bad > 0) ? 2 : 0;
}

int twin_sweep(const Globals& g) {
  const auto cfg = load(g);
  tempus::validate_config(cfg, tempus::SweepKind::twin);
  Sink sink(cfg.output_path);
  const auto rows = tempus::run_twin_sweep(cfg);
  tempus::write_twin_csv(sink.stream(), rows);
  sink.close();
  return finish(g, rows);
}

int inertial_sweep(const Globals& g) {
  const auto cfg = load(g);
  tempus::validate_config(cfg, tempus::SweepKind::inertial);
  Sink sink(cfg.output_path);
  const auto rows = tempus::run_inertial_sweep(cfg);
  tempus::write_inertial_csv(sink.stream(), rows);
  sink.close();
  return finish(g, rows);
}

int chart(const Globals& g) {
  const auto cfg = load(g);
  tempus::validate_config(cfg, tempus::SweepKind::chart);
  for (const auto& w : tempus::chart_warnings(cfg.scenario.scenario())) std::cerr << "warning: " << w << '\n';
  Sink sink(cfg.output_path);
  tempus::write_chart_csv(sink.stream(), tempus::run_chart_export(cfg.scenario));
  sink.close();
  return 0;
}

int classical(double aT, double T) {
  if (!(aT >= 0.0)) throw std::invalid_argument("--aT must be >= 0");
  if (!(T > 0.0)) throw std::invalid_argument("--T must be > 0");
  const double a = aT / T;
  std::printf("aT              %.15g\n", aT);
  std::printf("T_bob           %.15g\n", T);
  std::printf("T_alice         %.15g\n", tempus::elapsed_inertial_time(a, T));
  std::printf("classical_ratio %.15g\n", tempus::classical_ratio(aT));
  std::printf("v_max           %.15g\n", tempus::max_relative_velocity(aT));
  return 0;
}

int validate(const Globals& g, const std::string& inject) {
  tempus::ValidationOptions opt;
  opt.workers = g.workers ? *g.workers : tempus::workers_from_env(1);
  if (inject == "middle-sign") {
    opt.frame = tempus::mutations::unrepaired_middle_segment;
  } else if (inject == "printed-limits") {
    opt.limits = tempus::TermLimits::as_printed();
  } else if (!inject.empty()) {
    throw std::invalid_argument("--inject must be middle-sign or printed-limits");
  }
  const auto results = tempus::run_validation(opt);
  nlohmann::ordered_json report;
  bool all = true;
  double seconds = 0.0;
  report["checks"] = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    seconds += r.seconds;
    report["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  report["passed"] = all;
  report["failures"] = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  report["seconds"] = seconds;
  if (!inject.empty()) report["injected"] = inject;
  std::cout << report.dump(2) << '\n';
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic quantum clocks: twin sweeps, inertial deviation, Fermi charts"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "INI config with [scenario] [sweep] [quadrature] [output] sections");
  app.add_option("--out", g.out, "output CSV path ('-' for stdout); overrides output.output_path");
  app.add_option("--workers", g.workers, "worker threads, 0 = one per core (fallback: TEMPUS_WORKERS)");
  app.add_flag("--strict", g.strict, "exit 2 if any row did not converge");
  app.add_option("--rel-tol", g.rel_tol, "relative tolerance of the outermost quadrature level")
      ->check(CLI::PositiveNumber);
  app.add_option("--cutoff-multiple", g.cutoff_multiple, "omega cutoff K, integrate w up to K/sigma")
      ->check(CLI::Range(4.0, 1e3));

  auto* twin = app.add_subcommand("twin-sweep", "P_A, P_B and their ratio over the sweep grid");
  auto* inertial = app.add_subcommand("inertial-sweep", "deviation alpha of an inertial clock from the ideal rate");
  auto* chart_cmd = app.add_subcommand("chart", "Fermi-chart samples of Bob's clock");
  auto* classical_cmd = app.add_subcommand("classical", "closed-form twin quantities for a point clock");
  double aT = 2.0;
  double T = 1.0;
  classical_cmd->add_option("--aT", aT, "acceleration times Bob's proper time")->required();
  classical_cmd->add_option("--T", T, "Bob's proper time")->capture_default_str();
  auto* validate_cmd = app.add_subcommand("validate", "run the invariant checks, JSON summary on stdout");
  std::string inject;
  validate_cmd->add_option("--inject", inject, "deliberate fault: middle-sign | printed-limits");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*twin) return twin_sweep(g);
    if (*inertial) return inertial_sweep(g);
    if (*chart_cmd) return chart(g);
    if (*classical_cmd) return classical(aT, T);
    if (*validate_cmd) return validate(g, inject);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
