// rmt: command-line runner for the experiments in rmt::harness.

#include "rmt/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

constexpr const char* kExperimentHelp =
    "Experiment: semicircle | sine-exact | sine-mc | disintegration | "
    "fourier-identity | pr-asymptotics | identities";

constexpr const char* kEnvironmentHelp =
    "Environment overrides (applied before flags): RMT_N, RMT_SAMPLES, RMT_SEED, RMT_U, "
    "RMT_WINDOW, RMT_BINS, RMT_WORKERS, RMT_FORMAT, RMT_ENSEMBLE.\n"
    "Exit status: 0 when every declared tolerance is met, 1 when a check fails, 2 on errors.";

}  // namespace

int main(int argc, char** argv) {
  using namespace rmt::harness;

  CLI::App app{"Random-matrix correlation experiments: GUE and fixed Hilbert-Schmidt norm ensembles"};
  app.footer(kEnvironmentHelp);

  std::string experiment_name;
  app.add_option("experiment", experiment_name, kExperimentHelp)->required();

  // Flags are parsed into a scratch config first; the experiment's defaults and
  // environment are applied afterwards, then explicitly given flags win.
  ExperimentConfig flags;
  std::string format;
  std::string ensemble;
  auto* o_n = app.add_option("--n", flags.N, "Matrix size, or a comma-separated list")->delimiter(',');
  auto* o_order = app.add_option("--order", flags.n, "Correlation order n (1 or 2; sine-exact)");
  auto* o_samples = app.add_option("--samples", flags.samples, "Monte-Carlo matrix samples");
  auto* o_seed = app.add_option("--seed", flags.seed, "64-bit RNG seed");
  auto* o_u = app.add_option("--u", flags.u, "Bulk point u in (-2, 2)");
  auto* o_window = app.add_option("--window", flags.window, "Window half-width A (rescaled units)");
  auto* o_bins = app.add_option("--bins", flags.bins, "Histogram bins (also t-grid steps for sine-exact)");
  auto* o_workers = app.add_option("--workers", flags.workers, "Worker threads");
  auto* o_s = app.add_option("--s", flags.s, "Scale parameter s (default 1/N, 1/2 for disintegration)");
  auto* o_points = app.add_option("--points", flags.points, "Evaluation points x (comma-separated)")
                       ->delimiter(',');
  auto* o_p = app.add_option("--p", flags.p, "Fourier variables p (fourier-identity)")->delimiter(',');
  auto* o_tol = app.add_option("--tolerance", flags.tolerance,
                               "Override the declared tolerance (absolute, or multiples of std-error)");
  auto* o_out = app.add_option("--out", flags.output_path, "Output file (default: stdout)");
  auto* o_format = app.add_option("--format", format, "Output format: csv | json")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_ensemble = app.add_option("--ensemble", ensemble, "Restrict to one ensemble: gue | hse")
                         ->check(CLI::IsMember({"gue", "hse"}));

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config = default_config(experiment_from_string(experiment_name));
    apply_environment(config);
    if (*o_n) config.N = flags.N;
    if (*o_order) config.n = flags.n;
    if (*o_samples) config.samples = flags.samples;
    if (*o_seed) config.seed = flags.seed;
    if (*o_u) config.u = flags.u;
    if (*o_window) config.window = flags.window;
    if (*o_bins) config.bins = flags.bins;
    if (*o_workers) config.workers = flags.workers;
    if (*o_s) config.s = flags.s;
    if (*o_points) config.points = flags.points;
    if (*o_p) config.p = flags.p;
    if (*o_tol) config.tolerance = flags.tolerance;
    if (*o_out) config.output_path = flags.output_path;
    if (*o_format) config.format = format_from_string(format);
    if (*o_ensemble) config.ensemble = rmt::ensemble_from_string(ensemble);

    const ResultRecord record = run(config);
    if (config.output_path.empty()) {
      emit(record, config.format, std::cout);
    }
    for (const ResultRow& check : record.checks()) {
      std::cerr << (check.pass ? "  ok    " : "  FAIL  ") << check.label << " = "
                << format_double(check.abs_error);
      if (check.threshold) {
        std::cerr << " (threshold " << format_double(*check.threshold) << ")";
      }
      std::cerr << '\n';
    }
    std::cerr << to_string(config.experiment) << ": " << (record.passed ? "PASS" : "FAIL")
              << "  max_error=" << format_double(record.max_error) << "  tolerance="
              << format_double(record.tolerance) << " (" << to_string(record.tolerance_kind) << ")"
              << "  wall=" << record.wall_seconds << "s\n";
    return record.passed ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "rmt: error: " << ex.what() << '\n';
    return 2;
  }
}
