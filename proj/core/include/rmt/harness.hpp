#pragma once

// Experiment runner: configuration, execution on a worker pool, and CSV /
// JSON serialization of results.
//
// Output schema "rmt-result/1". Every row carries
//   kind, label, x1, x2, value, reference, abs_error, std_error, threshold, pass
// where threshold is the absolute bound the row was judged against
// (tolerance, or tolerance * std_error for statistical rows). Rows without a
// threshold are informational. Rows of kind "check" are experiment-level
// summaries. x2, std_error and threshold may be empty. The config echo omits
// `workers`, so output bytes depend only on the experiment definition.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmt/ensembles.hpp"

namespace rmt::harness {

enum class Experiment {
  semicircle,
  sine_exact,
  sine_mc,
  disintegration,
  fourier_identity,
  pr_asymptotics,
  identities,
};

enum class OutputFormat { csv, json };

/// How a declared tolerance is applied to a row.
enum class ToleranceKind { absolute, sigma };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);
std::string_view to_string(OutputFormat f);
OutputFormat format_from_string(std::string_view name);
std::string_view to_string(ToleranceKind k);

inline constexpr std::string_view kSchemaVersion = "rmt-result/1";

struct ExperimentConfig {
  Experiment experiment = Experiment::identities;
  std::vector<int> N{200};
  int n = 1;
  double u = 0.0;
  double window = 3.0;
  int bins = 24;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Scale parameter; unset means 1/N.
  std::optional<double> s;
  /// Evaluation points for disintegration / fourier-identity.
  std::vector<double> points;
  /// Fourier variables for fourier-identity.
  std::vector<double> p{0.0};
  /// Unset ensemble means both, where the experiment supports it.
  std::optional<Ensemble> ensemble;
  /// Unset means the defaults-table value for the experiment.
  std::optional<double> tolerance;
  std::string output_path;
  OutputFormat format = OutputFormat::json;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults-table entry for an experiment.
struct Defaults {
  std::vector<int> N;
  std::uint64_t samples;
  std::optional<double> s;
  std::vector<double> points;
  int bins;
  double tolerance;
  ToleranceKind kind;
};

Defaults defaults_for(Experiment e, int n = 1);

/// Config with every defaults-table value for `e` filled in.
ExperimentConfig default_config(Experiment e);

/// Applies RMT_N, RMT_SAMPLES, RMT_SEED, RMT_U, RMT_WINDOW, RMT_BINS,
/// RMT_WORKERS, RMT_FORMAT and RMT_ENSEMBLE through `lookup` (getenv by default).
void apply_environment(ExperimentConfig& config,
                       const std::function<const char*(const char*)>& lookup = nullptr);

/// Number of Monte-Carlo batches used for batch-means standard errors.
inline constexpr int kBatches = 100;

struct ResultRow {
  std::string kind = "point";
  std::string label;
  double x1 = 0.0;
  std::optional<double> x2;
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  std::optional<double> std_error;
  std::optional<double> threshold;
  bool pass = true;

  bool operator==(const ResultRow&) const = default;
};

struct ResultRecord {
  ExperimentConfig config;
  double tolerance = 0.0;
  ToleranceKind tolerance_kind = ToleranceKind::absolute;
  std::vector<ResultRow> rows;
  double max_error = 0.0;
  bool passed = true;
  /// Not serialized: output bytes depend only on the config.
  double wall_seconds = 0.0;

  /// Rows of kind "check".
  std::vector<ResultRow> checks() const;
  const ResultRow* find(std::string_view label) const;
};

/// Runs the experiment. Writes config.output_path when it is non-empty.
ResultRecord run(const ExperimentConfig& config);

void emit(const ResultRecord& record, OutputFormat format, std::ostream& out);
/// Throws std::runtime_error on I/O failure.
void emit(const ResultRecord& record, OutputFormat format, const std::string& path);

std::string to_json(const ResultRecord& record);
std::string to_csv(const ResultRecord& record);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(std::string_view text);
/// Parses a record written by to_json (wall_seconds is not restored and
/// config.workers is reset to 1).
ResultRecord record_from_json(std::string_view text);

/// 17 significant digits, "." separator, independent of the C locale.
std::string format_double(double value);
/// RFC-4180 field quoting.
std::string csv_escape(std::string_view field);

/// Runs task(i) for i in [0, count) on `workers` threads; each index runs once.
/// After all threads join, the exception from the lowest failing index is rethrown.
void parallel_for(int workers, int count, const std::function<void(int)>& task);

}  // namespace rmt::harness
