#include "rmt/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace rmt::harness {

using json = nlohmann::ordered_json;

namespace {

struct ExperimentName {
  Experiment experiment;
  std::string_view name;
};

constexpr ExperimentName kExperimentNames[] = {
    {Experiment::semicircle, "semicircle"},
    {Experiment::sine_exact, "sine-exact"},
    {Experiment::sine_mc, "sine-mc"},
    {Experiment::disintegration, "disintegration"},
    {Experiment::fourier_identity, "fourier-identity"},
    {Experiment::pr_asymptotics, "pr-asymptotics"},
    {Experiment::identities, "identities"},
};

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<int> parse_int_list(std::string_view text, const char* what) {
  std::vector<int> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    out.push_back(parse_number<int>(text.substr(0, comma), what));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) {
    return std::nullopt;
  }
  return j.get<double>();
}

/// `workers` is left out of record echoes so output bytes do not depend on it.
json config_json(const ExperimentConfig& c, bool with_workers) {
  json j;
  j["experiment"] = std::string(to_string(c.experiment));
  j["N"] = c.N;
  j["n"] = c.n;
  j["u"] = c.u;
  j["window"] = c.window;
  j["bins"] = c.bins;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  if (with_workers) {
    j["workers"] = c.workers;
  }
  j["s"] = optional_number(c.s);
  j["points"] = c.points;
  j["p"] = c.p;
  j["ensemble"] = c.ensemble ? json(std::string(rmt::to_string(*c.ensemble))) : json(nullptr);
  j["tolerance"] = optional_number(c.tolerance);
  j["output_path"] = c.output_path;
  j["format"] = std::string(to_string(c.format));
  return j;
}

ExperimentConfig config_from(const json& j) {
  ExperimentConfig c;
  c.experiment = experiment_from_string(j.at("experiment").get<std::string>());
  c.N = j.at("N").get<std::vector<int>>();
  c.n = j.at("n").get<int>();
  c.u = j.at("u").get<double>();
  c.window = j.at("window").get<double>();
  c.bins = j.at("bins").get<int>();
  c.samples = j.at("samples").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.value("workers", 1);
  c.s = number_or_null(j.at("s"));
  c.points = j.at("points").get<std::vector<double>>();
  c.p = j.at("p").get<std::vector<double>>();
  if (!j.at("ensemble").is_null()) {
    c.ensemble = ensemble_from_string(j.at("ensemble").get<std::string>());
  }
  c.tolerance = number_or_null(j.at("tolerance"));
  c.output_path = j.at("output_path").get<std::string>();
  c.format = format_from_string(j.at("format").get<std::string>());
  return c;
}

json row_json(const ResultRow& r) {
  json j;
  j["kind"] = r.kind;
  j["label"] = r.label;
  j["x1"] = r.x1;
  j["x2"] = optional_number(r.x2);
  j["value"] = r.value;
  j["reference"] = r.reference;
  j["abs_error"] = r.abs_error;
  j["std_error"] = optional_number(r.std_error);
  j["threshold"] = optional_number(r.threshold);
  j["pass"] = r.pass;
  return j;
}

ResultRow row_from(const json& j) {
  ResultRow r;
  r.kind = j.at("kind").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.x1 = j.at("x1").get<double>();
  r.x2 = number_or_null(j.at("x2"));
  r.value = j.at("value").get<double>();
  r.reference = j.at("reference").get<double>();
  r.abs_error = j.at("abs_error").get<double>();
  r.std_error = number_or_null(j.at("std_error"));
  r.threshold = number_or_null(j.at("threshold"));
  r.pass = j.at("pass").get<bool>();
  return r;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& entry : kExperimentNames) {
    if (entry.experiment == e) {
      return entry.name;
    }
  }
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (const auto& entry : kExperimentNames) {
    if (entry.name == name) {
      return entry.experiment;
    }
  }
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat format_from_string(std::string_view name) {
  if (name == "csv") {
    return OutputFormat::csv;
  }
  if (name == "json") {
    return OutputFormat::json;
  }
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view to_string(ToleranceKind k) {
  return k == ToleranceKind::absolute ? "absolute" : "sigma";
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (N.empty()) {
    fail("N must list at least one size");
  }
  for (int size : N) {
    if (size < 1 || size > 4096) {
      fail("N entries must lie in [1, 4096]");
    }
  }
  if (n < 1 || n > 2) {
    fail("n must be 1 or 2");
  }
  if (!std::isfinite(u) || !(std::abs(u) < 2.0)) {
    fail("u must lie in the bulk (-2, 2)");
  }
  if (!std::isfinite(window) || !(window > 0.0)) {
    fail("window must be > 0");
  }
  if (bins < 1 || bins > 100000) {
    fail("bins must lie in [1, 100000]");
  }
  if (samples < 1) {
    fail("samples must be >= 1");
  }
  if (workers < 1 || workers > 256) {
    fail("workers must lie in [1, 256]");
  }
  if (s && (!std::isfinite(*s) || !(*s > 0.0))) {
    fail("s must be finite and > 0");
  }
  if (tolerance && (!std::isfinite(*tolerance) || !(*tolerance > 0.0))) {
    fail("tolerance must be finite and > 0");
  }
  for (double x : points) {
    if (!std::isfinite(x)) {
      fail("points must be finite");
    }
  }
  for (double x : p) {
    if (!std::isfinite(x)) {
      fail("p must be finite");
    }
  }
}

ExperimentConfig default_config(Experiment e) {
  const Defaults d = defaults_for(e);
  ExperimentConfig c;
  c.experiment = e;
  c.N = d.N;
  c.samples = d.samples;
  c.s = d.s;
  c.points = d.points;
  c.bins = d.bins;
  return c;
}

void apply_environment(ExperimentConfig& config,
                       const std::function<const char*(const char*)>& lookup) {
  auto get = [&](const char* name) -> std::optional<std::string_view> {
    const char* v = lookup ? lookup(name) : std::getenv(name);
    if (v == nullptr || *v == '\0') {
      return std::nullopt;
    }
    return std::string_view(v);
  };
  if (auto v = get("RMT_N")) {
    config.N = parse_int_list(*v, "RMT_N");
  }
  if (auto v = get("RMT_SAMPLES")) {
    config.samples = parse_number<std::uint64_t>(*v, "RMT_SAMPLES");
  }
  if (auto v = get("RMT_SEED")) {
    config.seed = parse_number<std::uint64_t>(*v, "RMT_SEED");
  }
  if (auto v = get("RMT_U")) {
    config.u = parse_number<double>(*v, "RMT_U");
  }
  if (auto v = get("RMT_WINDOW")) {
    config.window = parse_number<double>(*v, "RMT_WINDOW");
  }
  if (auto v = get("RMT_BINS")) {
    config.bins = parse_number<int>(*v, "RMT_BINS");
  }
  if (auto v = get("RMT_WORKERS")) {
    config.workers = parse_number<int>(*v, "RMT_WORKERS");
  }
  if (auto v = get("RMT_FORMAT")) {
    config.format = format_from_string(*v);
  }
  if (auto v = get("RMT_ENSEMBLE")) {
    config.ensemble = ensemble_from_string(*v);
  }
}

std::vector<ResultRow> ResultRecord::checks() const {
  std::vector<ResultRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [](const ResultRow& r) { return r.kind == "check"; });
  return out;
}

const ResultRow* ResultRecord::find(std::string_view label) const {
  for (const ResultRow& r : rows) {
    if (r.label == label) {
      return &r;
    }
  }
  return nullptr;
}

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config, true).dump(2); }

ExperimentConfig config_from_json(std::string_view text) {
  return config_from(json::parse(text.begin(), text.end()));
}

std::string to_json(const ResultRecord& record) {
  json j;
  j["schema"] = std::string(kSchemaVersion);
  j["config"] = config_json(record.config, false);
  j["tolerance"] = {{"value", record.tolerance},
                    {"kind", std::string(to_string(record.tolerance_kind))}};
  j["summary"] = {{"rows", record.rows.size()},
                  {"max_error", record.max_error},
                  {"passed", record.passed}};
  json rows = json::array();
  for (const ResultRow& r : record.rows) {
    rows.push_back(row_json(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

ResultRecord record_from_json(std::string_view text) {
  const json j = json::parse(text.begin(), text.end());
  if (j.at("schema").get<std::string>() != kSchemaVersion) {
    throw std::invalid_argument("record_from_json: unsupported schema");
  }
  ResultRecord r;
  r.config = config_from(j.at("config"));
  r.tolerance = j.at("tolerance").at("value").get<double>();
  r.tolerance_kind = j.at("tolerance").at("kind").get<std::string>() == "sigma"
                         ? ToleranceKind::sigma
                         : ToleranceKind::absolute;
  r.max_error = j.at("summary").at("max_error").get<double>();
  r.passed = j.at("summary").at("passed").get<bool>();
  for (const json& row : j.at("rows")) {
    r.rows.push_back(row_from(row));
  }
  return r;
}

std::string to_csv(const ResultRecord& record) {
  std::string out = "kind,label,x1,x2,value,reference,abs_error,std_error,threshold,pass\r\n";
  for (const ResultRow& r : record.rows) {
    out += csv_escape(r.kind) + ',' + csv_escape(r.label) + ',' + format_double(r.x1) + ',' +
           optional_field(r.x2) + ',' + format_double(r.value) + ',' +
           format_double(r.reference) + ',' + format_double(r.abs_error) + ',' +
           optional_field(r.std_error) + ',' + optional_field(r.threshold) + ',' +
           (r.pass ? "true" : "false") + "\r\n";
  }
  return out;
}

void emit(const ResultRecord& record, OutputFormat format, std::ostream& out) {
  out << (format == OutputFormat::csv ? to_csv(record) : to_json(record));
  if (!out) {
    throw std::runtime_error("emit: write failed");
  }
}

void emit(const ResultRecord& record, OutputFormat format, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  }
  emit(record, format, file);
  file.close();
  if (!file) {
    throw std::runtime_error("emit: error closing '" + path + "'");
  }
}

void parallel_for(int workers, int count, const std::function<void(int)>& task) {
  if (count <= 0) {
    return;
  }
  workers = std::clamp(workers, 1, count);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  int error_index = count;

  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Keep the lowest failing index so the reported error is reproducible.
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace rmt::harness
