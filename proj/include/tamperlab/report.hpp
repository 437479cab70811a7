#pragma once

// Run reports and CSV series. Reports are self-contained: they carry the
// full parameter set, the master seed and per-metric seeds/sample counts, so
// a run can be reproduced from the report alone. Exact values are rendered
// as "num/den" strings so nothing is lost to floating point; doubles are
// rendered with 17 significant digits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tamperlab/numeric.hpp"

namespace tamperlab {

// %.17g, the shortest form that round-trips a double.
std::string format_double(double v);

struct MetricEntry {
  std::string name;
  std::optional<double> value;
  std::optional<std::string> exact_value;  // "num/den"
  std::optional<double> se;
  std::optional<uint64_t> samples;
  std::optional<uint64_t> seed;

  static MetricEntry exact(std::string name, const Rat& r);
  static MetricEntry stochastic(std::string name, double v, double se, uint64_t samples,
                                uint64_t seed);
  static MetricEntry plain(std::string name, double v);
};

struct CheckEntry {
  std::string name;
  bool ok = false;
  std::string witness;  // empty on success
};

struct RunReport {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<MetricEntry> metrics;
  std::vector<CheckEntry> checks;
  double wall_time_ms = 0.0;

  bool all_ok() const;
  void add_check(std::string name, bool ok, std::string witness = "");
  nlohmann::json to_json() const;
  // Writes <dir>/<name>.json; returns the path.
  std::string write(const std::string& dir, const std::string& name) const;
};

// Fixed-column CSV with deterministic float formatting; the body never
// contains timing or other run-dependent noise, so identical inputs yield
// byte-identical bodies.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  const std::string& body() const { return body_; }
  void write(const std::string& path) const;

 private:
  size_t ncols_;
  std::string body_;
};

}  // namespace tamperlab
