#include "tamperlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tamperlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MetricEntry MetricEntry::exact(std::string name, const Rat& r) {
  MetricEntry e;
  e.name = std::move(name);
  e.exact_value = rat_str(r);
  e.value = to_double(r);
  return e;
}

MetricEntry MetricEntry::stochastic(std::string name, double v, double se, uint64_t samples,
                                    uint64_t seed) {
  MetricEntry e;
  e.name = std::move(name);
  e.value = v;
  e.se = se;
  e.samples = samples;
  e.seed = seed;
  return e;
}

MetricEntry MetricEntry::plain(std::string name, double v) {
  MetricEntry e;
  e.name = std::move(name);
  e.value = v;
  return e;
}

bool RunReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

void RunReport::add_check(std::string name, bool ok, std::string witness) {
  checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["tool"] = "tamperlab";
  j["version"] = "0.1.0";
  j["command"] = command;
  j["params"] = params;
  j["metrics"] = nlohmann::json::array();
  for (const auto& m : metrics) {
    nlohmann::json e;
    e["name"] = m.name;
    e["exact"] = m.exact_value.has_value();
    if (m.exact_value) e["exact_value"] = *m.exact_value;
    if (m.value) e["value"] = *m.value;
    if (m.se) e["se"] = *m.se;
    if (m.samples) e["samples"] = *m.samples;
    if (m.seed) e["seed"] = *m.seed;
    j["metrics"].push_back(e);
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    if (!c.ok) e["witness"] = c.witness;
    j["checks"].push_back(e);
  }
  j["all_checks_ok"] = all_ok();
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

std::string RunReport::write(const std::string& dir, const std::string& name) const {
  std::string path = dir.empty() ? name + ".json" : dir + "/" + name + ".json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << to_json().dump(2) << "\n";
  return path;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size()) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write csv: " + path);
  out << body_;
}

}  // namespace tamperlab
