#pragma once

// Flat key=value run-configuration files. Lines are `key = value`, blank, or
// `#` comments. Unknown keys are rejected with the offending line number;
// CLI flags override file values.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace tamperlab {

class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ConfigFile {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
};

// Known keys: n, p, gamma, variant, seed, samples, threads, out.
// `p` and `gamma` are mutually exclusive.
ConfigFile load_config(const std::string& path);

}  // namespace tamperlab
