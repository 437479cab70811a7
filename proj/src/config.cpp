#include "tamperlab/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace tamperlab {

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

static std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

ConfigFile load_config(const std::string& path) {
  static constexpr std::array<const char*, 8> kKnown = {"n",    "p",       "gamma",   "variant",
                                                        "seed", "samples", "threads", "out"};
  std::ifstream in(path);
  if (!in) throw ConfigParseError(path, 0, "cannot open file");
  ConfigFile cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigParseError(path, lineno, "expected key=value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(path, lineno, "empty key");
    if (value.empty()) throw ConfigParseError(path, lineno, "empty value for key '" + key + "'");
    if (std::find_if(kKnown.begin(), kKnown.end(),
                     [&](const char* k) { return key == k; }) == kKnown.end())
      throw ConfigParseError(path, lineno, "unknown key '" + key + "'");
    if (cfg.has(key)) throw ConfigParseError(path, lineno, "duplicate key '" + key + "'");
    cfg.values[key] = value;
  }
  if (cfg.has("p") && cfg.has("gamma"))
    throw ConfigParseError(path, 0, "keys 'p' and 'gamma' are mutually exclusive");
  return cfg;
}

}  // namespace tamperlab
