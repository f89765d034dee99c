#include "egoskill/io/config.hpp"

#include <cerrno>
#include <climits>
#include <cstdlib>
#include <sstream>

#include "egoskill/errors.hpp"
#include "egoskill/io/records.hpp"

namespace egoskill {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::fromFile(const std::string& path) {
  return fromString(readFileToString(path), path);
}

Config Config::fromString(const std::string& text, const std::string& path) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, line_number, "expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ParseError(path, line_number, "empty key");
    }
    cfg.set(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

void Config::setFromArg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("<arg>", 1, "expected key=value, got '" + arg + "'");
  }
  set(trim(arg.substr(0, eq)), trim(arg.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::string Config::getString(const std::string& key,
                              const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::getDouble(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end != it->second.c_str() + it->second.size() || it->second.empty() ||
      errno == ERANGE) {
    throw ParseError("<config>", 1,
                     "value of '" + key + "' is not a number: '" + it->second + "'");
  }
  return v;
}

int Config::getInt(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(it->second.c_str(), &end, 10);
  if (end != it->second.c_str() + it->second.size() || it->second.empty() ||
      errno == ERANGE || v < INT_MIN || v > INT_MAX) {
    throw ParseError("<config>", 1,
                     "value of '" + key + "' is not an integer: '" + it->second + "'");
  }
  return static_cast<int>(v);
}

bool Config::getBool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("<config>", 1,
                   "value of '" + key + "' is not a boolean: '" + v + "'");
}

}  // namespace egoskill
