#ifndef EGOSKILL_IO_CONFIG_HPP
#define EGOSKILL_IO_CONFIG_HPP

#include <map>
#include <string>

namespace egoskill {

/// Flat key=value settings. One assignment per line, '#' starts a comment,
/// blank lines are skipped, later assignments win. Typed getters fall back
/// to the supplied default when the key is absent and throw ParseError when
/// a present value does not parse as the requested type.
class Config {
 public:
  Config() = default;

  static Config fromFile(const std::string& path);
  static Config fromString(const std::string& text,
                           const std::string& path = "<config>");

  /// Parses a single "key=value" argument (as passed on a command line).
  void setFromArg(const std::string& arg);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string getString(const std::string& key,
                        const std::string& fallback) const;
  double getDouble(const std::string& key, double fallback) const;
  int getInt(const std::string& key, int fallback) const;
  bool getBool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace egoskill

#endif  // EGOSKILL_IO_CONFIG_HPP
