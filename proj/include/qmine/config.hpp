// Run configuration: plain UTF-8 `key = value` lines under [section]
// headers. Flags override config values; [paths] entries other than
// out_dir must exist when the file is loaded.

#pragma once

#include <map>
#include <optional>
#include <string>

namespace qmine::cli {

class RunConfig {
 public:
  RunConfig() = default;
  static RunConfig load(const std::string& path);

  std::optional<std::string> get(const std::string& dotted_key) const;
  std::optional<double> get_double(const std::string& dotted_key) const;
  std::optional<int64_t> get_int(const std::string& dotted_key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;  // "section.key" -> value
};

}  // namespace qmine::cli
