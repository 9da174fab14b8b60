#include "qmine/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qmine::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  RunConfig config;
  std::string section;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string entry = trim(line);
    if (entry.empty()) continue;
    if (entry.front() == '[' && entry.back() == ']') {
      section = trim(entry.substr(1, entry.size() - 2));
      continue;
    }
    const size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    }
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
    }
    config.values_[section.empty() ? key : section + "." + key] = value;
  }

  for (const auto& [key, value] : config.values_) {
    if (key.rfind("paths.", 0) == 0 && key != "paths.out_dir" &&
        !std::filesystem::exists(value)) {
      throw std::runtime_error("config: " + key + " points to a missing file: " + value);
    }
  }
  return config;
}

std::optional<std::string> RunConfig::get(const std::string& dotted_key) const {
  auto it = values_.find(dotted_key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> RunConfig::get_double(const std::string& dotted_key) const {
  auto v = get(dotted_key);
  if (!v) return std::nullopt;
  double parsed = 0.0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw std::runtime_error("config: " + dotted_key + " is not a number: " + *v);
  }
  return parsed;
}

std::optional<int64_t> RunConfig::get_int(const std::string& dotted_key) const {
  auto v = get(dotted_key);
  if (!v) return std::nullopt;
  int64_t parsed = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw std::runtime_error("config: " + dotted_key + " is not an integer: " + *v);
  }
  return parsed;
}

}  // namespace qmine::cli
