#include "qmine/wordlist.hpp"

#include <fstream>
#include <stdexcept>

namespace qmine {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> read_wordlist(std::istream& in) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string entry = trim(line);
    if (!entry.empty()) entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<std::string> load_wordlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  return read_wordlist(in);
}

}  // namespace qmine
