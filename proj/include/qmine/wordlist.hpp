#pragma once

#include <istream>
#include <string>
#include <vector>

namespace qmine {

// Reads a plain UTF-8 word list: one entry per line, `#` starts a comment,
// blank lines skipped, entries trimmed. Order preserved.
std::vector<std::string> read_wordlist(std::istream& in);
std::vector<std::string> load_wordlist(const std::string& path);  // throws on I/O error

}  // namespace qmine
