#include "qmine/text.hpp"

#include <cctype>

namespace qmine::text {

uint32_t decode_next(std::string_view s, size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto cb = [&](size_t k) {
    return static_cast<uint32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    uint32_t cp = (static_cast<uint32_t>(b0 & 0x1F) << 6) | cb(1);
    i += 2;
    return cp >= 0x80 ? cp : kReplacementChar;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    uint32_t cp = (static_cast<uint32_t>(b0 & 0x0F) << 12) | (cb(1) << 6) | cb(2);
    i += 3;
    return cp >= 0x800 ? cp : kReplacementChar;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    uint32_t cp = (static_cast<uint32_t>(b0 & 0x07) << 18) | (cb(1) << 12) |
                  (cb(2) << 6) | cb(3);
    i += 4;
    return (cp >= 0x10000 && cp <= 0x10FFFF) ? cp : kReplacementChar;
  }
  ++i;
  return kReplacementChar;
}

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<uint32_t> decode(std::string_view s) {
  std::vector<uint32_t> cps;
  cps.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) cps.push_back(decode_next(s, i));
  return cps;
}

std::string encode(const std::vector<uint32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (uint32_t cp : cps) append_utf8(out, cp);
  return out;
}

size_t length(std::string_view s) {
  size_t i = 0, n = 0;
  while (i < s.size()) {
    decode_next(s, i);
    ++n;
  }
  return n;
}

bool is_ascii_digit(uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter(uint32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  // Latin-1 supplement letters (excluding the multiply/divide signs)
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x100 && cp <= 0x17F) return true;  // Latin Extended-A
  return false;
}

bool is_word_char(uint32_t cp) { return is_letter(cp) || is_ascii_digit(cp); }

uint32_t lower_cp(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A pairs upper/lower
  if (cp >= 0x100 && cp <= 0x177 && (cp % 2) == 0) return cp + 1;
  return cp;
}

namespace {

uint32_t strip_diacritic(uint32_t cp) {
  // Latin-1 supplement lowercase block.
  if (cp >= 0xE0 && cp <= 0xE5) return 'a';
  if (cp == 0xE7) return 'c';
  if (cp >= 0xE8 && cp <= 0xEB) return 'e';
  if (cp >= 0xEC && cp <= 0xEF) return 'i';
  if (cp == 0xF1) return 'n';
  if (cp >= 0xF2 && cp <= 0xF6) return 'o';
  if (cp >= 0xF9 && cp <= 0xFC) return 'u';
  if (cp == 0xFD || cp == 0xFF) return 'y';
  return cp;
}

}  // namespace

uint32_t fold_cp(uint32_t cp) { return strip_diacritic(lower_cp(cp)); }

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) append_utf8(out, lower_cp(decode_next(s, i)));
  return out;
}

std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) append_utf8(out, fold_cp(decode_next(s, i)));
  return out;
}

std::vector<std::string> split_words(std::string_view s, bool keep_internal_hyphen) {
  std::vector<std::string> words;
  std::string cur;
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp = decode_next(s, i);
    if (is_word_char(cp)) {
      append_utf8(cur, cp);
      continue;
    }
    if (keep_internal_hyphen && cp == '-' && !cur.empty() && i < s.size()) {
      size_t peek = i;
      uint32_t next = decode_next(s, peek);
      if (is_word_char(next)) {
        cur.push_back('-');
        continue;
      }
    }
    if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string prefix_cp(std::string_view s, size_t n) {
  size_t i = 0, taken = 0;
  while (i < s.size() && taken < n) {
    decode_next(s, i);
    ++taken;
  }
  return std::string(s.substr(0, i));
}

std::string suffix_cp(std::string_view s, size_t n) {
  std::vector<size_t> starts;
  size_t i = 0;
  while (i < s.size()) {
    starts.push_back(i);
    decode_next(s, i);
  }
  if (starts.size() <= n) return std::string(s);
  return std::string(s.substr(starts[starts.size() - n]));
}

}  // namespace qmine::text
