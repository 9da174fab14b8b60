// UTF-8 aware text primitives shared by the pipeline: codepoint decoding,
// lowercasing and diacritic folding for Latin-1 supplement characters,
// and word splitting. All transforms are pure and locale-independent.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qmine::text {

inline constexpr uint32_t kReplacementChar = 0xFFFD;

// Decodes one codepoint starting at byte offset `i`, advancing `i` past it.
// Malformed sequences decode as U+FFFD and advance one byte.
uint32_t decode_next(std::string_view s, size_t& i);

void append_utf8(std::string& out, uint32_t cp);

std::vector<uint32_t> decode(std::string_view s);
std::string encode(const std::vector<uint32_t>& cps);

// Codepoint count (malformed bytes count as one each).
size_t length(std::string_view s);

bool is_ascii_digit(uint32_t cp);
bool is_letter(uint32_t cp);
bool is_word_char(uint32_t cp);  // letter or digit

uint32_t lower_cp(uint32_t cp);
// Lowercases and strips the diacritic, e.g. 'Á' -> 'a'. Identity otherwise.
uint32_t fold_cp(uint32_t cp);

std::string to_lower(std::string_view s);

// canonical matching form: lowercased, diacritics stripped
std::string fold(std::string_view s);

// Splits into maximal runs of word characters. `keep_internal_hyphen`
// keeps '-' when both neighbours are word characters ("covid-19").
std::vector<std::string> split_words(std::string_view s, bool keep_internal_hyphen = false);

// Collapses whitespace runs to single spaces and trims the ends.
std::string collapse_whitespace(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

// First `n` / last `n` codepoints as UTF-8 (whole string when shorter).
std::string prefix_cp(std::string_view s, size_t n);
std::string suffix_cp(std::string_view s, size_t n);

}  // namespace qmine::text
