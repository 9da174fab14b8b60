#include "qmine/timeutil.hpp"

#include <cstdio>

namespace qmine::timeutil {

namespace {

bool read_digits(std::string_view s, size_t& i, int n, int& out) {
  if (i + n > s.size()) return false;
  int v = 0;
  for (int k = 0; k < n; ++k) {
    char c = s[i + k];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  i += n;
  out = v;
  return true;
}

bool expect(std::string_view s, size_t& i, char c) {
  if (i < s.size() && s[i] == c) {
    ++i;
    return true;
  }
  return false;
}

}  // namespace

// Howard Hinnant's civil-date algorithms.
int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  year = static_cast<int>(y + (month <= 2));
}

std::optional<int64_t> parse_iso8601(std::string_view s) {
  size_t i = 0;
  int year, month, day;
  if (!read_digits(s, i, 4, year)) return std::nullopt;
  if (!expect(s, i, '-')) return std::nullopt;
  if (!read_digits(s, i, 2, month)) return std::nullopt;
  if (!expect(s, i, '-')) return std::nullopt;
  if (!read_digits(s, i, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;

  int hour = 0, minute = 0, second = 0;
  if (i < s.size() && (s[i] == 'T' || s[i] == 't' || s[i] == ' ')) {
    ++i;
    if (!read_digits(s, i, 2, hour)) return std::nullopt;
    if (!expect(s, i, ':')) return std::nullopt;
    if (!read_digits(s, i, 2, minute)) return std::nullopt;
    if (i < s.size() && s[i] == ':') {
      ++i;
      if (!read_digits(s, i, 2, second)) return std::nullopt;
      if (i < s.size() && (s[i] == '.' || s[i] == ',')) {
        ++i;
        size_t frac_start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == frac_start) return std::nullopt;
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  }

  int64_t offset_sec = 0;
  if (i < s.size()) {
    char c = s[i];
    if (c == 'Z' || c == 'z') {
      ++i;
    } else if (c == '+' || c == '-') {
      ++i;
      int oh, om = 0;
      if (!read_digits(s, i, 2, oh)) return std::nullopt;
      if (i < s.size() && s[i] == ':') ++i;
      if (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        if (!read_digits(s, i, 2, om)) return std::nullopt;
      }
      offset_sec = (static_cast<int64_t>(oh) * 60 + om) * 60;
      if (c == '-') offset_sec = -offset_sec;
    } else {
      return std::nullopt;
    }
  }
  if (i != s.size()) return std::nullopt;

  int64_t days = days_from_civil(year, month, day);
  int64_t local = days * 86400 + hour * 3600 + minute * 60 + second;
  return local - offset_sec;
}

namespace {

void split_epoch(int64_t epoch, int& y, int& m, int& d, int& hh, int& mm, int& ss) {
  int64_t days = epoch / 86400;
  int64_t rem = epoch % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  civil_from_days(days, y, m, d);
  hh = static_cast<int>(rem / 3600);
  mm = static_cast<int>((rem % 3600) / 60);
  ss = static_cast<int>(rem % 60);
}

}  // namespace

std::string format_iso8601(int64_t epoch) {
  int y, m, d, hh, mm, ss;
  split_epoch(epoch, y, m, d, hh, mm, ss);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d, hh, mm, ss);
  return buf;
}

std::string format_date(int64_t epoch) {
  int y, m, d, hh, mm, ss;
  split_epoch(epoch, y, m, d, hh, mm, ss);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

std::string format_month(int64_t epoch) {
  int y, m, d, hh, mm, ss;
  split_epoch(epoch, y, m, d, hh, mm, ss);
  char buf[12];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", y, m);
  return buf;
}

}  // namespace qmine::timeutil
