// Post ingestion and filtering: JSONL parsing, keyword matching,
// stopword-coverage language scoring and day/month bucketing.

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace qmine::corpus {

struct Post {
  std::string id;
  int64_t timestamp = 0;  // UTC epoch seconds
  std::string text;
  std::vector<std::string> keywords;
  double lang_score = 0.0;
};

struct LineError {
  size_t line_no;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<Post> posts;
  std::vector<LineError> errors;
};

// Ordered keyword list, folded to lowercase ASCII. Multi-word entries match
// as contiguous phrases; the final word of every entry matches by prefix at
// a word boundary, so "covid" covers "covid19" and "covid-19".
class KeywordSet {
 public:
  static KeywordSet from_terms(const std::vector<std::string>& terms);
  static KeywordSet load(const std::string& path);
  // The sixteen default terms (corona ... comorbidade).
  static KeywordSet default_set();

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::vector<std::string>>& term_words() const { return words_; }
  bool contains(std::string_view folded_term) const;
  size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::vector<std::vector<std::string>> words_;
};

class StopwordList {
 public:
  static StopwordList from_words(const std::vector<std::string>& words);
  static StopwordList load(const std::string& path);

  bool contains(std::string_view lowercased) const {
    return words_.count(std::string(lowercased)) > 0;
  }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// One post per line; malformed lines are reported, never fatal.
// Input order is preserved.
ParseResult parse_posts(std::istream& in);

void write_post(std::ostream& out, const Post& post);
void write_posts(std::ostream& out, const std::vector<Post>& posts);

// Case- and diacritic-insensitive matching; output follows KeywordSet
// order, deduplicated.
std::vector<std::string> match_keywords(std::string_view text, const KeywordSet& ks);

// Fills in keywords for posts that carried none; posts that carried a
// keywords field keep only entries present in the configured set.
void reconcile_keywords(std::vector<Post>& posts, const KeywordSet& ks);

// Drops posts whose id was already seen, keeping the first occurrence.
std::vector<Post> dedupe_by_id(std::vector<Post> posts);

// Fraction of words that are stopwords, computed over the cleaned text
// (hyperlinks, mentions, hashtags and RT markers stripped).
double language_score(std::string_view text, const StopwordList& stopwords);

// Keeps posts with language_score >= threshold; sets lang_score on every
// surviving post. Zero-token posts score 0 and are dropped.
std::vector<Post> filter_language(std::vector<Post> posts, const StopwordList& stopwords,
                                  double threshold = 0.12);

enum class Granularity { kDay, kMonth };

struct PeriodBucket {
  std::string period;  // "2020-03-17" or "2020-03"
  std::vector<std::string> post_ids;
};

// UTC bucketing; buckets sorted ascending; sizes sum to |posts|.
std::vector<PeriodBucket> bucket_by_period(const std::vector<Post>& posts, Granularity g);

}  // namespace qmine::corpus
