#include "qmine/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "qmine/preprocess.hpp"
#include "qmine/text.hpp"
#include "qmine/timeutil.hpp"
#include "qmine/wordlist.hpp"

namespace qmine::corpus {

using nlohmann::json;

KeywordSet KeywordSet::from_terms(const std::vector<std::string>& terms) {
  KeywordSet ks;
  for (const auto& raw : terms) {
    std::string folded = text::fold(raw);
    auto words = text::split_words(folded, /*keep_internal_hyphen=*/false);
    if (words.empty()) throw std::invalid_argument("empty keyword entry");
    if (ks.contains(folded)) throw std::invalid_argument("duplicate keyword after folding: " + folded);
    ks.terms_.push_back(std::move(folded));
    ks.words_.push_back(std::move(words));
  }
  if (ks.terms_.empty()) throw std::invalid_argument("keyword set is empty");
  return ks;
}

KeywordSet KeywordSet::load(const std::string& path) {
  return from_terms(load_wordlist(path));
}

KeywordSet KeywordSet::default_set() {
  return from_terms({"corona", "coronavírus", "COVID", "COVID19", "COVID-19",
                     "distanciamento social", "isolamento", "lockdown",
                     "quarentena", "cloroquina", "hidroxicloroquina",
                     "ivermectina", "tamiflu", "azitromicina", "pandemia",
                     "comorbidade"});
}

bool KeywordSet::contains(std::string_view folded_term) const {
  return std::find(terms_.begin(), terms_.end(), folded_term) != terms_.end();
}

StopwordList StopwordList::from_words(const std::vector<std::string>& words) {
  StopwordList sl;
  for (const auto& w : words) sl.words_.insert(text::to_lower(w));
  return sl;
}

StopwordList StopwordList::load(const std::string& path) {
  return from_words(load_wordlist(path));
}

ParseResult parse_posts(std::istream& in) {
  ParseResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      result.errors.push_back({line_no, "invalid JSON"});
      continue;
    }
    Post post;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
      result.errors.push_back({line_no, "missing or empty field: id"});
      continue;
    }
    if (!j.contains("timestamp") || !j["timestamp"].is_string()) {
      result.errors.push_back({line_no, "missing field: timestamp"});
      continue;
    }
    if (!j.contains("text") || !j["text"].is_string()) {
      result.errors.push_back({line_no, "missing field: text"});
      continue;
    }
    auto ts = timeutil::parse_iso8601(j["timestamp"].get<std::string>());
    if (!ts) {
      result.errors.push_back({line_no, "unparseable timestamp: " + j["timestamp"].get<std::string>()});
      continue;
    }
    post.id = j["id"].get<std::string>();
    post.timestamp = *ts;
    post.text = j["text"].get<std::string>();
    if (j.contains("keywords") && j["keywords"].is_array()) {
      for (const auto& k : j["keywords"]) {
        if (k.is_string()) post.keywords.push_back(k.get<std::string>());
      }
    }
    if (j.contains("lang_score") && j["lang_score"].is_number()) {
      post.lang_score = j["lang_score"].get<double>();
    }
    result.posts.push_back(std::move(post));
  }
  return result;
}

void write_post(std::ostream& out, const Post& post) {
  json j;
  j["id"] = post.id;
  j["timestamp"] = timeutil::format_iso8601(post.timestamp);
  j["text"] = post.text;
  j["keywords"] = post.keywords;
  j["lang_score"] = post.lang_score;
  out << j.dump() << '\n';
}

void write_posts(std::ostream& out, const std::vector<Post>& posts) {
  for (const auto& p : posts) write_post(out, p);
}

std::vector<std::string> match_keywords(std::string_view text_in, const KeywordSet& ks) {
  const std::string folded = text::fold(text_in);
  const auto words = text::split_words(folded, /*keep_internal_hyphen=*/false);

  std::vector<std::string> matched;
  for (size_t t = 0; t < ks.size(); ++t) {
    const auto& kw = ks.term_words()[t];
    bool hit = false;
    for (size_t i = 0; !hit && i + kw.size() <= words.size(); ++i) {
      bool ok = true;
      for (size_t j = 0; ok && j < kw.size(); ++j) {
        // exact words for the phrase body, prefix match on the last word
        if (j + 1 < kw.size()) {
          ok = words[i + j] == kw[j];
        } else {
          ok = text::starts_with(words[i + j], kw[j]);
        }
      }
      hit = ok;
    }
    if (hit) matched.push_back(ks.terms()[t]);
  }
  return matched;
}

void reconcile_keywords(std::vector<Post>& posts, const KeywordSet& ks) {
  for (auto& post : posts) {
    if (post.keywords.empty()) {
      post.keywords = match_keywords(post.text, ks);
      continue;
    }
    std::vector<std::string> kept;
    for (const auto& k : post.keywords) {
      std::string folded = text::fold(k);
      if (ks.contains(folded) &&
          std::find(kept.begin(), kept.end(), folded) == kept.end()) {
        kept.push_back(std::move(folded));
      }
    }
    post.keywords = std::move(kept);
  }
}

std::vector<Post> dedupe_by_id(std::vector<Post> posts) {
  std::unordered_set<std::string> seen;
  std::vector<Post> kept;
  kept.reserve(posts.size());
  for (auto& post : posts) {
    if (seen.insert(post.id).second) kept.push_back(std::move(post));
  }
  return kept;
}

namespace {

// Coverage over the cleaned text: hyperlinks, mentions, hashtags and RT
// markers would dilute the score of short posts. Returns the word count
// through the out-parameter.
double coverage(std::string_view text_in, const StopwordList& stopwords, size_t& n_words) {
  const std::string lowered = text::to_lower(preprocess::clean_text(text_in));
  const auto words = text::split_words(lowered, /*keep_internal_hyphen=*/false);
  n_words = words.size();
  if (words.empty()) return 0.0;
  size_t hits = 0;
  for (const auto& w : words) {
    if (stopwords.contains(w)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(words.size());
}

}  // namespace

double language_score(std::string_view text_in, const StopwordList& stopwords) {
  size_t n_words = 0;
  return coverage(text_in, stopwords, n_words);
}

std::vector<Post> filter_language(std::vector<Post> posts, const StopwordList& stopwords,
                                  double threshold) {
  std::vector<Post> kept;
  kept.reserve(posts.size());
  for (auto& post : posts) {
    size_t n_words = 0;
    post.lang_score = coverage(post.text, stopwords, n_words);
    if (n_words > 0 && post.lang_score >= threshold) kept.push_back(std::move(post));
  }
  return kept;
}

std::vector<PeriodBucket> bucket_by_period(const std::vector<Post>& posts, Granularity g) {
  std::map<std::string, std::vector<std::string>> buckets;
  for (const auto& post : posts) {
    std::string key = g == Granularity::kDay ? timeutil::format_date(post.timestamp)
                                             : timeutil::format_month(post.timestamp);
    buckets[key].push_back(post.id);
  }
  std::vector<PeriodBucket> out;
  out.reserve(buckets.size());
  for (auto& [period, ids] : buckets) out.push_back({period, std::move(ids)});
  return out;
}

}  // namespace qmine::corpus
