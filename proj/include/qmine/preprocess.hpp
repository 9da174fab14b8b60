// Question-to-token normalization: cleaning, tokenization, stopword
// removal, collocation promotion and lemma/POS filtering.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qmine/corpus.hpp"

namespace qmine::preprocess {

struct ProcessedDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
};

// Removes URLs, e-mail addresses, #hashtags, @mentions and the literal
// token RT, then collapses whitespace. Idempotent.
std::string clean_text(std::string_view text);

// Lowercases and splits on non-letter/non-digit characters, keeping
// internal hyphens; tokens shorter than 2 codepoints are dropped.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const corpus::StopwordList& stopwords);

enum class Pos { kNoun, kAdj, kVerb, kAdv, kOther };

std::optional<Pos> pos_from_string(std::string_view s);
std::string_view pos_to_string(Pos pos);

// Exact-match surface-form lookup table (lowercase, diacritics intact),
// loaded from a TSV of form<TAB>lemma<TAB>pos lines.
class Lexicon {
 public:
  struct Entry {
    std::string lemma;
    Pos pos;
  };

  static Lexicon load(const std::string& path);
  static Lexicon read(std::istream& in);
  void add(std::string form, std::string lemma, Pos pos);

  const Entry* lookup(std::string_view surface) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Entry> entries_;
};

// Collocation statistics. score(a,b) = (count(ab) - min_count) * vocab_size
// / (count(a) * count(b)); a pair is promoted when count(ab) >= min_count
// and the score exceeds the threshold.
struct PhraseModel {
  std::unordered_map<std::string, int64_t> unigram_counts;
  std::unordered_map<std::string, int64_t> bigram_counts;  // key: "a b"
  int64_t vocab_size = 0;
  int64_t min_count = 5;
  double threshold = 10.0;

  static std::string pair_key(std::string_view a, std::string_view b);
  int64_t unigram(std::string_view term) const;
  int64_t bigram(std::string_view a, std::string_view b) const;
  double score(std::string_view a, std::string_view b) const;
  bool promotable(std::string_view a, std::string_view b) const;
};

// Counts adjacent pairs over `docs`; a second counting pass over the
// once-merged corpus adds statistics for the merged tokens so that
// trigrams can form on a later apply pass.
PhraseModel train_phrases(const std::vector<std::vector<std::string>>& docs,
                          int64_t min_count = 5, double threshold = 10.0);

// Greedy left-to-right merge of promotable pairs; each pass rescans its
// own output, so two passes produce trigrams "a_b_c".
std::vector<std::string> apply_phrases(std::vector<std::string> tokens,
                                       const PhraseModel& model, int passes = 2);

struct PosFilter {
  bool noun = true, adj = true, verb = true, adv = true, other = false;
  bool allows(Pos pos) const;
};

// Replaces tokens by their lemma and drops tokens whose POS is filtered
// out. Unknown tokens are kept unchanged and treated as nouns; phrase
// tokens (containing '_') are always kept unchanged.
std::vector<std::string> lemmatize_filter(const std::vector<std::string>& tokens,
                                          const Lexicon& lexicon,
                                          const PosFilter& allowed = {});

void write_docs(std::ostream& out, const std::vector<ProcessedDoc>& docs);

struct ReadDocsResult {
  std::vector<ProcessedDoc> docs;
  std::vector<corpus::LineError> errors;
};

ReadDocsResult read_docs(std::istream& in);

}  // namespace qmine::preprocess
