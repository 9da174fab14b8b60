#include "qmine/preprocess.hpp"

#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qmine/text.hpp"

namespace qmine::preprocess {

using nlohmann::json;

namespace {

bool looks_like_url(std::string_view token) {
  std::string lowered = text::to_lower(token);
  return text::starts_with(lowered, "http://") || text::starts_with(lowered, "https://") ||
         text::starts_with(lowered, "www.");
}

bool looks_like_email(std::string_view token) {
  size_t at = token.find('@');
  if (at == std::string_view::npos || at == 0 || at + 1 >= token.size()) return false;
  size_t dot = token.find('.', at + 1);
  return dot != std::string_view::npos && dot + 1 < token.size();
}

bool drop_token(std::string_view token) {
  if (token.empty()) return true;
  if (looks_like_url(token)) return true;
  if (token[0] == '#' || token[0] == '@') return true;
  if (looks_like_email(token)) return true;
  if (token == "RT") return true;
  return false;
}

}  // namespace

std::string clean_text(std::string_view input) {
  std::string out;
  out.reserve(input.size());
  size_t i = 0;
  while (i < input.size()) {
    while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i]))) ++i;
    size_t start = i;
    while (i < input.size() && !std::isspace(static_cast<unsigned char>(input[i]))) ++i;
    if (i == start) break;
    std::string_view token = input.substr(start, i - start);
    if (drop_token(token)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(token);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view input) {
  const std::string lowered = text::to_lower(input);
  auto words = text::split_words(lowered, /*keep_internal_hyphen=*/true);
  std::vector<std::string> tokens;
  tokens.reserve(words.size());
  for (auto& w : words) {
    if (text::length(w) >= 2) tokens.push_back(std::move(w));
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const corpus::StopwordList& stopwords) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (auto& t : tokens) {
    if (!stopwords.contains(t)) kept.push_back(std::move(t));
  }
  return kept;
}

std::optional<Pos> pos_from_string(std::string_view s) {
  if (s == "NOUN") return Pos::kNoun;
  if (s == "ADJ") return Pos::kAdj;
  if (s == "VERB") return Pos::kVerb;
  if (s == "ADV") return Pos::kAdv;
  if (s == "OTHER") return Pos::kOther;
  return std::nullopt;
}

std::string_view pos_to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kAdj: return "ADJ";
    case Pos::kVerb: return "VERB";
    case Pos::kAdv: return "ADV";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

void Lexicon::add(std::string form, std::string lemma, Pos pos) {
  entries_[text::to_lower(form)] = Entry{text::to_lower(lemma), pos};
}

const Lexicon::Entry* Lexicon::lookup(std::string_view surface) const {
  auto it = entries_.find(text::to_lower(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon Lexicon::read(std::istream& in) {
  Lexicon lex;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string form, lemma, pos_str;
    if (!std::getline(ls, form, '\t') || !std::getline(ls, lemma, '\t') ||
        !std::getline(ls, pos_str, '\t')) {
      throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                               ": expected form<TAB>lemma<TAB>pos");
    }
    auto pos = pos_from_string(pos_str);
    if (!pos) {
      throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                               ": unknown POS tag " + pos_str);
    }
    lex.add(form, lemma, *pos);
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon: " + path);
  return read(in);
}

std::string PhraseModel::pair_key(std::string_view a, std::string_view b) {
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key.append(a);
  key.push_back(' ');
  key.append(b);
  return key;
}

int64_t PhraseModel::unigram(std::string_view term) const {
  auto it = unigram_counts.find(std::string(term));
  return it == unigram_counts.end() ? 0 : it->second;
}

int64_t PhraseModel::bigram(std::string_view a, std::string_view b) const {
  auto it = bigram_counts.find(pair_key(a, b));
  return it == bigram_counts.end() ? 0 : it->second;
}

double PhraseModel::score(std::string_view a, std::string_view b) const {
  const int64_t ca = unigram(a);
  const int64_t cb = unigram(b);
  const int64_t cab = bigram(a, b);
  assert(cab <= std::min(ca, cb));
  if (ca == 0 || cb == 0) return 0.0;
  return static_cast<double>(cab - min_count) * static_cast<double>(vocab_size) /
         (static_cast<double>(ca) * static_cast<double>(cb));
}

bool PhraseModel::promotable(std::string_view a, std::string_view b) const {
  return bigram(a, b) >= min_count && score(a, b) > threshold;
}

namespace {

void count_docs(const std::vector<std::vector<std::string>>& docs,
                std::unordered_map<std::string, int64_t>& unigrams,
                std::unordered_map<std::string, int64_t>& bigrams) {
  for (const auto& doc : docs) {
    for (size_t i = 0; i < doc.size(); ++i) {
      ++unigrams[doc[i]];
      if (i + 1 < doc.size()) ++bigrams[PhraseModel::pair_key(doc[i], doc[i + 1])];
    }
  }
}

std::vector<std::string> merge_once(const std::vector<std::string>& tokens,
                                    const PhraseModel& model) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  size_t i = 0;
  while (i < tokens.size()) {
    if (i + 1 < tokens.size() && model.promotable(tokens[i], tokens[i + 1])) {
      out.push_back(tokens[i] + "_" + tokens[i + 1]);
      i += 2;  // scanning resumes after the merged token
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

PhraseModel train_phrases(const std::vector<std::vector<std::string>>& docs,
                          int64_t min_count, double threshold) {
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  if (threshold <= 0.0) throw std::invalid_argument("threshold must be > 0");

  PhraseModel model;
  model.min_count = min_count;
  model.threshold = threshold;
  count_docs(docs, model.unigram_counts, model.bigram_counts);
  model.vocab_size = static_cast<int64_t>(model.unigram_counts.size());

  // Second counting pass over the once-merged corpus. Only keys that are
  // new (merged tokens and pairs touching them) are added, so the raw pair
  // statistics stay exact.
  std::vector<std::vector<std::string>> merged;
  merged.reserve(docs.size());
  bool any_merge = false;
  for (const auto& doc : docs) {
    auto m = merge_once(doc, model);
    any_merge = any_merge || m.size() != doc.size();
    merged.push_back(std::move(m));
  }
  if (any_merge) {
    std::unordered_map<std::string, int64_t> uni2, bi2;
    count_docs(merged, uni2, bi2);
    for (auto& [term, count] : uni2) model.unigram_counts.try_emplace(term, count);
    for (auto& [pair, count] : bi2) model.bigram_counts.try_emplace(pair, count);
    model.vocab_size = static_cast<int64_t>(model.unigram_counts.size());
  }
  return model;
}

std::vector<std::string> apply_phrases(std::vector<std::string> tokens,
                                       const PhraseModel& model, int passes) {
  if (passes < 1) throw std::invalid_argument("passes must be >= 1");
  for (int p = 0; p < passes; ++p) tokens = merge_once(tokens, model);
  return tokens;
}

bool PosFilter::allows(Pos pos) const {
  switch (pos) {
    case Pos::kNoun: return noun;
    case Pos::kAdj: return adj;
    case Pos::kVerb: return verb;
    case Pos::kAdv: return adv;
    case Pos::kOther: return other;
  }
  return false;
}

std::vector<std::string> lemmatize_filter(const std::vector<std::string>& tokens,
                                          const Lexicon& lexicon, const PosFilter& allowed) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (token.find('_') != std::string::npos) {
      out.push_back(token);  // phrase tokens bypass the lexicon
      continue;
    }
    if (const auto* entry = lexicon.lookup(token)) {
      if (allowed.allows(entry->pos)) out.push_back(entry->lemma);
    } else if (allowed.allows(Pos::kNoun)) {
      out.push_back(token);  // unknown tokens are assumed to be nouns
    }
  }
  return out;
}

void write_docs(std::ostream& out, const std::vector<ProcessedDoc>& docs) {
  for (const auto& doc : docs) {
    json j;
    j["doc_id"] = doc.doc_id;
    j["tokens"] = doc.tokens;
    out << j.dump() << '\n';
  }
}

ReadDocsResult read_docs(std::istream& in) {
  ReadDocsResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("doc_id") || !j.contains("tokens") ||
        !j["tokens"].is_array()) {
      result.errors.push_back({line_no, "invalid doc record"});
      continue;
    }
    ProcessedDoc doc;
    doc.doc_id = j["doc_id"].get<std::string>();
    for (const auto& t : j["tokens"]) doc.tokens.push_back(t.get<std::string>());
    result.docs.push_back(std::move(doc));
  }
  return result;
}

}  // namespace qmine::preprocess
