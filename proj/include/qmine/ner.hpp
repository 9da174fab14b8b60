// Four-category entity recognition (DIS, DRUG, ORG, PER) as BIO sequence
// labeling: averaged perceptron over sparse features, greedy decoding with
// the I-after-B constraint, and exact-span evaluation.

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qmine::ner {

inline constexpr std::array<std::string_view, 4> kLabels = {"DIS", "DRUG", "ORG", "PER"};

// 0 = O, then B-/I- pairs in kLabels order.
inline constexpr int kNumTags = 9;
int tag_id(std::string_view tag);  // -1 for unknown
std::string_view tag_name(int id);

struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

struct EntitySpan {
  int start = 0;  // inclusive
  int end = 0;    // exclusive
  std::string label;

  bool operator==(const EntitySpan&) const = default;
};

// token<TAB>tag lines, blank line between sentences. Throws on ragged
// lines or tags outside the alphabet, reporting the line number.
std::vector<TaggedSentence> parse_conll(std::istream& in);
void write_conll(std::ostream& out, const std::vector<TaggedSentence>& sentences);

// Maximal B/I runs; an I-X with no live X span opens one (lenient repair).
std::vector<EntitySpan> spans_from_bio(const std::vector<std::string>& tags);
std::vector<std::string> bio_from_spans(const std::vector<EntitySpan>& spans, int len);

struct Gazetteers {
  std::array<std::unordered_set<std::string>, 4> terms;  // folded, kLabels order

  static Gazetteers from_lists(const std::array<std::vector<std::string>, 4>& lists);
  bool contains(int label_idx, std::string_view token) const;
};

// Deterministic sparse feature strings for position i given the previous
// tag ("<BOS>" at the sentence start).
std::vector<std::string> featurize(const std::vector<std::string>& tokens, int i,
                                   std::string_view prev_tag, const Gazetteers& gaz);

class NerModel {
 public:
  Gazetteers gazetteers;
  int epochs = 0;
  uint64_t seed = 0;
  std::vector<int64_t> mistakes_per_epoch;  // training diagnostic, not serialized

  std::vector<std::string> predict(const std::vector<std::string>& tokens) const;

  void save(std::ostream& out) const;
  static NerModel load(std::istream& in);

  // averaged feature weights, one row of kNumTags per feature
  std::unordered_map<std::string, std::array<double, kNumTags>> weights;
};

// Averaged structured perceptron with a seeded shuffle per epoch.
NerModel train(const std::vector<TaggedSentence>& data, const Gazetteers& gaz,
               int epochs = 10, uint64_t seed = 0);

// Seeded shuffle, then prefix split with |train| = floor(ratio * n).
std::pair<std::vector<TaggedSentence>, std::vector<TaggedSentence>> split(
    std::vector<TaggedSentence> data, double train_ratio, uint64_t seed);

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t support = 0;  // gold spans
};

struct EvalReport {
  std::map<std::string, LabelMetrics> per_label;
  double macro_f1 = 0.0;
};

double f1_score(double precision, double recall);
double macro_f1(const std::vector<double>& per_label_f1);

// Exact-span, exact-label matching.
EvalReport evaluate_spans(const std::vector<std::vector<EntitySpan>>& gold,
                          const std::vector<std::vector<EntitySpan>>& predicted);
EvalReport evaluate(const NerModel& model, const std::vector<TaggedSentence>& gold);

// Token-level accuracy of the model on tagged data.
double tag_accuracy(const NerModel& model, const std::vector<TaggedSentence>& data);

// Case-preserving word split for tagging raw text (letters, digits,
// internal hyphens; punctuation dropped).
std::vector<std::string> tokenize_surface(std::string_view text);

}  // namespace qmine::ner
