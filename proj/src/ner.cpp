#include "qmine/ner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmine/io.hpp"
#include "qmine/rng.hpp"
#include "qmine/text.hpp"

namespace qmine::ner {

namespace {

const std::array<std::string, kNumTags> kTagNames = {
    "O",     "B-DIS", "I-DIS", "B-DRUG", "I-DRUG",
    "B-ORG", "I-ORG", "B-PER", "I-PER"};

// label index for tags 1.. ; -1 for O
int label_idx_of_tag(int tag) { return tag == 0 ? -1 : (tag - 1) / 2; }
bool is_begin_tag(int tag) { return tag > 0 && (tag - 1) % 2 == 0; }
bool is_inside_tag(int tag) { return tag > 0 && (tag - 1) % 2 == 1; }

}  // namespace

int tag_id(std::string_view tag) {
  for (int i = 0; i < kNumTags; ++i) {
    if (kTagNames[i] == tag) return i;
  }
  return -1;
}

std::string_view tag_name(int id) { return kTagNames.at(id); }

std::vector<TaggedSentence> parse_conll(std::istream& in) {
  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  std::string line;
  size_t line_no = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) {
      sentences.push_back(std::move(current));
      current = {};
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw std::runtime_error("conll line " + std::to_string(line_no) +
                               ": expected token<TAB>tag");
    }
    std::string token = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (tag_id(tag) < 0) {
      throw std::runtime_error("conll line " + std::to_string(line_no) + ": unknown tag " + tag);
    }
    current.tokens.push_back(std::move(token));
    current.tags.push_back(std::move(tag));
  }
  flush();
  return sentences;
}

void write_conll(std::ostream& out, const std::vector<TaggedSentence>& sentences) {
  for (size_t s = 0; s < sentences.size(); ++s) {
    if (s > 0) out << '\n';
    for (size_t i = 0; i < sentences[s].tokens.size(); ++i) {
      out << sentences[s].tokens[i] << '\t' << sentences[s].tags[i] << '\n';
    }
  }
}

std::vector<EntitySpan> spans_from_bio(const std::vector<std::string>& tags) {
  std::vector<EntitySpan> spans;
  int open_label = -1;
  int open_start = 0;
  auto close = [&](int end) {
    if (open_label >= 0) {
      spans.push_back({open_start, end, std::string(kLabels[open_label])});
      open_label = -1;
    }
  };
  for (size_t i = 0; i < tags.size(); ++i) {
    const int t = tag_id(tags[i]);
    if (t < 0) throw std::invalid_argument("unknown tag: " + tags[i]);
    const int label = label_idx_of_tag(t);
    if (t == 0) {
      close(static_cast<int>(i));
    } else if (is_begin_tag(t)) {
      close(static_cast<int>(i));
      open_label = label;
      open_start = static_cast<int>(i);
    } else {  // inside
      if (open_label != label) {
        close(static_cast<int>(i));  // orphan I-X repaired as a span start
        open_label = label;
        open_start = static_cast<int>(i);
      }
    }
  }
  close(static_cast<int>(tags.size()));
  return spans;
}

std::vector<std::string> bio_from_spans(const std::vector<EntitySpan>& spans, int len) {
  std::vector<std::string> tags(len, "O");
  for (const auto& span : spans) {
    if (span.start < 0 || span.end > len || span.start >= span.end) {
      throw std::invalid_argument("span out of range");
    }
    tags[span.start] = "B-" + span.label;
    for (int i = span.start + 1; i < span.end; ++i) tags[i] = "I-" + span.label;
  }
  return tags;
}

Gazetteers Gazetteers::from_lists(const std::array<std::vector<std::string>, 4>& lists) {
  Gazetteers gaz;
  for (size_t i = 0; i < lists.size(); ++i) {
    for (const auto& term : lists[i]) gaz.terms[i].insert(text::fold(term));
  }
  return gaz;
}

bool Gazetteers::contains(int label_idx, std::string_view token) const {
  return terms[label_idx].count(text::fold(token)) > 0;
}

namespace {

std::string word_shape(std::string_view token) {
  std::string shape;
  char prev = 0;
  int run = 0;
  auto emit = [&](char cls) {
    if (cls == prev) {
      if (++run == 2) shape.push_back('+');
      return;
    }
    prev = cls;
    run = 1;
    shape.push_back(cls);
  };
  size_t i = 0;
  while (i < token.size()) {
    const uint32_t cp = text::decode_next(token, i);
    char cls = '-';
    if (text::is_ascii_digit(cp)) {
      cls = 'd';
    } else if (text::is_letter(cp)) {
      cls = text::lower_cp(cp) != cp ? 'X' : 'x';
    }
    emit(cls);
  }
  return shape;
}

}  // namespace

std::vector<std::string> featurize(const std::vector<std::string>& tokens, int i,
                                   std::string_view prev_tag, const Gazetteers& gaz) {
  const int n = static_cast<int>(tokens.size());
  if (i < 0 || i >= n) throw std::out_of_range("featurize index");
  const std::string lower = text::to_lower(tokens[i]);

  std::vector<std::string> feats;
  feats.reserve(16);
  auto add = [&](std::string f) {
    if (std::find(feats.begin(), feats.end(), f) == feats.end()) feats.push_back(std::move(f));
  };
  auto neighbor = [&](int j, const char* name) {
    if (j < 0) return std::string(name) + "=<BOS>";
    if (j >= n) return std::string(name) + "=<EOS>";
    return std::string(name) + "=" + text::to_lower(tokens[j]);
  };

  add("w=" + lower);
  for (size_t len = 1; len <= 3; ++len) {
    add("p" + std::to_string(len) + "=" + text::prefix_cp(lower, len));
    add("s" + std::to_string(len) + "=" + text::suffix_cp(lower, len));
  }
  add("shape=" + word_shape(tokens[i]));
  add(neighbor(i - 1, "w-1"));
  add(neighbor(i - 2, "w-2"));
  add(neighbor(i + 1, "w+1"));
  add(neighbor(i + 2, "w+2"));
  add("prev=" + std::string(prev_tag));
  add("prev+w=" + std::string(prev_tag) + "|" + lower);
  for (size_t g = 0; g < kLabels.size(); ++g) {
    if (gaz.contains(static_cast<int>(g), tokens[i])) {
      add("gaz:" + std::string(kLabels[g]));
    }
  }
  if (i == 0) add("first");
  return feats;
}

namespace {

// greedy decode over a weight table; I-X is masked unless the previous tag
// belongs to the same label
template <typename WeightLookup>
std::vector<int> decode_ids(const std::vector<std::string>& tokens, const Gazetteers& gaz,
                            WeightLookup&& weight_of) {
  std::vector<int> out;
  out.reserve(tokens.size());
  int prev = -1;  // sentence start
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    const auto feats =
        featurize(tokens, i, prev < 0 ? std::string_view("<BOS>") : tag_name(prev), gaz);
    std::array<double, kNumTags> scores{};
    for (const auto& f : feats) weight_of(f, scores);
    int best = -1;
    for (int t = 0; t < kNumTags; ++t) {
      if (is_inside_tag(t)) {
        const int lbl = label_idx_of_tag(t);
        const bool legal = prev > 0 && label_idx_of_tag(prev) == lbl;
        if (!legal) continue;
      }
      if (best < 0 || scores[t] > scores[best]) best = t;
    }
    out.push_back(best);
    prev = best;
  }
  return out;
}

}  // namespace

std::vector<std::string> NerModel::predict(const std::vector<std::string>& tokens) const {
  auto ids = decode_ids(tokens, gazetteers,
                        [&](const std::string& f, std::array<double, kNumTags>& scores) {
                          auto it = weights.find(f);
                          if (it == weights.end()) return;
                          for (int t = 0; t < kNumTags; ++t) scores[t] += it->second[t];
                        });
  std::vector<std::string> tags;
  tags.reserve(ids.size());
  for (int t : ids) tags.emplace_back(tag_name(t));
  return tags;
}

namespace {

struct TrainCell {
  double weight = 0.0;
  double accum = 0.0;   // step-weighted sum of past values
  int64_t last_step = 0;
};

using TrainTable = std::unordered_map<std::string, std::array<TrainCell, kNumTags>>;

void bump(TrainTable& table, const std::string& feature, int tag, double delta,
          int64_t step) {
  auto& cell = table[feature][tag];
  cell.accum += cell.weight * static_cast<double>(step - 1 - cell.last_step);
  cell.last_step = step - 1;
  cell.weight += delta;
}

}  // namespace

NerModel train(const std::vector<TaggedSentence>& data, const Gazetteers& gaz, int epochs,
               uint64_t seed) {
  if (data.empty()) throw std::invalid_argument("training data is empty");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  for (const auto& s : data) {
    if (s.tokens.size() != s.tags.size())
      throw std::invalid_argument("tokens/tags length mismatch");
    for (const auto& t : s.tags) {
      if (tag_id(t) < 0) throw std::invalid_argument("unknown tag: " + t);
    }
  }

  TrainTable table;
  int64_t steps = 0;  // one per visited token
  int64_t mistakes = 0;
  std::vector<int64_t> mistakes_per_epoch;
  Rng rng(seed);
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    const int64_t mistakes_before = mistakes;
    rng.shuffle(order);
    for (size_t idx : order) {
      const auto& sent = data[idx];
      int prev = -1;
      for (int i = 0; i < static_cast<int>(sent.tokens.size()); ++i) {
        ++steps;
        const auto feats = featurize(
            sent.tokens, i, prev < 0 ? std::string_view("<BOS>") : tag_name(prev), gaz);
        std::array<double, kNumTags> scores{};
        for (const auto& f : feats) {
          auto it = table.find(f);
          if (it == table.end()) continue;
          for (int t = 0; t < kNumTags; ++t) scores[t] += it->second[t].weight;
        }
        int best = -1;
        for (int t = 0; t < kNumTags; ++t) {
          if (is_inside_tag(t)) {
            const int lbl = label_idx_of_tag(t);
            const bool legal = prev > 0 && label_idx_of_tag(prev) == lbl;
            if (!legal) continue;
          }
          if (best < 0 || scores[t] > scores[best]) best = t;
        }
        const int gold = tag_id(sent.tags[i]);
        if (best != gold) {
          ++mistakes;
          for (const auto& f : feats) {
            bump(table, f, gold, +1.0, steps);
            bump(table, f, best, -1.0, steps);
          }
        }
        prev = best;  // decoder history follows the prediction
      }
    }
    mistakes_per_epoch.push_back(mistakes - mistakes_before);
  }

  NerModel model;
  model.gazetteers = gaz;
  model.epochs = epochs;
  model.seed = seed;
  model.mistakes_per_epoch = std::move(mistakes_per_epoch);
  if (mistakes == 0 || steps == 0) return model;  // all weights stayed zero
  // Collins-style averaging over every token step of the run; once the
  // model stops making mistakes the converged weights dominate the mean.
  for (auto& [feature, cells] : table) {
    std::array<double, kNumTags> averaged{};
    bool any = false;
    for (int t = 0; t < kNumTags; ++t) {
      auto& cell = cells[t];
      cell.accum += cell.weight * static_cast<double>(steps - cell.last_step);
      averaged[t] = cell.accum / static_cast<double>(steps);
      any = any || averaged[t] != 0.0;
    }
    if (any) model.weights.emplace(feature, averaged);
  }
  return model;
}

std::pair<std::vector<TaggedSentence>, std::vector<TaggedSentence>> split(
    std::vector<TaggedSentence> data, double train_ratio, uint64_t seed) {
  if (train_ratio <= 0.0 || train_ratio >= 1.0)
    throw std::invalid_argument("train_ratio must be in (0, 1)");
  Rng rng(seed);
  rng.shuffle(data);
  const size_t n_train =
      static_cast<size_t>(std::floor(train_ratio * static_cast<double>(data.size())));
  std::vector<TaggedSentence> train_part(data.begin(), data.begin() + n_train);
  std::vector<TaggedSentence> test_part(data.begin() + n_train, data.end());
  return {std::move(train_part), std::move(test_part)};
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom;
}

double macro_f1(const std::vector<double>& per_label_f1) {
  if (per_label_f1.empty()) return 0.0;
  double sum = 0.0;
  for (double f : per_label_f1) sum += f;
  return sum / static_cast<double>(per_label_f1.size());
}

EvalReport evaluate_spans(const std::vector<std::vector<EntitySpan>>& gold,
                          const std::vector<std::vector<EntitySpan>>& predicted) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("gold/predicted sentence count mismatch");

  std::map<std::string, int64_t> n_gold, n_pred, n_correct;
  for (const auto& label : kLabels) {
    n_gold[std::string(label)] = 0;
    n_pred[std::string(label)] = 0;
    n_correct[std::string(label)] = 0;
  }
  for (size_t s = 0; s < gold.size(); ++s) {
    for (const auto& span : gold[s]) ++n_gold[span.label];
    for (const auto& span : predicted[s]) {
      ++n_pred[span.label];
      if (std::find(gold[s].begin(), gold[s].end(), span) != gold[s].end()) {
        ++n_correct[span.label];
      }
    }
  }

  EvalReport report;
  std::vector<double> f1s;
  for (const auto& label_sv : kLabels) {
    const std::string label(label_sv);
    LabelMetrics m;
    m.support = n_gold[label];
    const int64_t correct = n_correct[label];
    m.precision = n_pred[label] == 0 ? 0.0
                                     : static_cast<double>(correct) /
                                           static_cast<double>(n_pred[label]);
    m.recall = m.support == 0
                   ? 0.0
                   : static_cast<double>(correct) / static_cast<double>(m.support);
    m.f1 = f1_score(m.precision, m.recall);
    report.per_label[label] = m;
    if (m.support > 0 || n_pred[label] > 0) f1s.push_back(m.f1);
  }
  report.macro_f1 = macro_f1(f1s);
  return report;
}

EvalReport evaluate(const NerModel& model, const std::vector<TaggedSentence>& gold) {
  if (gold.empty()) throw std::invalid_argument("gold data is empty");
  std::vector<std::vector<EntitySpan>> gold_spans, pred_spans;
  gold_spans.reserve(gold.size());
  pred_spans.reserve(gold.size());
  for (const auto& sent : gold) {
    gold_spans.push_back(spans_from_bio(sent.tags));
    pred_spans.push_back(spans_from_bio(model.predict(sent.tokens)));
  }
  return evaluate_spans(gold_spans, pred_spans);
}

double tag_accuracy(const NerModel& model, const std::vector<TaggedSentence>& data) {
  int64_t total = 0, correct = 0;
  for (const auto& sent : data) {
    const auto predicted = model.predict(sent.tokens);
    for (size_t i = 0; i < sent.tags.size(); ++i) {
      ++total;
      if (predicted[i] == sent.tags[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<std::string> tokenize_surface(std::string_view text_in) {
  return text::split_words(text_in, /*keep_internal_hyphen=*/true);
}

void NerModel::save(std::ostream& out) const {
  out << "qmine-ner\t1\n";
  out << "epochs\t" << epochs << '\n';
  out << "seed\t" << seed << '\n';
  for (size_t g = 0; g < kLabels.size(); ++g) {
    for (const auto& term : std::set<std::string>(gazetteers.terms[g].begin(),
                                                  gazetteers.terms[g].end())) {
      out << "gaz\t" << kLabels[g] << '\t' << term << '\n';
    }
  }
  std::vector<const std::string*> feature_order;
  feature_order.reserve(weights.size());
  for (const auto& [feature, row] : weights) feature_order.push_back(&feature);
  std::sort(feature_order.begin(), feature_order.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const std::string* feature : feature_order) {
    const auto& row = weights.at(*feature);
    for (int t = 0; t < kNumTags; ++t) {
      if (row[t] != 0.0) {
        out << "w\t" << *feature << '\t' << tag_name(t) << '\t'
            << io::format_double(row[t]) << '\n';
      }
    }
  }
}

NerModel NerModel::load(std::istream& in) {
  NerModel model;
  std::string line;
  size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("empty model file");
  ++line_no;
  if (line != "qmine-ner\t1") throw std::runtime_error("not a qmine-ner v1 model file");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    std::getline(ls, kind, '\t');
    if (kind == "epochs") {
      ls >> model.epochs;
    } else if (kind == "seed") {
      ls >> model.seed;
    } else if (kind == "gaz") {
      std::string label, term;
      if (!std::getline(ls, label, '\t') || !std::getline(ls, term, '\t')) {
        throw std::runtime_error("model line " + std::to_string(line_no) + ": bad gaz entry");
      }
      auto it = std::find(kLabels.begin(), kLabels.end(), label);
      if (it == kLabels.end()) {
        throw std::runtime_error("model line " + std::to_string(line_no) + ": bad label");
      }
      model.gazetteers.terms[it - kLabels.begin()].insert(term);
    } else if (kind == "w") {
      std::string feature, tag, value;
      if (!std::getline(ls, feature, '\t') || !std::getline(ls, tag, '\t') ||
          !std::getline(ls, value, '\t')) {
        throw std::runtime_error("model line " + std::to_string(line_no) + ": bad weight");
      }
      const int t = tag_id(tag);
      if (t < 0) throw std::runtime_error("model line " + std::to_string(line_no) + ": bad tag");
      double parsed = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::runtime_error("model line " + std::to_string(line_no) + ": bad weight value");
      }
      model.weights[feature][t] = parsed;
    } else {
      throw std::runtime_error("model line " + std::to_string(line_no) + ": unknown record " + kind);
    }
  }
  return model;
}

}  // namespace qmine::ner
