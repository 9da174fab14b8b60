#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "qmine/preprocess.hpp"
#include "qmine/rng.hpp"

using namespace qmine;
using preprocess::Lexicon;
using preprocess::PhraseModel;
using preprocess::Pos;

namespace {

// Independent pair-counting oracle for phrase scores: single counting pass
// over the raw docs, score computed straight from the formula.
struct PairOracle {
  std::map<std::string, int64_t> uni;
  std::map<std::pair<std::string, std::string>, int64_t> bi;
  int64_t min_count;
  double threshold;

  PairOracle(const std::vector<std::vector<std::string>>& docs, int64_t mc, double th)
      : min_count(mc), threshold(th) {
    for (const auto& doc : docs) {
      for (size_t i = 0; i < doc.size(); ++i) {
        ++uni[doc[i]];
        if (i + 1 < doc.size()) ++bi[{doc[i], doc[i + 1]}];
      }
    }
  }
  double score(const std::string& a, const std::string& b, int64_t vocab_size) const {
    auto ca = uni.at(a), cb = uni.at(b);
    auto it = bi.find({a, b});
    const int64_t cab = it == bi.end() ? 0 : it->second;
    return static_cast<double>(cab - min_count) * static_cast<double>(vocab_size) /
           (static_cast<double>(ca) * static_cast<double>(cb));
  }
};

}  // namespace

TEST_CASE("clean_text removes urls, hashtags, mentions, emails and RT") {
  CHECK(preprocess::clean_text("RT quarentena http://t.co/x acabou?") == "quarentena acabou?");
  CHECK(preprocess::clean_text("#covid é sério?") == "é sério?");
  CHECK(preprocess::clean_text("sem ruído") == "sem ruído");
  CHECK(preprocess::clean_text("@fulano veja www.site.com e bob@mail.com agora") ==
        "veja e agora");
  CHECK(preprocess::clean_text("  muitos    espaços  ") == "muitos espaços");
  CHECK(preprocess::clean_text("") == "");
}

TEST_CASE("clean_text is idempotent") {
  const std::vector<std::string> cases = {
      "RT @x #tag http://a?q=1 fim?", "texto normal.", "", "   ", "a  b\tc\nd"};
  for (const auto& c : cases) {
    const auto once = preprocess::clean_text(c);
    CHECK(preprocess::clean_text(once) == once);
  }
}

TEST_CASE("tokenize lowercases, splits and keeps internal hyphens") {
  CHECK(preprocess::tokenize("Cloroquina funciona?") ==
        std::vector<std::string>{"cloroquina", "funciona"});
  CHECK(preprocess::tokenize("covid-19") == std::vector<std::string>{"covid-19"});
  CHECK(preprocess::tokenize("?").empty());
  CHECK(preprocess::tokenize("é o fim") == std::vector<std::string>{"fim"});  // len >= 2
  CHECK(preprocess::tokenize("não, José!") == std::vector<std::string>{"não", "josé"});
}

TEST_CASE("remove_stopwords filters in order") {
  auto sw = corpus::StopwordList::from_words({"que", "vai"});
  CHECK(preprocess::remove_stopwords({"que", "dia", "vai", "acabar"}, sw) ==
        std::vector<std::string>{"dia", "acabar"});
  CHECK(preprocess::remove_stopwords({}, sw).empty());
  CHECK(preprocess::remove_stopwords({"que", "vai", "que"}, sw).empty());
}

TEST_CASE("remove_stopwords is idempotent") {
  auto sw = corpus::StopwordList::from_words({"de", "a"});
  const std::vector<std::string> tokens = {"de", "covid", "a", "cura", "de"};
  auto once = preprocess::remove_stopwords(tokens, sw);
  CHECK(preprocess::remove_stopwords(once, sw) == once);
}

TEST_CASE("phrase scores match the hand-computed examples") {
  // count(ab)=8, count(a)=count(b)=8, vocab=100: (8-5)*100/64 = 4.6875
  PhraseModel m;
  m.min_count = 5;
  m.threshold = 10.0;
  m.vocab_size = 100;
  m.unigram_counts["isolamento"] = 8;
  m.unigram_counts["social"] = 8;
  m.bigram_counts[PhraseModel::pair_key("isolamento", "social")] = 8;
  CHECK(m.score("isolamento", "social") == doctest::Approx(4.6875));
  CHECK(!m.promotable("isolamento", "social"));

  // count(ab)=20, counts 20/20: (15*100)/400 = 3.75
  m.unigram_counts["isolamento"] = 20;
  m.unigram_counts["social"] = 20;
  m.bigram_counts[PhraseModel::pair_key("isolamento", "social")] = 20;
  CHECK(m.score("isolamento", "social") == doctest::Approx(3.75));
  CHECK(!m.promotable("isolamento", "social"));
}

TEST_CASE("train_phrases matches the brute-force oracle exactly") {
  Rng rng(5);
  const std::vector<std::string> vocab = {"isolamento", "social", "fica", "casa",
                                          "corona",     "medo",   "fim"};
  std::vector<std::vector<std::string>> docs;
  size_t total = 0;
  while (total < 900) {
    std::vector<std::string> doc;
    const size_t len = rng.below(12) + 1;
    for (size_t i = 0; i < len; ++i) doc.push_back(vocab[rng.below(vocab.size())]);
    total += len;
    docs.push_back(std::move(doc));
  }
  const auto model = preprocess::train_phrases(docs, 3, 1.5);
  const PairOracle oracle(docs, 3, 1.5);

  for (const auto& [key, count] : oracle.bi) {
    const auto& [a, b] = key;
    CHECK(model.bigram(a, b) == count);
    CHECK(model.unigram(a) == oracle.uni.at(a));
    if (count >= 3) {
      CHECK(model.score(a, b) == oracle.score(a, b, model.vocab_size));
    }
  }
}

TEST_CASE("apply_phrases merges greedily and resumes after the merge") {
  PhraseModel m;
  m.min_count = 1;
  m.threshold = 1.0;
  m.vocab_size = 100;
  auto promote = [&](const std::string& a, const std::string& b) {
    m.unigram_counts[a] = std::max<int64_t>(m.unigram_counts[a], 2);
    m.unigram_counts[b] = std::max<int64_t>(m.unigram_counts[b], 2);
    m.bigram_counts[PhraseModel::pair_key(a, b)] = 2;
  };
  promote("distanciamento", "social");
  CHECK(preprocess::apply_phrases({"distanciamento", "social"}, m) ==
        std::vector<std::string>{"distanciamento_social"});
  CHECK(preprocess::apply_phrases({"sem", "pares"}, m) ==
        std::vector<std::string>{"sem", "pares"});

  // (a,b) then (a_b,c) promotable -> trigram with two passes
  promote("a", "b");
  promote("a_b", "c");
  CHECK(preprocess::apply_phrases({"a", "b", "c"}, m, 2) ==
        std::vector<std::string>{"a_b_c"});
  CHECK(preprocess::apply_phrases({"a", "b", "c"}, m, 1) ==
        std::vector<std::string>{"a_b", "c"});

  // greedy: after merging (a,b), scanning resumes at c; (b,c) untouched
  promote("b", "c");
  CHECK(preprocess::apply_phrases({"a", "b", "c"}, m, 1) ==
        std::vector<std::string>{"a_b", "c"});
}

TEST_CASE("trigrams emerge from training on repeated collocations") {
  // "distanciamento social total" recurs amid a large one-off vocabulary;
  // with 20 co-occurrences and ~300 distinct terms the score formula gives
  // (20-5)*303/(20*20) = 11.4 > 10 for both pair stages.
  std::vector<std::vector<std::string>> docs;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> doc;
    for (int u = 0; u < 8; ++u) doc.push_back("n" + std::to_string(i) + "_" + std::to_string(u));
    doc.push_back("distanciamento");
    doc.push_back("social");
    doc.push_back("total");
    for (int u = 8; u < 15; ++u) doc.push_back("n" + std::to_string(i) + "_" + std::to_string(u));
    docs.push_back(std::move(doc));
  }
  const auto model = preprocess::train_phrases(docs, 5, 10.0);
  CHECK(model.promotable("distanciamento", "social"));
  CHECK(model.promotable("distanciamento_social", "total"));
  const auto merged = preprocess::apply_phrases(
      {"hoje", "distanciamento", "social", "total", "fim"}, model, 2);
  CHECK(merged == std::vector<std::string>{"hoje", "distanciamento_social_total", "fim"});
}

TEST_CASE("apply_phrases preserves the underlying unigram stream") {
  Rng rng(21);
  const std::vector<std::string> vocab = {"um", "dois", "tres", "quatro", "cinco"};
  std::vector<std::vector<std::string>> docs;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> doc;
    for (size_t t = 0; t < rng.below(10) + 1; ++t) doc.push_back(vocab[rng.below(vocab.size())]);
    docs.push_back(std::move(doc));
  }
  const auto model = preprocess::train_phrases(docs, 2, 0.5);
  for (const auto& doc : docs) {
    const auto merged = preprocess::apply_phrases(doc, model, 2);
    std::vector<std::string> recovered;
    for (const auto& token : merged) {
      size_t start = 0;
      while (true) {
        const size_t us = token.find('_', start);
        recovered.push_back(token.substr(start, us - start));
        if (us == std::string::npos) break;
        start = us + 1;
      }
    }
    CHECK(recovered == doc);
  }
}

TEST_CASE("lemmatize_filter maps lemmas, drops OTHER, keeps unknowns and phrases") {
  Lexicon lex;
  lex.add("morreu", "morrer", Pos::kVerb);
  lex.add("de", "de", Pos::kOther);
  CHECK(preprocess::lemmatize_filter({"morreu"}, lex) == std::vector<std::string>{"morrer"});
  CHECK(preprocess::lemmatize_filter({"covid19"}, lex) == std::vector<std::string>{"covid19"});
  CHECK(preprocess::lemmatize_filter({"de"}, lex).empty());
  CHECK(preprocess::lemmatize_filter({"chá_de_alho"}, lex) ==
        std::vector<std::string>{"chá_de_alho"});

  preprocess::PosFilter verbs_only{false, false, true, false, false};
  CHECK(preprocess::lemmatize_filter({"morreu", "covid19"}, lex, verbs_only) ==
        std::vector<std::string>{"morrer"});
}

TEST_CASE("lexicon TSV parsing validates structure") {
  std::istringstream good("# comment\nmorreu\tmorrer\tVERB\nde\tde\tOTHER\n");
  auto lex = Lexicon::read(good);
  CHECK(lex.size() == 2);
  REQUIRE(lex.lookup("MORREU") != nullptr);
  CHECK(lex.lookup("morreu")->lemma == "morrer");

  std::istringstream ragged("morreu\tmorrer\n");
  CHECK_THROWS(Lexicon::read(ragged));
  std::istringstream badpos("x\ty\tVERBO\n");
  CHECK_THROWS(Lexicon::read(badpos));
}

TEST_CASE("train_phrases rejects bad parameters") {
  CHECK_THROWS(preprocess::train_phrases({}, 0, 10.0));
  CHECK_THROWS(preprocess::train_phrases({}, 5, 0.0));
  CHECK_THROWS(preprocess::apply_phrases({"a"}, PhraseModel{}, 0));
}

TEST_CASE("processed docs round-trip through jsonl") {
  std::vector<preprocess::ProcessedDoc> docs = {{"p1:0", {"cloroquina", "curar"}},
                                                {"p2:1", {}}};
  std::ostringstream out;
  preprocess::write_docs(out, docs);
  std::istringstream in(out.str());
  auto r = preprocess::read_docs(in);
  CHECK(r.errors.empty());
  REQUIRE(r.docs.size() == 2);
  CHECK(r.docs[0].doc_id == "p1:0");
  CHECK(r.docs[0].tokens == docs[0].tokens);
  CHECK(r.docs[1].tokens.empty());
}
