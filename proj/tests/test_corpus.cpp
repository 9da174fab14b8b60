#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qmine/corpus.hpp"
#include "qmine/rng.hpp"
#include "qmine/text.hpp"
#include "qmine/timeutil.hpp"

using namespace qmine;
using corpus::KeywordSet;
using corpus::Post;
using corpus::StopwordList;

namespace {

corpus::ParseResult parse_str(const std::string& s) {
  std::istringstream in(s);
  return corpus::parse_posts(in);
}

StopwordList tiny_stopwords() {
  return StopwordList::from_words({"que", "a", "o", "vai", "de", "da", "e", "é", "um", "uma"});
}

}  // namespace

TEST_CASE("parse_posts reads a single well-formed line") {
  auto r = parse_str(
      R"({"id":"1","timestamp":"2020-03-17T10:00:00Z","text":"Chá de alho cura coronavírus?"})"
      "\n");
  REQUIRE(r.posts.size() == 1);
  CHECK(r.errors.empty());
  CHECK(r.posts[0].id == "1");
  CHECK(r.posts[0].text == "Chá de alho cura coronavírus?");
  CHECK(timeutil::format_iso8601(r.posts[0].timestamp) == "2020-03-17T10:00:00Z");
}

TEST_CASE("parse_posts on empty stream") {
  auto r = parse_str("");
  CHECK(r.posts.empty());
  CHECK(r.errors.empty());
}

TEST_CASE("parse_posts reports the bad line and keeps the rest") {
  auto r = parse_str(
      R"({"id":"1","timestamp":"2020-01-01T00:00:00Z","text":"a?"})"
      "\n"
      R"({"id":"2","timestamp":"2020-01-01T00:00:00Z"})"
      "\n"
      R"({"id":"3","timestamp":"2020-01-01T00:00:00Z","text":"b?"})"
      "\n");
  REQUIRE(r.posts.size() == 2);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line_no == 2);
  CHECK(r.posts[0].id == "1");
  CHECK(r.posts[1].id == "3");
}

TEST_CASE("parse_posts flags bad json and bad timestamps with line numbers") {
  auto r = parse_str(
      "not json at all\n"
      R"({"id":"2","timestamp":"tuesday","text":"x"})"
      "\n");
  CHECK(r.posts.empty());
  REQUIRE(r.errors.size() == 2);
  CHECK(r.errors[0].line_no == 1);
  CHECK(r.errors[1].line_no == 2);
}

TEST_CASE("posts round-trip through serialization") {
  const std::string line =
      R"({"id":"42","timestamp":"2020-02-29T23:59:59Z","text":"Época de quarentena, né?","keywords":["quarentena"]})"
      "\n";
  auto r = parse_str(line);
  REQUIRE(r.posts.size() == 1);
  std::ostringstream out;
  corpus::write_posts(out, r.posts);
  auto r2 = parse_str(out.str());
  REQUIRE(r2.posts.size() == 1);
  CHECK(r2.posts[0].id == r.posts[0].id);
  CHECK(r2.posts[0].timestamp == r.posts[0].timestamp);
  CHECK(r2.posts[0].text == r.posts[0].text);
  CHECK(r2.posts[0].keywords == r.posts[0].keywords);
}

TEST_CASE("match_keywords exact containment") {
  auto ks = KeywordSet::from_terms({"cloroquina"});
  CHECK(corpus::match_keywords("a cloroquina funciona?", ks) ==
        std::vector<std::string>{"cloroquina"});
}

TEST_CASE("match_keywords folds diacritics") {
  auto ks = KeywordSet::from_terms({"coronavirus"});
  CHECK(corpus::match_keywords("Coronavírus chegou", ks) ==
        std::vector<std::string>{"coronavirus"});
}

TEST_CASE("match_keywords multi-word phrase") {
  auto ks = KeywordSet::default_set();
  CHECK(corpus::match_keywords("o distanciamento social ajuda?", ks) ==
        std::vector<std::string>{"distanciamento social"});
}

TEST_CASE("match_keywords prefix rule covers covid19 and covid-19") {
  auto ks = KeywordSet::from_terms({"covid"});
  CHECK(corpus::match_keywords("peguei covid19 ontem", ks) ==
        std::vector<std::string>{"covid"});
  CHECK(corpus::match_keywords("teste de COVID-19 deu certo", ks) ==
        std::vector<std::string>{"covid"});
  CHECK(corpus::match_keywords("vacina pronta", ks).empty());
  // prefix must start at a word boundary
  CHECK(corpus::match_keywords("anticovid em alta", ks).empty());
}

TEST_CASE("match_keywords output ordered by keyword set, deduplicated") {
  auto ks = KeywordSet::from_terms({"corona", "covid", "quarentena"});
  auto m = corpus::match_keywords("quarentena do corona e mais corona", ks);
  CHECK(m == std::vector<std::string>{"corona", "quarentena"});
}

TEST_CASE("match_keywords invariant under folding of the input") {
  auto ks = KeywordSet::default_set();
  const std::string t = "Será que a CLOROQUINA resolve o Coronavírus na Quarentena?";
  CHECK(corpus::match_keywords(text::fold(t), ks) == corpus::match_keywords(t, ks));
}

TEST_CASE("keyword set rejects duplicates and empties") {
  CHECK_THROWS(KeywordSet::from_terms({"covid", "Covid"}));
  CHECK_THROWS(KeywordSet::from_terms({""}));
  CHECK_THROWS(KeywordSet::from_terms({}));
  CHECK(KeywordSet::default_set().size() == 16);
}

TEST_CASE("filter_language keeps stopword-rich text and drops the rest") {
  auto sw = tiny_stopwords();
  std::vector<Post> posts(3);
  posts[0].id = "pt";
  posts[0].text = "que dia vai acabar a quarentena?";
  posts[1].id = "en";
  posts[1].text = "lockdown now please";
  posts[2].id = "empty";
  posts[2].text = "";
  auto kept = corpus::filter_language(posts, sw, 0.12);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id == "pt");
  // 3 of the 6 words are stopwords
  CHECK(kept[0].lang_score == doctest::Approx(0.5));
}

TEST_CASE("filter_language is monotone in the threshold") {
  auto sw = tiny_stopwords();
  std::vector<Post> posts;
  Rng rng(99);
  const std::vector<std::string> vocab = {"que",  "vai",   "peste", "fim",
                                          "hoje", "praia", "a",     "sol"};
  for (int i = 0; i < 50; ++i) {
    Post p;
    p.id = std::to_string(i);
    for (int t = 0; t < 6; ++t) p.text += std::string(t ? " " : "") + vocab[rng.below(vocab.size())];
    posts.push_back(p);
  }
  size_t prev = posts.size() + 1;
  for (double threshold : {0.0, 0.1, 0.2, 0.4, 0.8, 1.0}) {
    size_t n = corpus::filter_language(posts, sw, threshold).size();
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("bucket_by_period groups by month") {
  std::vector<Post> posts(2);
  posts[0].id = "a";
  posts[0].timestamp = *timeutil::parse_iso8601("2020-01-05T12:00:00Z");
  posts[1].id = "b";
  posts[1].timestamp = *timeutil::parse_iso8601("2020-02-01T00:00:00Z");
  auto buckets = corpus::bucket_by_period(posts, corpus::Granularity::kMonth);
  REQUIRE(buckets.size() == 2);
  CHECK(buckets[0].period == "2020-01");
  CHECK(buckets[0].post_ids == std::vector<std::string>{"a"});
  CHECK(buckets[1].period == "2020-02");
  CHECK(buckets[1].post_ids == std::vector<std::string>{"b"});
}

TEST_CASE("bucket_by_period on empty input") {
  CHECK(corpus::bucket_by_period({}, corpus::Granularity::kDay).empty());
}

TEST_CASE("bucket sizes sum to the corpus size (counting oracle)") {
  // 1000 posts spread uniformly over Jan..Apr 2020
  const int64_t start = *timeutil::parse_iso8601("2020-01-01T00:00:00Z");
  const int64_t end = *timeutil::parse_iso8601("2020-04-30T23:59:59Z");
  Rng rng(7);
  std::vector<Post> posts(1000);
  for (size_t i = 0; i < posts.size(); ++i) {
    posts[i].id = std::to_string(i);
    posts[i].timestamp = start + static_cast<int64_t>(rng.below(end - start));
  }
  auto months = corpus::bucket_by_period(posts, corpus::Granularity::kMonth);
  REQUIRE(months.size() == 4);
  CHECK(months[0].period == "2020-01");
  CHECK(months[3].period == "2020-04");
  size_t total = 0;
  for (const auto& b : months) total += b.post_ids.size();
  CHECK(total == posts.size());

  auto days = corpus::bucket_by_period(posts, corpus::Granularity::kDay);
  size_t day_total = 0;
  for (const auto& b : days) day_total += b.post_ids.size();
  CHECK(day_total == posts.size());
}

TEST_CASE("dedupe_by_id keeps the first occurrence") {
  std::vector<Post> posts(3);
  posts[0].id = "a";
  posts[0].text = "primeiro";
  posts[1].id = "b";
  posts[2].id = "a";
  posts[2].text = "repetido";
  auto unique = corpus::dedupe_by_id(posts);
  REQUIRE(unique.size() == 2);
  CHECK(unique[0].id == "a");
  CHECK(unique[0].text == "primeiro");
  CHECK(unique[1].id == "b");
  CHECK(corpus::dedupe_by_id({}).empty());
}

TEST_CASE("reconcile_keywords recomputes only when absent") {
  auto ks = KeywordSet::from_terms({"corona", "covid"});
  std::vector<Post> posts(2);
  posts[0].text = "o corona chegou";
  posts[1].text = "o corona chegou";
  posts[1].keywords = {"COVID", "ebola", "covid"};
  corpus::reconcile_keywords(posts, ks);
  CHECK(posts[0].keywords == std::vector<std::string>{"corona"});
  // provided keywords are folded and restricted to the configured set
  CHECK(posts[1].keywords == std::vector<std::string>{"covid"});
}
