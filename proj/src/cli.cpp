#include "qmine/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmine/coherence.hpp"
#include "qmine/config.hpp"
#include "qmine/corpus.hpp"
#include "qmine/io.hpp"
#include "qmine/lda.hpp"
#include "qmine/ner.hpp"
#include "qmine/preprocess.hpp"
#include "qmine/questions.hpp"
#include "qmine/report.hpp"
#include "qmine/timeutil.hpp"
#include "qmine/wordlist.hpp"

namespace qmine::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

corpus::KeywordSet load_keywords(const std::string& path) {
  return path.empty() ? corpus::KeywordSet::default_set() : corpus::KeywordSet::load(path);
}

ner::Gazetteers load_gazetteers(const std::array<std::string, 4>& paths) {
  // Defaults are the keyword list split by category.
  std::array<std::vector<std::string>, 4> lists = {
      std::vector<std::string>{"corona", "coronavirus", "covid", "covid19", "covid-19",
                               "dengue", "h1n1", "gripe"},          // DIS
      {"cloroquina", "hidroxicloroquina", "ivermectina", "tamiflu",
       "azitromicina"},                                              // DRUG
      {},                                                            // ORG
      {}};                                                           // PER
  for (size_t i = 0; i < paths.size(); ++i) {
    if (!paths[i].empty()) lists[i] = load_wordlist(paths[i]);
  }
  return ner::Gazetteers::from_lists(lists);
}

std::vector<corpus::Post> read_posts_or_throw(const std::string& path,
                                              bool report_errors = true) {
  auto in = open_input(path);
  auto result = corpus::parse_posts(in);
  if (report_errors) {
    for (const auto& e : result.errors) {
      std::cerr << path << ":" << e.line_no << ": " << e.reason << '\n';
    }
  }
  return std::move(result.posts);
}

uint64_t require_seed(const std::optional<uint64_t>& seed) {
  if (!seed) throw std::runtime_error("a --seed is required for this command");
  std::cerr << "effective seed: " << *seed << '\n';
  return *seed;
}

struct MonthModelArg {
  std::string month;
  std::string path;
};

MonthModelArg parse_month_model(const std::string& arg) {
  const size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size()) {
    throw std::runtime_error("expected MONTH=MODEL_PATH, got: " + arg);
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

}  // namespace

int run(int argc, const char* const* argv) {
  // The config file provides defaults; flags always win.
  RunConfig config;
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string_view a = argv[i];
      if (a == "--config" && i + 1 < argc) {
        config = RunConfig::load(argv[i + 1]);
      } else if (a.rfind("--config=", 0) == 0) {
        config = RunConfig::load(std::string(a.substr(9)));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "qmine: " << e.what() << '\n';
    return 1;
  }
  auto cfg_str = [&](const char* key, const char* fallback = "") {
    return config.get(key).value_or(fallback);
  };

  CLI::App app{"qmine: question mining over keyword-matched social media posts"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "configuration file (key = value sections)");

  std::optional<uint64_t> seed;
  if (auto s = config.get_int("run.seed")) seed = static_cast<uint64_t>(*s);
  uint64_t seed_flag = 0;

  int threads = static_cast<int>(config.get_int("run.threads").value_or(0));
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;

  // --- ingest ---------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "parse posts, match keywords, keep Portuguese");
  ingest->fallthrough();
  struct {
    std::string in, out, keywords, stopwords;
    double threshold = 0.12;
  } ing;
  ing.in = cfg_str("paths.corpus");
  ing.keywords = cfg_str("paths.keywords");
  ing.stopwords = cfg_str("paths.stopwords");
  if (auto t = config.get_double("corpus.lang_threshold")) ing.threshold = *t;
  ingest->add_option("--in", ing.in, "posts JSONL");
  ingest->add_option("--out", ing.out, "filtered posts JSONL")->required();
  ingest->add_option("--keywords", ing.keywords, "keyword list file (default: built-in set)");
  ingest->add_option("--stopwords", ing.stopwords, "stopword list file");
  ingest->add_option("--lang-threshold", ing.threshold, "stopword coverage threshold");
  ingest->callback([&] {
    if (ing.in.empty()) throw std::runtime_error("ingest needs --in (or paths.corpus)");
    if (ing.stopwords.empty())
      throw std::runtime_error("ingest needs --stopwords (or paths.stopwords)");
    const auto ks = load_keywords(ing.keywords);
    const auto sw = corpus::StopwordList::load(ing.stopwords);
    auto posts = corpus::dedupe_by_id(read_posts_or_throw(ing.in));
    const size_t parsed = posts.size();
    corpus::reconcile_keywords(posts, ks);
    std::erase_if(posts, [](const corpus::Post& p) { return p.keywords.empty(); });
    const size_t matched = posts.size();
    posts = corpus::filter_language(std::move(posts), sw, ing.threshold);
    auto out = open_output(ing.out);
    corpus::write_posts(out, posts);
    std::cerr << "ingest: " << parsed << " parsed, " << matched << " keyword-matched, "
              << posts.size() << " kept\n";
  });

  // --- questions ------------------------------------------------------
  auto* questions_cmd = app.add_subcommand("questions", "extract '?'-terminated sentences");
  questions_cmd->fallthrough();
  struct {
    std::string in, out;
  } qst;
  questions_cmd->add_option("--in", qst.in, "posts JSONL")->required();
  questions_cmd->add_option("--out", qst.out, "questions JSONL")->required();
  questions_cmd->callback([&] {
    const auto posts = read_posts_or_throw(qst.in);
    auto out = open_output(qst.out);
    size_t n = 0;
    for (const auto& post : posts) {
      const auto qs = questions::extract_questions(post);
      questions::write_questions(out, qs);
      n += qs.size();
    }
    std::cerr << "questions: " << n << " extracted from " << posts.size() << " posts\n";
  });

  // --- preprocess -----------------------------------------------------
  auto* prep = app.add_subcommand("preprocess", "clean, tokenize, phrases, lemmatize");
  prep->fallthrough();
  struct {
    std::string in, out, stopwords, lexicon, month;
    int64_t min_count = 5;
    double threshold = 10.0;
    int passes = 2;
  } pre;
  pre.stopwords = cfg_str("paths.stopwords");
  pre.lexicon = cfg_str("paths.lexicon");
  prep->add_option("--in", pre.in, "questions JSONL")->required();
  prep->add_option("--out", pre.out, "processed docs JSONL")->required();
  prep->add_option("--stopwords", pre.stopwords, "stopword list file");
  prep->add_option("--lexicon", pre.lexicon, "lemma/POS lexicon TSV");
  prep->add_option("--month", pre.month, "keep only questions from YYYY-MM");
  prep->add_option("--min-count", pre.min_count, "phrase min pair count");
  prep->add_option("--phrase-threshold", pre.threshold, "phrase score threshold");
  prep->add_option("--passes", pre.passes, "phrase merge passes");
  prep->callback([&] {
    if (pre.stopwords.empty())
      throw std::runtime_error("preprocess needs --stopwords (or paths.stopwords)");
    if (pre.lexicon.empty())
      throw std::runtime_error("preprocess needs --lexicon (or paths.lexicon)");
    const auto sw = corpus::StopwordList::load(pre.stopwords);
    const auto lexicon = preprocess::Lexicon::load(pre.lexicon);
    auto in = open_input(pre.in);
    auto parsed = questions::read_questions(in);
    for (const auto& e : parsed.errors) {
      std::cerr << pre.in << ":" << e.line_no << ": " << e.reason << '\n';
    }
    std::vector<preprocess::ProcessedDoc> docs;
    for (const auto& q : parsed.questions) {
      if (!pre.month.empty() && timeutil::format_month(q.timestamp) != pre.month) continue;
      preprocess::ProcessedDoc doc;
      doc.doc_id = q.sentence.post_id + ":" + std::to_string(q.sentence.index);
      auto tokens = preprocess::tokenize(preprocess::clean_text(q.sentence.text));
      doc.tokens = preprocess::remove_stopwords(std::move(tokens), sw);
      docs.push_back(std::move(doc));
    }
    std::vector<std::vector<std::string>> token_lists;
    token_lists.reserve(docs.size());
    for (const auto& d : docs) token_lists.push_back(d.tokens);
    const auto phrases =
        preprocess::train_phrases(token_lists, pre.min_count, pre.threshold);
    for (auto& d : docs) {
      d.tokens = preprocess::lemmatize_filter(
          preprocess::apply_phrases(std::move(d.tokens), phrases, pre.passes), lexicon);
    }
    auto out = open_output(pre.out);
    preprocess::write_docs(out, docs);
    std::cerr << "preprocess: " << docs.size() << " docs\n";
  });

  // --- lda-fit --------------------------------------------------------
  auto* ldafit = app.add_subcommand("lda-fit", "fit one LDA model by collapsed Gibbs");
  ldafit->fallthrough();
  struct {
    std::string in, out, topics_out;
    lda::FitParams params;
    int min_df = 2;
    double max_df_ratio = 0.5;
    int top_n = 10;
    int month_index = 0;
  } lf;
  lf.params.k = static_cast<int>(config.get_int("lda.k").value_or(20));
  if (auto v = config.get_double("lda.alpha")) lf.params.alpha = *v;
  if (auto v = config.get_double("lda.beta")) lf.params.beta = *v;
  lf.params.iterations = static_cast<int>(config.get_int("lda.iterations").value_or(1000));
  lf.params.burn_in = static_cast<int>(config.get_int("lda.burn_in").value_or(200));
  lf.params.sample_lag = static_cast<int>(config.get_int("lda.sample_lag").value_or(10));
  lf.min_df = static_cast<int>(config.get_int("lda.min_df").value_or(2));
  if (auto v = config.get_double("lda.max_df_ratio")) lf.max_df_ratio = *v;
  ldafit->add_option("--in", lf.in, "processed docs JSONL")->required();
  ldafit->add_option("--out", lf.out, "model JSON")->required();
  ldafit->add_option("--k", lf.params.k, "topic count");
  ldafit->add_option("--alpha", lf.params.alpha, "doc-topic prior (<=0 means 50/K)");
  ldafit->add_option("--beta", lf.params.beta, "topic-word prior");
  ldafit->add_option("--iters", lf.params.iterations, "Gibbs sweeps");
  ldafit->add_option("--burn-in", lf.params.burn_in, "sweeps before sampling");
  ldafit->add_option("--lag", lf.params.sample_lag, "sweeps between samples");
  ldafit->add_option("--min-df", lf.min_df, "min document frequency");
  ldafit->add_option("--max-df", lf.max_df_ratio, "max document frequency ratio");
  ldafit->add_option("--top-n", lf.top_n, "terms per topic in --topics-out");
  ldafit->add_option("--topics-out", lf.topics_out, "write top terms TSV");
  ldafit->add_option("--month-index", lf.month_index, "seed offset for per-month runs");
  auto* ldafit_seed = ldafit->add_option("--seed", seed_flag, "root RNG seed");
  ldafit->callback([&] {
    if (ldafit_seed->count()) seed = seed_flag;
    lf.params.seed = require_seed(seed) + static_cast<uint64_t>(lf.month_index);
    auto in = open_input(lf.in);
    auto parsed = preprocess::read_docs(in);
    auto [vocab, bows] = lda::build_vocabulary(parsed.docs, lf.min_df, lf.max_df_ratio);
    const auto model = lda::fit(bows, vocab, lf.params);
    auto out = open_output(lf.out);
    model.save(out);
    if (!lf.topics_out.empty()) {
      auto tout = open_output(lf.topics_out);
      tout << "topic_id\trank\tterm\tprobability\n";
      for (int t = 0; t < model.k; ++t) {
        const auto summary = lda::top_terms(model, t, lf.top_n);
        for (size_t r = 0; r < summary.terms.size(); ++r) {
          tout << t << '\t' << r << '\t' << summary.terms[r].first << '\t'
               << io::format_double(summary.terms[r].second) << '\n';
        }
      }
    }
    std::cerr << "lda-fit: k=" << model.k << " docs=" << model.num_docs()
              << " vocab=" << model.vocab_size() << '\n';
  });

  // --- lda-sweep ------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("lda-sweep", "select K by mean C_v coherence");
  sweep_cmd->fallthrough();
  struct {
    std::string in, out;
    coherence::SweepParams params;
    int month_index = 0;
  } sw;
  sw.params.k_min = static_cast<int>(config.get_int("coherence.k_min").value_or(1));
  sw.params.k_max = static_cast<int>(config.get_int("coherence.k_max").value_or(60));
  sw.params.window_size = static_cast<int>(config.get_int("coherence.window").value_or(110));
  sw.params.top_n = static_cast<int>(config.get_int("coherence.top_n").value_or(20));
  sw.params.fit.iterations = static_cast<int>(config.get_int("lda.iterations").value_or(1000));
  sw.params.fit.burn_in = static_cast<int>(config.get_int("lda.burn_in").value_or(200));
  sw.params.fit.sample_lag = static_cast<int>(config.get_int("lda.sample_lag").value_or(10));
  sw.params.min_df = static_cast<int>(config.get_int("lda.min_df").value_or(2));
  if (auto v = config.get_double("lda.max_df_ratio")) sw.params.max_df_ratio = *v;
  sweep_cmd->add_option("--in", sw.in, "processed docs JSONL")->required();
  sweep_cmd->add_option("--out", sw.out, "sweep TSV (K, mean_coherence)")->required();
  sweep_cmd->add_option("--k-min", sw.params.k_min, "smallest K");
  sweep_cmd->add_option("--k-max", sw.params.k_max, "largest K");
  sweep_cmd->add_option("--window", sw.params.window_size, "sliding window size");
  sweep_cmd->add_option("--top-n", sw.params.top_n, "terms per topic");
  sweep_cmd->add_option("--iters", sw.params.fit.iterations, "Gibbs sweeps");
  sweep_cmd->add_option("--burn-in", sw.params.fit.burn_in, "sweeps before sampling");
  sweep_cmd->add_option("--lag", sw.params.fit.sample_lag, "sweeps between samples");
  sweep_cmd->add_option("--alpha", sw.params.fit.alpha, "doc-topic prior (<=0 means 50/K)");
  sweep_cmd->add_option("--beta", sw.params.fit.beta, "topic-word prior");
  sweep_cmd->add_option("--min-df", sw.params.min_df, "min document frequency");
  sweep_cmd->add_option("--max-df", sw.params.max_df_ratio, "max document frequency ratio");
  sweep_cmd->add_option("--threads", threads, "parallel fits");
  sweep_cmd->add_option("--month-index", sw.month_index, "seed offset for per-month runs");
  auto* sweep_seed = sweep_cmd->add_option("--seed", seed_flag, "root RNG seed");
  sweep_cmd->callback([&] {
    if (sweep_seed->count()) seed = seed_flag;
    const uint64_t base = require_seed(seed) + static_cast<uint64_t>(sw.month_index);
    sw.params.threads = threads;
    auto in = open_input(sw.in);
    auto parsed = preprocess::read_docs(in);
    const auto result = coherence::sweep(parsed.docs, sw.params, base);
    auto out = open_output(sw.out);
    coherence::write_sweep_tsv(out, result);
    double best = 0.0;
    for (const auto& e : result.entries) {
      if (e.k == result.selected_k) best = e.mean_coherence;
    }
    std::cerr << "lda-sweep: selected K=" << result.selected_k
              << " mean coherence=" << best << '\n';
  });

  // --- ner-train ------------------------------------------------------
  auto* ntrain = app.add_subcommand("ner-train", "train the averaged perceptron tagger");
  ntrain->fallthrough();
  struct {
    std::string in, out, train_out, test_out;
    std::array<std::string, 4> gaz;  // DIS DRUG ORG PER
    int epochs = 10;
    double split_ratio = 0.0;  // 0 disables splitting
  } nt;
  nt.epochs = static_cast<int>(config.get_int("ner.epochs").value_or(10));
  nt.gaz = {cfg_str("paths.gazetteer_dis"), cfg_str("paths.gazetteer_drug"),
            cfg_str("paths.gazetteer_org"), cfg_str("paths.gazetteer_per")};
  ntrain->add_option("--in", nt.in, "CoNLL training data")->required();
  ntrain->add_option("--out", nt.out, "model file")->required();
  ntrain->add_option("--epochs", nt.epochs, "training epochs");
  ntrain->add_option("--split", nt.split_ratio, "hold out 1-ratio of sentences");
  ntrain->add_option("--train-out", nt.train_out, "write the training part");
  ntrain->add_option("--test-out", nt.test_out, "write the held-out part");
  ntrain->add_option("--gaz-dis", nt.gaz[0], "disease gazetteer file");
  ntrain->add_option("--gaz-drug", nt.gaz[1], "drug gazetteer file");
  ntrain->add_option("--gaz-org", nt.gaz[2], "organization gazetteer file");
  ntrain->add_option("--gaz-per", nt.gaz[3], "person gazetteer file");
  auto* ntrain_seed = ntrain->add_option("--seed", seed_flag, "root RNG seed");
  ntrain->callback([&] {
    if (ntrain_seed->count()) seed = seed_flag;
    const uint64_t s = require_seed(seed);
    const auto gaz = load_gazetteers(nt.gaz);
    auto in = open_input(nt.in);
    auto data = ner::parse_conll(in);
    std::vector<ner::TaggedSentence> test_part;
    if (nt.split_ratio > 0.0) {
      auto [train_part, held_out] = ner::split(std::move(data), nt.split_ratio, s);
      data = std::move(train_part);
      test_part = std::move(held_out);
      if (!nt.train_out.empty()) {
        auto tout = open_output(nt.train_out);
        ner::write_conll(tout, data);
      }
      if (!nt.test_out.empty()) {
        auto tout = open_output(nt.test_out);
        ner::write_conll(tout, test_part);
      }
    }
    const auto model = ner::train(data, gaz, nt.epochs, s);
    auto out = open_output(nt.out);
    model.save(out);
    std::cerr << "ner-train: " << data.size() << " sentences, " << model.weights.size()
              << " features\n";
  });

  // --- ner-eval -------------------------------------------------------
  auto* neval = app.add_subcommand("ner-eval", "exact-span precision/recall/F1");
  neval->fallthrough();
  struct {
    std::string model, in, out;
  } ne;
  neval->add_option("--model", ne.model, "model file")->required();
  neval->add_option("--in", ne.in, "CoNLL gold data")->required();
  neval->add_option("--out", ne.out, "write the report TSV");
  neval->callback([&] {
    auto min = open_input(ne.model);
    const auto model = ner::NerModel::load(min);
    auto gin = open_input(ne.in);
    const auto gold = ner::parse_conll(gin);
    const auto report = ner::evaluate(model, gold);
    std::ostringstream text;
    text << "label\tprecision\trecall\tf1\tsupport\n";
    for (const auto& [label, m] : report.per_label) {
      text << label << '\t' << io::format_double(m.precision) << '\t'
           << io::format_double(m.recall) << '\t' << io::format_double(m.f1) << '\t'
           << m.support << '\n';
    }
    text << "macro_f1\t" << io::format_double(report.macro_f1) << '\n';
    std::cout << text.str();
    if (!ne.out.empty()) {
      auto out = open_output(ne.out);
      out << text.str();
    }
  });

  // --- ner-apply ------------------------------------------------------
  auto* napply = app.add_subcommand("ner-apply", "tag questions and emit entity spans");
  napply->fallthrough();
  struct {
    std::string model, in, out;
  } na;
  napply->add_option("--model", na.model, "model file")->required();
  napply->add_option("--in", na.in, "questions JSONL")->required();
  napply->add_option("--out", na.out, "spans JSONL")->required();
  napply->callback([&] {
    auto min = open_input(na.model);
    const auto model = ner::NerModel::load(min);
    auto in = open_input(na.in);
    auto parsed = questions::read_questions(in);
    auto out = open_output(na.out);
    for (const auto& q : parsed.questions) {
      const auto tokens = ner::tokenize_surface(q.sentence.text);
      const auto tags = model.predict(tokens);
      const auto spans = ner::spans_from_bio(tags);
      json j;
      j["doc_id"] = q.sentence.post_id + ":" + std::to_string(q.sentence.index);
      j["spans"] = json::array();
      for (const auto& span : spans) {
        std::string surface = tokens[span.start];
        for (int i = span.start + 1; i < span.end; ++i) surface += " " + tokens[i];
        j["spans"].push_back({{"start", span.start},
                              {"end", span.end},
                              {"label", span.label},
                              {"text", surface}});
      }
      out << j.dump() << '\n';
    }
    std::cerr << "ner-apply: " << parsed.questions.size() << " questions tagged\n";
  });

  // --- report ---------------------------------------------------------
  auto* rep = app.add_subcommand("report", "emit plot-ready TSV datasets");
  rep->fallthrough();
  rep->require_subcommand(1);
  struct {
    std::string in, out, posts, questions;
    std::vector<std::string> month_models;
  } rp;

  auto* rep_kw = rep->add_subcommand("keywords", "posts per keyword");
  rep_kw->fallthrough();
  rep_kw->add_option("--in", rp.in, "posts JSONL")->required();
  rep_kw->add_option("--out", rp.out, "output TSV")->required();
  rep_kw->callback([&] {
    const auto posts = read_posts_or_throw(rp.in);
    auto out = open_output(rp.out);
    report::write_frequency_tsv(out, report::keyword_histogram(posts), "keyword");
  });

  auto* rep_ts = rep->add_subcommand("timeseries", "daily post/question counts");
  rep_ts->fallthrough();
  rep_ts->add_option("--posts", rp.posts, "posts JSONL")->required();
  rep_ts->add_option("--questions", rp.questions, "questions JSONL")->required();
  rep_ts->add_option("--out", rp.out, "output TSV")->required();
  rep_ts->callback([&] {
    const auto posts = read_posts_or_throw(rp.posts);
    auto qin = open_input(rp.questions);
    const auto qs = questions::read_questions(qin);
    auto out = open_output(rp.out);
    report::write_timeseries_tsv(out, report::daily_timeseries(posts, qs.questions));
  });

  auto* rep_topics = rep->add_subcommand("topics", "docs per dominant topic per month");
  rep_topics->fallthrough();
  rep_topics->add_option("--month-model", rp.month_models,
                         "MONTH=MODEL_PATH (repeatable)")->required();
  rep_topics->add_option("--out", rp.out, "output TSV")->required();
  rep_topics->callback([&] {
    std::vector<lda::LdaModel> models;
    models.reserve(rp.month_models.size());
    std::map<std::string, const lda::LdaModel*> by_month;
    for (const auto& arg : rp.month_models) {
      const auto mm = parse_month_model(arg);
      auto in = open_input(mm.path);
      models.push_back(lda::LdaModel::load(in));
      by_month[mm.month] = &models.back();
    }
    auto out = open_output(rp.out);
    report::write_topics_tsv(out, report::topic_month_distribution(by_month));
  });

  auto* rep_ent = rep->add_subcommand("entities", "entity mention frequencies per label");
  rep_ent->fallthrough();
  rep_ent->add_option("--in", rp.in, "spans JSONL from ner-apply")->required();
  rep_ent->add_option("--out", rp.out, "output TSV")->required();
  rep_ent->callback([&] {
    auto in = open_input(rp.in);
    std::vector<report::LabeledSpan> spans;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("spans")) {
        std::cerr << rp.in << ":" << line_no << ": invalid span record\n";
        continue;
      }
      for (const auto& s : j["spans"]) {
        spans.push_back({s.at("label").get<std::string>(), s.at("text").get<std::string>()});
      }
    }
    auto out = open_output(rp.out);
    report::write_entities_tsv(out, report::entity_frequencies(spans));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "qmine: " << e.what() << '\n';
    std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qmine: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qmine::cli
