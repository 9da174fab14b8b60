// Latent Dirichlet Allocation by collapsed Gibbs sampling. Estimates use
// counts averaged over post-burn-in samples; everything is deterministic
// given the seed.

#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmine/preprocess.hpp"

namespace qmine::lda {

struct Vocabulary {
  std::unordered_map<std::string, int> term_to_id;
  std::vector<std::string> id_to_term;

  int size() const { return static_cast<int>(id_to_term.size()); }
  int id_of(const std::string& term) const {
    auto it = term_to_id.find(term);
    return it == term_to_id.end() ? -1 : it->second;
  }
  int add(const std::string& term);
};

struct BowDoc {
  std::string doc_id;
  std::vector<int> token_ids;  // with repetition, order irrelevant
};

// Terms in fewer than min_df docs or more than max_df_ratio * D docs are
// excluded; ids follow first appearance; emptied docs are retained.
std::pair<Vocabulary, std::vector<BowDoc>> build_vocabulary(
    const std::vector<preprocess::ProcessedDoc>& docs, int min_df = 2,
    double max_df_ratio = 0.5);

struct FitParams {
  int k = 20;
  double alpha = 0.0;  // <= 0 selects the 50/K default
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 200;
  int sample_lag = 10;
  uint64_t seed = 0;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / k; }
};

class LdaModel {
 public:
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  int iterations = 0;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  std::vector<int> doc_len;

  // final Gibbs state
  std::vector<int64_t> n_kw;  // k * V, topic-word counts
  std::vector<int64_t> n_k;   // per-topic totals
  std::vector<int64_t> n_dk;  // D * k, doc-topic counts
  std::vector<std::vector<int>> z;

  // sums over retained samples; divide by n_samples for the average
  std::vector<double> sum_nkw;
  std::vector<double> sum_ndk;
  int n_samples = 0;

  int num_docs() const { return static_cast<int>(doc_ids.size()); }
  int vocab_size() const { return vocab.size(); }

  std::vector<double> phi_row(int topic) const;
  std::vector<double> theta_row(int doc_index) const;
  std::vector<std::vector<double>> phi() const;
  std::vector<std::vector<double>> theta() const;

  void save(std::ostream& out) const;
  static LdaModel load(std::istream& in);
};

// Read-only view of the Gibbs state at a retained sample.
struct GibbsSample {
  const std::vector<int64_t>& n_kw;
  const std::vector<int64_t>& n_k;
  const std::vector<int64_t>& n_dk;
};
using SampleObserver = std::function<void(const GibbsSample&)>;

// Collapsed Gibbs sampling. Rejects k < 1, non-positive hyperparameters
// and corpora without a single non-empty document. The observer, when
// given, sees every retained sample (used by the enumeration-oracle
// tests to relabel samples before averaging).
LdaModel fit(const std::vector<BowDoc>& docs, const FitParams& params,
             const SampleObserver& on_sample = nullptr);

// Same, but installs the real vocabulary (terms must cover every id).
LdaModel fit(const std::vector<BowDoc>& docs, const Vocabulary& vocab,
             const FitParams& params);

struct TopicSummary {
  int topic_id = 0;
  std::vector<std::pair<std::string, double>> terms;  // probability descending
};

// The n highest-probability terms; ties break toward the lower term id.
TopicSummary top_terms(const LdaModel& model, int topic_id, int n = 10);

// argmax_k theta[d][k], ties toward the lower topic id.
int dominant_topic(const LdaModel& model, int doc_index);

}  // namespace qmine::lda
