// Shared test utilities: deterministic corpus generators and independent
// oracles. Everything here recomputes expectations from first principles;
// nothing reuses the library's inference paths.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmine/lda.hpp"
#include "qmine/ner.hpp"
#include "qmine/rng.hpp"

namespace testutil {

// ---------------------------------------------------------------------
// Exhaustive-enumeration LDA oracle. Enumerates every topic assignment,
// weights each by the collapsed joint probability and averages the
// per-state phi/theta estimates after aligning topic labels with the
// same pivot rule the sampler-side test uses: topic 0 is the topic with
// the most probability mass on the pivot word.
struct EnumOracle {
  std::vector<std::vector<double>> phi;    // K x V
  std::vector<std::vector<double>> theta;  // D x K
};

inline EnumOracle enumerate_lda_posterior(const std::vector<std::vector<int>>& docs, int K,
                                          int V, double alpha, double beta,
                                          int pivot_word = 0) {
  size_t total_tokens = 0;
  for (const auto& d : docs) total_tokens += d.size();
  const int D = static_cast<int>(docs.size());

  std::vector<int> flat_doc;  // doc index of each token position
  for (int d = 0; d < D; ++d) {
    for (size_t i = 0; i < docs[d].size(); ++i) flat_doc.push_back(d);
  }
  std::vector<int> flat_word;
  for (const auto& d : docs) flat_word.insert(flat_word.end(), d.begin(), d.end());

  EnumOracle oracle;
  oracle.phi.assign(K, std::vector<double>(V, 0.0));
  oracle.theta.assign(D, std::vector<double>(K, 0.0));
  double z_total = 0.0;

  std::vector<int> assign(total_tokens, 0);
  uint64_t n_states = 1;
  for (size_t i = 0; i < total_tokens; ++i) n_states *= static_cast<uint64_t>(K);

  for (uint64_t state = 0; state < n_states; ++state) {
    uint64_t code = state;
    for (size_t i = 0; i < total_tokens; ++i) {
      assign[i] = static_cast<int>(code % K);
      code /= K;
    }
    std::vector<std::vector<int64_t>> n_dk(D, std::vector<int64_t>(K, 0));
    std::vector<std::vector<int64_t>> n_kw(K, std::vector<int64_t>(V, 0));
    std::vector<int64_t> n_k(K, 0);
    for (size_t i = 0; i < total_tokens; ++i) {
      ++n_dk[flat_doc[i]][assign[i]];
      ++n_kw[assign[i]][flat_word[i]];
      ++n_k[assign[i]];
    }
    double logw = 0.0;
    for (int d = 0; d < D; ++d) {
      logw += std::lgamma(K * alpha) - std::lgamma(static_cast<double>(docs[d].size()) + K * alpha);
      for (int k = 0; k < K; ++k) logw += std::lgamma(n_dk[d][k] + alpha) - std::lgamma(alpha);
    }
    for (int k = 0; k < K; ++k) {
      logw += std::lgamma(V * beta) - std::lgamma(static_cast<double>(n_k[k]) + V * beta);
      for (int w = 0; w < V; ++w) logw += std::lgamma(n_kw[k][w] + beta) - std::lgamma(beta);
    }
    const double weight = std::exp(logw);
    z_total += weight;

    std::vector<int> perm(K);
    for (int k = 0; k < K; ++k) perm[k] = k;
    if (K == 2) {
      const double p0 = (n_kw[0][pivot_word] + beta) / (n_k[0] + V * beta);
      const double p1 = (n_kw[1][pivot_word] + beta) / (n_k[1] + V * beta);
      if (p1 > p0) std::swap(perm[0], perm[1]);
    }
    for (int k = 0; k < K; ++k) {
      for (int w = 0; w < V; ++w) {
        oracle.phi[k][w] += weight * (n_kw[perm[k]][w] + beta) / (n_k[perm[k]] + V * beta);
      }
      for (int d = 0; d < D; ++d) {
        oracle.theta[d][k] += weight * (n_dk[d][perm[k]] + alpha) /
                              (static_cast<double>(docs[d].size()) + K * alpha);
      }
    }
  }
  for (auto& row : oracle.phi) {
    for (auto& v : row) v /= z_total;
  }
  for (auto& row : oracle.theta) {
    for (auto& v : row) v /= z_total;
  }
  return oracle;
}

// Sampler-side aligned averaging over retained samples, fed by the fit
// observer. Mirrors the oracle's pivot rule.
struct AlignedAverager {
  int K, V, D;
  double alpha, beta;
  int pivot_word;
  std::vector<std::vector<double>> phi_sum;
  std::vector<std::vector<double>> theta_sum;
  std::vector<int64_t> doc_len;
  int64_t n = 0;

  AlignedAverager(int k, int v, const std::vector<std::vector<int>>& docs, double a, double b,
                  int pivot = 0)
      : K(k), V(v), D(static_cast<int>(docs.size())), alpha(a), beta(b), pivot_word(pivot),
        phi_sum(k, std::vector<double>(v, 0.0)),
        theta_sum(docs.size(), std::vector<double>(k, 0.0)) {
    for (const auto& d : docs) doc_len.push_back(static_cast<int64_t>(d.size()));
  }

  void operator()(const qmine::lda::GibbsSample& s) {
    std::vector<int> perm(K);
    for (int k = 0; k < K; ++k) perm[k] = k;
    if (K == 2) {
      const double p0 = (s.n_kw[0 * V + pivot_word] + beta) / (s.n_k[0] + V * beta);
      const double p1 = (s.n_kw[1 * V + pivot_word] + beta) / (s.n_k[1] + V * beta);
      if (p1 > p0) std::swap(perm[0], perm[1]);
    }
    for (int k = 0; k < K; ++k) {
      for (int w = 0; w < V; ++w) {
        phi_sum[k][w] +=
            (s.n_kw[static_cast<size_t>(perm[k]) * V + w] + beta) / (s.n_k[perm[k]] + V * beta);
      }
      for (int d = 0; d < D; ++d) {
        theta_sum[d][k] += (s.n_dk[static_cast<size_t>(d) * K + perm[k]] + alpha) /
                           (static_cast<double>(doc_len[d]) + K * alpha);
      }
    }
    ++n;
  }

  std::vector<std::vector<double>> phi() const {
    auto out = phi_sum;
    for (auto& row : out) {
      for (auto& v : row) v /= static_cast<double>(n);
    }
    return out;
  }
  std::vector<std::vector<double>> theta() const {
    auto out = theta_sum;
    for (auto& row : out) {
      for (auto& v : row) v /= static_cast<double>(n);
    }
    return out;
  }
};

inline double max_row_l1(const std::vector<std::vector<double>>& a,
                         const std::vector<std::vector<double>>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double l1 = 0.0;
    for (size_t j = 0; j < a[i].size(); ++j) l1 += std::abs(a[i][j] - b[i][j]);
    worst = std::max(worst, l1);
  }
  return worst;
}

// ---------------------------------------------------------------------
// Three disjoint-vocabulary themes. Every document carries its whole
// theme vocabulary (plus a few repeated draws), so words of one theme
// always co-occur (NPMI 1) and words of different themes never do
// (NPMI -1): theme-pure topics score c_v = 1 and any mixed topic scores
// strictly less, which makes K = 3 the selected sweep point.
inline std::vector<qmine::preprocess::ProcessedDoc> three_theme_corpus(
    int docs_per_theme, int extra_draws, uint64_t seed) {
  const std::array<std::string, 3> prefix = {"saude", "festa", "preco"};
  constexpr int kThemeVocab = 20;
  qmine::Rng rng(seed);
  std::vector<qmine::preprocess::ProcessedDoc> docs;
  int doc_no = 0;
  for (int theme = 0; theme < 3; ++theme) {
    for (int d = 0; d < docs_per_theme; ++d) {
      qmine::preprocess::ProcessedDoc doc;
      doc.doc_id = "doc" + std::to_string(doc_no++);
      for (int w = 0; w < kThemeVocab; ++w) {
        doc.tokens.push_back(prefix[theme] + std::to_string(w));
      }
      for (int t = 0; t < extra_draws; ++t) {
        doc.tokens.push_back(prefix[theme] +
                             std::to_string(rng.below(kThemeVocab)));
      }
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

// ---------------------------------------------------------------------
// Separable NER corpus: each filler word occurs under exactly one tag,
// so the tagger can reach zero training error by memorization.
inline std::vector<qmine::ner::TaggedSentence> separable_ner_corpus(int n_sentences,
                                                                    uint64_t seed) {
  const std::vector<std::string> diseases = {"covid",  "corona", "dengue", "gripe",
                                             "sarampo", "zika",   "h1n1"};
  const std::vector<std::string> drugs = {"cloroquina", "ivermectina", "tamiflu",
                                          "azitromicina", "dipirona", "paracetamol"};
  const std::vector<std::string> orgs = {"Anvisa", "Fiocruz", "Butantan", "Globo", "STF"};
  const std::vector<std::string> people = {"Maria", "Pedro", "Ana", "Paulo", "Carla", "Drauzio"};

  qmine::Rng rng(seed);
  auto pick = [&rng](const std::vector<std::string>& pool) {
    return pool[rng.below(pool.size())];
  };

  std::vector<qmine::ner::TaggedSentence> out;
  out.reserve(n_sentences);
  for (int i = 0; i < n_sentences; ++i) {
    qmine::ner::TaggedSentence s;
    auto word = [&](std::string w, std::string tag) {
      s.tokens.push_back(std::move(w));
      s.tags.push_back(std::move(tag));
    };
    switch (rng.below(5)) {
      case 0:
        word(pick(drugs), "B-DRUG");
        word("cura", "O");
        word(pick(diseases), "B-DIS");
        break;
      case 1:
        word(pick(people), "B-PER");
        word("perguntou", "O");
        word("sobre", "O");
        word(pick(drugs), "B-DRUG");
        break;
      case 2:
        word(pick(orgs), "B-ORG");
        word("aprovou", "O");
        word(pick(drugs), "B-DRUG");
        word("contra", "O");
        word(pick(diseases), "B-DIS");
        break;
      case 3:
        word("quando", "O");
        word(pick(diseases), "B-DIS");
        word("acaba", "O");
        break;
      default:
        word(pick(people), "B-PER");
        word("confia", "O");
        word("na", "O");
        word(pick(orgs), "B-ORG");
        break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Multiset equality helper for token streams.
inline std::map<std::string, int> token_counts(const std::vector<std::string>& tokens) {
  std::map<std::string, int> counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

}  // namespace testutil
