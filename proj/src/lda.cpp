#include "qmine/lda.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "qmine/rng.hpp"

namespace qmine::lda {

using nlohmann::json;

int Vocabulary::add(const std::string& term) {
  auto [it, inserted] = term_to_id.try_emplace(term, static_cast<int>(id_to_term.size()));
  if (inserted) id_to_term.push_back(term);
  return it->second;
}

std::pair<Vocabulary, std::vector<BowDoc>> build_vocabulary(
    const std::vector<preprocess::ProcessedDoc>& docs, int min_df, double max_df_ratio) {
  if (min_df < 1) throw std::invalid_argument("min_df must be >= 1");
  if (max_df_ratio <= 0.0 || max_df_ratio > 1.0)
    throw std::invalid_argument("max_df_ratio must be in (0, 1]");

  std::unordered_map<std::string, int> doc_freq;
  for (const auto& doc : docs) {
    std::unordered_map<std::string, bool> seen;
    for (const auto& t : doc.tokens) {
      if (seen.emplace(t, true).second) ++doc_freq[t];
    }
  }
  const double max_df = max_df_ratio * static_cast<double>(docs.size());

  Vocabulary vocab;
  std::vector<BowDoc> bows;
  bows.reserve(docs.size());
  for (const auto& doc : docs) {
    BowDoc bow;
    bow.doc_id = doc.doc_id;
    for (const auto& t : doc.tokens) {
      const int df = doc_freq[t];
      if (df < min_df || static_cast<double>(df) > max_df) continue;
      bow.token_ids.push_back(vocab.add(t));
    }
    bows.push_back(std::move(bow));
  }
  return {std::move(vocab), std::move(bows)};
}

LdaModel fit(const std::vector<BowDoc>& docs, const FitParams& params,
             const SampleObserver& on_sample) {
  if (params.k < 1) throw std::invalid_argument("k must be >= 1");
  const double alpha = params.effective_alpha();
  if (alpha <= 0.0 || params.beta <= 0.0)
    throw std::invalid_argument("hyperparameters must be positive");
  if (params.iterations < params.burn_in || params.burn_in < 0)
    throw std::invalid_argument("need iterations >= burn_in >= 0");
  if (params.sample_lag < 1) throw std::invalid_argument("sample_lag must be >= 1");

  int max_id = -1;
  size_t total_tokens = 0;
  for (const auto& d : docs) {
    for (int w : d.token_ids) max_id = std::max(max_id, w);
    total_tokens += d.token_ids.size();
  }
  if (total_tokens == 0) throw std::invalid_argument("corpus has no tokens");

  LdaModel m;
  m.k = params.k;
  m.alpha = alpha;
  m.beta = params.beta;
  m.seed = params.seed;
  m.iterations = params.iterations;
  const int V = max_id + 1;
  const int K = params.k;
  const int D = static_cast<int>(docs.size());
  m.vocab.id_to_term.resize(V);  // caller may install the real vocabulary afterwards
  for (int w = 0; w < V; ++w) m.vocab.id_to_term[w] = "term" + std::to_string(w);

  m.doc_ids.resize(D);
  m.doc_len.resize(D);
  m.n_kw.assign(static_cast<size_t>(K) * V, 0);
  m.n_k.assign(K, 0);
  m.n_dk.assign(static_cast<size_t>(D) * K, 0);
  m.z.resize(D);

  Rng rng(params.seed);
  for (int d = 0; d < D; ++d) {
    m.doc_ids[d] = docs[d].doc_id;
    m.doc_len[d] = static_cast<int>(docs[d].token_ids.size());
    m.z[d].resize(docs[d].token_ids.size());
    for (size_t i = 0; i < docs[d].token_ids.size(); ++i) {
      const int w = docs[d].token_ids[i];
      const int topic = static_cast<int>(rng.below(static_cast<uint64_t>(K)));
      m.z[d][i] = topic;
      ++m.n_kw[static_cast<size_t>(topic) * V + w];
      ++m.n_k[topic];
      ++m.n_dk[static_cast<size_t>(d) * K + topic];
    }
  }

  m.sum_nkw.assign(m.n_kw.size(), 0.0);
  m.sum_ndk.assign(m.n_dk.size(), 0.0);
  const double v_beta = V * params.beta;
  std::vector<double> weights(K);

  for (int sweep = 1; sweep <= params.iterations; ++sweep) {
    for (int d = 0; d < D; ++d) {
      int64_t* ndk_row = m.n_dk.data() + static_cast<size_t>(d) * K;
      const auto& ids = docs[d].token_ids;
      for (size_t i = 0; i < ids.size(); ++i) {
        const int w = ids[i];
        const int old_topic = m.z[d][i];
        --m.n_kw[static_cast<size_t>(old_topic) * V + w];
        --m.n_k[old_topic];
        --ndk_row[old_topic];

        double total = 0.0;
        for (int t = 0; t < K; ++t) {
          const double p = (static_cast<double>(ndk_row[t]) + alpha) *
                           (static_cast<double>(m.n_kw[static_cast<size_t>(t) * V + w]) + params.beta) /
                           (static_cast<double>(m.n_k[t]) + v_beta);
          weights[t] = p;
          total += p;
        }
        double u = rng.unit() * total;
        int new_topic = K - 1;
        for (int t = 0; t < K; ++t) {
          u -= weights[t];
          if (u < 0.0) {
            new_topic = t;
            break;
          }
        }

        m.z[d][i] = new_topic;
        ++m.n_kw[static_cast<size_t>(new_topic) * V + w];
        ++m.n_k[new_topic];
        ++ndk_row[new_topic];
      }
    }
    if (sweep > params.burn_in && (sweep - params.burn_in) % params.sample_lag == 0) {
      for (size_t i = 0; i < m.n_kw.size(); ++i) m.sum_nkw[i] += static_cast<double>(m.n_kw[i]);
      for (size_t i = 0; i < m.n_dk.size(); ++i) m.sum_ndk[i] += static_cast<double>(m.n_dk[i]);
      ++m.n_samples;
      if (on_sample) on_sample(GibbsSample{m.n_kw, m.n_k, m.n_dk});
    }
  }
  if (m.n_samples == 0) {  // short runs fall back to the final state
    for (size_t i = 0; i < m.n_kw.size(); ++i) m.sum_nkw[i] = static_cast<double>(m.n_kw[i]);
    for (size_t i = 0; i < m.n_dk.size(); ++i) m.sum_ndk[i] = static_cast<double>(m.n_dk[i]);
    m.n_samples = 1;
    if (on_sample) on_sample(GibbsSample{m.n_kw, m.n_k, m.n_dk});
  }
  return m;
}

LdaModel fit(const std::vector<BowDoc>& docs, const Vocabulary& vocab,
             const FitParams& params) {
  for (const auto& d : docs) {
    for (int w : d.token_ids) {
      if (w < 0 || w >= vocab.size())
        throw std::invalid_argument("token id outside vocabulary");
    }
  }
  LdaModel m = fit(docs, params);
  if (vocab.size() < m.vocab_size())
    throw std::invalid_argument("vocabulary smaller than corpus ids");
  m.vocab = vocab;
  // widen the count matrix when trailing vocabulary ids never occurred
  if (vocab.size() > static_cast<int>(m.sum_nkw.size()) / std::max(m.k, 1) && m.k > 0) {
    const int old_v = static_cast<int>(m.sum_nkw.size()) / m.k;
    std::vector<double> widened(static_cast<size_t>(m.k) * vocab.size(), 0.0);
    std::vector<int64_t> widened_n(static_cast<size_t>(m.k) * vocab.size(), 0);
    for (int t = 0; t < m.k; ++t) {
      for (int w = 0; w < old_v; ++w) {
        widened[static_cast<size_t>(t) * vocab.size() + w] =
            m.sum_nkw[static_cast<size_t>(t) * old_v + w];
        widened_n[static_cast<size_t>(t) * vocab.size() + w] =
            m.n_kw[static_cast<size_t>(t) * old_v + w];
      }
    }
    m.sum_nkw = std::move(widened);
    m.n_kw = std::move(widened_n);
  }
  return m;
}

std::vector<double> LdaModel::phi_row(int topic) const {
  const int V = vocab_size();
  std::vector<double> row(V);
  double denom = 0.0;
  for (int w = 0; w < V; ++w)
    denom += sum_nkw[static_cast<size_t>(topic) * V + w] / n_samples;
  denom += V * beta;
  for (int w = 0; w < V; ++w) {
    row[w] = (sum_nkw[static_cast<size_t>(topic) * V + w] / n_samples + beta) / denom;
  }
  return row;
}

std::vector<double> LdaModel::theta_row(int doc_index) const {
  std::vector<double> row(k);
  double denom = 0.0;
  for (int t = 0; t < k; ++t)
    denom += sum_ndk[static_cast<size_t>(doc_index) * k + t] / n_samples;
  denom += k * alpha;
  for (int t = 0; t < k; ++t) {
    row[t] = (sum_ndk[static_cast<size_t>(doc_index) * k + t] / n_samples + alpha) / denom;
  }
  return row;
}

std::vector<std::vector<double>> LdaModel::phi() const {
  std::vector<std::vector<double>> out;
  out.reserve(k);
  for (int t = 0; t < k; ++t) out.push_back(phi_row(t));
  return out;
}

std::vector<std::vector<double>> LdaModel::theta() const {
  std::vector<std::vector<double>> out;
  out.reserve(num_docs());
  for (int d = 0; d < num_docs(); ++d) out.push_back(theta_row(d));
  return out;
}

TopicSummary top_terms(const LdaModel& model, int topic_id, int n) {
  if (topic_id < 0 || topic_id >= model.k) throw std::out_of_range("topic_id out of range");
  const int V = model.vocab_size();
  const auto row = model.phi_row(topic_id);
  std::vector<int> order(V);
  for (int w = 0; w < V; ++w) order[w] = w;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return a < b;
  });
  TopicSummary summary;
  summary.topic_id = topic_id;
  const int take = std::min(n, V);
  for (int i = 0; i < take; ++i) {
    summary.terms.emplace_back(model.vocab.id_to_term[order[i]], row[order[i]]);
  }
  return summary;
}

int dominant_topic(const LdaModel& model, int doc_index) {
  if (doc_index < 0 || doc_index >= model.num_docs())
    throw std::out_of_range("doc_index out of range");
  const auto row = model.theta_row(doc_index);
  int best = 0;
  for (int t = 1; t < model.k; ++t) {
    if (row[t] > row[best]) best = t;
  }
  return best;
}

void LdaModel::save(std::ostream& out) const {
  json j;
  j["format"] = "qmine-lda";
  j["version"] = 1;
  j["k"] = k;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["seed"] = seed;
  j["iterations"] = iterations;
  j["n_samples"] = n_samples;
  j["vocabulary"] = vocab.id_to_term;
  j["doc_ids"] = doc_ids;
  j["doc_len"] = doc_len;
  j["sum_nkw"] = sum_nkw;
  j["sum_ndk"] = sum_ndk;
  out << j.dump() << '\n';
}

LdaModel LdaModel::load(std::istream& in) {
  json j;
  in >> j;
  if (!j.is_object() || j.value("format", "") != "qmine-lda")
    throw std::runtime_error("not a qmine-lda model file");
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported model version");
  LdaModel m;
  m.k = j.at("k").get<int>();
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.at("beta").get<double>();
  m.seed = j.at("seed").get<uint64_t>();
  m.iterations = j.at("iterations").get<int>();
  m.n_samples = j.at("n_samples").get<int>();
  m.vocab.id_to_term = j.at("vocabulary").get<std::vector<std::string>>();
  for (size_t i = 0; i < m.vocab.id_to_term.size(); ++i)
    m.vocab.term_to_id[m.vocab.id_to_term[i]] = static_cast<int>(i);
  m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
  m.doc_len = j.at("doc_len").get<std::vector<int>>();
  m.sum_nkw = j.at("sum_nkw").get<std::vector<double>>();
  m.sum_ndk = j.at("sum_ndk").get<std::vector<double>>();
  if (m.k < 1 || m.n_samples < 1) throw std::runtime_error("model file has invalid counts");
  if (m.sum_nkw.size() != static_cast<size_t>(m.k) * m.vocab.id_to_term.size() ||
      m.sum_ndk.size() != static_cast<size_t>(m.k) * m.doc_ids.size() ||
      m.doc_len.size() != m.doc_ids.size()) {
    throw std::runtime_error("model file has inconsistent matrix sizes");
  }
  return m;
}

}  // namespace qmine::lda
