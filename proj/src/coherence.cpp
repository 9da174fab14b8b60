#include "qmine/coherence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

#include "qmine/io.hpp"

namespace qmine::coherence {

WindowCounts::WindowCounts(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& tracked, int window_size)
    : window_size_(window_size) {
  if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
  for (const auto& t : tracked) index_.try_emplace(t, static_cast<int>(index_.size()));
  df_.assign(index_.size(), 0);
  const auto n_tracked = static_cast<uint64_t>(index_.size());

  std::vector<int> present;  // tracked ids in the current window, sorted unique
  for (const auto& doc : docs) {
    const size_t len = doc.size();
    const size_t width = std::min<size_t>(len, static_cast<size_t>(window_size));
    const size_t n_win = len <= static_cast<size_t>(window_size) ? 1 : len - window_size + 1;
    n_windows_ += static_cast<int64_t>(n_win);

    for (size_t start = 0; start < n_win; ++start) {
      present.clear();
      for (size_t i = start; i < start + width && i < len; ++i) {
        auto it = index_.find(doc[i]);
        if (it != index_.end()) present.push_back(it->second);
      }
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (size_t a = 0; a < present.size(); ++a) {
        ++df_[present[a]];
        for (size_t b = a + 1; b < present.size(); ++b) {
          ++pf_[static_cast<uint64_t>(present[a]) * n_tracked +
                static_cast<uint64_t>(present[b])];
        }
      }
    }
  }
}

int64_t WindowCounts::doc_freq(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? 0 : df_[it->second];
}

int64_t WindowCounts::pair_freq(const std::string& a, const std::string& b) const {
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) return 0;
  if (ia->second == ib->second) return df_[ia->second];  // a term co-occurs with itself
  const int lo = std::min(ia->second, ib->second);
  const int hi = std::max(ia->second, ib->second);
  auto it = pf_.find(static_cast<uint64_t>(lo) * index_.size() + static_cast<uint64_t>(hi));
  return it == pf_.end() ? 0 : it->second;
}

WindowCounts count_windows(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& tracked, int window_size) {
  return WindowCounts(docs, tracked, window_size);
}

double npmi(const std::string& a, const std::string& b, const WindowCounts& counts,
            double eps) {
  const double n = static_cast<double>(counts.n_windows());
  if (n <= 0.0) throw std::invalid_argument("npmi needs at least one window");
  const double pa = counts.doc_freq(a) / n;
  const double pb = counts.doc_freq(b) / n;
  if (pa == 0.0 || pb == 0.0) return 0.0;
  const double pab = counts.pair_freq(a, b) / n;
  return std::log((pab + eps) / (pa * pb)) / (-std::log(pab + eps));
}

double c_v(const std::vector<std::string>& top_words, const WindowCounts& counts,
           double eps) {
  const size_t n = top_words.size();
  if (n == 0) throw std::invalid_argument("c_v needs at least one word");
  if (n == 1) return 1.0;

  // context vectors: row i holds NPMI(w_i, w_j) for all j
  std::vector<std::vector<double>> ctx(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const double v = npmi(top_words[i], top_words[j], counts, eps);
      ctx[i][j] = v;
      ctx[j][i] = v;
    }
  }
  std::vector<double> topic_vec(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) topic_vec[j] += ctx[i][j];
  }

  auto cosine = [](const std::vector<double>& x, const std::vector<double>& y) {
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      dot += x[i] * y[i];
      nx += x[i] * x[i];
      ny += y[i] * y[i];
    }
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return dot / (std::sqrt(nx) * std::sqrt(ny));
  };

  double total = 0.0;
  for (size_t i = 0; i < n; ++i) total += cosine(ctx[i], topic_vec);
  return total / static_cast<double>(n);
}

SweepResult sweep(const std::vector<preprocess::ProcessedDoc>& docs,
                  const SweepParams& params, uint64_t base_seed) {
  if (params.k_min < 1 || params.k_max < params.k_min)
    throw std::invalid_argument("need 1 <= k_min <= k_max");

  auto [vocab, bows] = lda::build_vocabulary(docs, params.min_df, params.max_df_ratio);

  const int n_points = params.k_max - params.k_min + 1;
  std::vector<std::vector<std::vector<std::string>>> model_topics(n_points);
  auto fit_one = [&](int idx) {
    const int k = params.k_min + idx;
    lda::FitParams fp = params.fit;
    fp.k = k;
    fp.seed = base_seed + static_cast<uint64_t>(k) * 10007u;
    const lda::LdaModel model = lda::fit(bows, vocab, fp);
    model_topics[idx].resize(k);
    for (int t = 0; t < k; ++t) {
      auto summary = lda::top_terms(model, t, params.top_n);
      for (auto& [term, prob] : summary.terms) model_topics[idx][t].push_back(term);
    }
  };

  const int threads = std::max(1, params.threads);
  if (threads == 1 || n_points == 1) {
    for (int i = 0; i < n_points; ++i) fit_one(i);
  } else {
    std::vector<std::future<void>> jobs;
    std::atomic<int> next{0};
    for (int t = 0; t < std::min(threads, n_points); ++t) {
      jobs.push_back(std::async(std::launch::async, [&] {
        for (int i = next.fetch_add(1); i < n_points; i = next.fetch_add(1)) fit_one(i);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  // one window pass over the union of every model's top terms
  std::set<std::string> tracked_set;
  for (const auto& topics : model_topics) {
    for (const auto& words : topics) tracked_set.insert(words.begin(), words.end());
  }
  std::vector<std::vector<std::string>> token_docs;
  token_docs.reserve(docs.size());
  for (const auto& d : docs) token_docs.push_back(d.tokens);
  const std::vector<std::string> tracked(tracked_set.begin(), tracked_set.end());
  const WindowCounts counts(token_docs, tracked, params.window_size);

  SweepResult result;
  result.entries.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    SweepEntry entry;
    entry.k = params.k_min + i;
    for (const auto& words : model_topics[i]) {
      entry.per_topic.push_back(words.empty() ? 0.0 : c_v(words, counts));
    }
    double sum = 0.0;
    for (double s : entry.per_topic) sum += s;
    entry.mean_coherence = entry.per_topic.empty() ? 0.0 : sum / entry.per_topic.size();
    result.entries.push_back(std::move(entry));
  }
  result.selected_k = result.entries.front().k;
  double best = result.entries.front().mean_coherence;
  for (const auto& e : result.entries) {
    if (e.mean_coherence > best) {
      best = e.mean_coherence;
      result.selected_k = e.k;
    }
  }
  return result;
}

void write_sweep_tsv(std::ostream& out, const SweepResult& result) {
  out << "K\tmean_coherence\n";
  for (const auto& e : result.entries) {
    out << e.k << '\t' << io::format_double(e.mean_coherence) << '\n';
  }
}

}  // namespace qmine::coherence
