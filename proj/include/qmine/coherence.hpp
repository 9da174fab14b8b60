// C_v topic coherence: NPMI over boolean sliding windows, cosine of word
// context vectors, and the K sweep that picks the most coherent model.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmine/lda.hpp"
#include "qmine/preprocess.hpp"

namespace qmine::coherence {

// Boolean sliding-window statistics over the tracked term set. A term or
// pair counts at most once per window; a document shorter than the window
// is a single window.
class WindowCounts {
 public:
  WindowCounts(const std::vector<std::vector<std::string>>& docs,
               const std::vector<std::string>& tracked, int window_size = 110);

  int64_t n_windows() const { return n_windows_; }
  int window_size() const { return window_size_; }
  int64_t doc_freq(const std::string& term) const;
  int64_t pair_freq(const std::string& a, const std::string& b) const;

 private:
  int window_size_;
  int64_t n_windows_ = 0;
  std::unordered_map<std::string, int> index_;
  std::vector<int64_t> df_;
  std::unordered_map<uint64_t, int64_t> pf_;  // key: lo * n + hi over tracked ids
};

WindowCounts count_windows(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& tracked,
                           int window_size = 110);

// Normalized PMI in [-1, 1]; 0 when either marginal is empty.
double npmi(const std::string& a, const std::string& b, const WindowCounts& counts,
            double eps = 1e-12);

// Mean cosine between each word's context vector and the topic's summed
// context vector. Single-word topics score 1; zero vectors contribute 0.
double c_v(const std::vector<std::string>& top_words, const WindowCounts& counts,
           double eps = 1e-12);

struct SweepEntry {
  int k = 0;
  double mean_coherence = 0.0;
  std::vector<double> per_topic;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // ascending K
  int selected_k = 0;               // argmax mean, ties toward smaller K
};

struct SweepParams {
  int k_min = 1;
  int k_max = 60;
  int top_n = 20;
  int window_size = 110;
  int min_df = 2;
  double max_df_ratio = 0.5;
  lda::FitParams fit;  // k and seed are derived per sweep point
  int threads = 1;
};

// Fits one model per K with derived seed base_seed + K * 10007, scores mean
// C_v over each model's topics, returns all scores and the argmax.
SweepResult sweep(const std::vector<preprocess::ProcessedDoc>& docs,
                  const SweepParams& params, uint64_t base_seed);

void write_sweep_tsv(std::ostream& out, const SweepResult& result);

}  // namespace qmine::coherence
