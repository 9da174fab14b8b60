// Plot-ready datasets: keyword histogram, daily time series, per-month
// dominant-topic distribution and per-category entity frequencies.
// All outputs are deterministically ordered TSV.

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qmine/corpus.hpp"
#include "qmine/lda.hpp"
#include "qmine/ner.hpp"
#include "qmine/questions.hpp"

namespace qmine::report {

struct FrequencyTable {
  // descending by count, ties ascending by key
  std::vector<std::pair<std::string, int64_t>> rows;
};

FrequencyTable make_frequency_table(const std::map<std::string, int64_t>& counts);

// One increment per (post, matched keyword) pair.
FrequencyTable keyword_histogram(const std::vector<corpus::Post>& posts);

struct DailyRow {
  std::string date;
  int64_t post_count = 0;
  int64_t question_count = 0;
};

// Dense date range between the earliest and latest dates seen, zero-filled.
std::vector<DailyRow> daily_timeseries(const std::vector<corpus::Post>& posts,
                                       const std::vector<questions::Question>& questions);

struct TopicMonthRow {
  std::string month;
  int topic_id = 0;
  int64_t doc_count = 0;
};

// Rows for every topic id of every month's model; counts sum to the number
// of documents in that month.
std::vector<TopicMonthRow> topic_month_distribution(
    const std::map<std::string, const lda::LdaModel*>& models_by_month);

struct LabeledSpan {
  std::string label;
  std::string text;
};

// One FrequencyTable per entity label, keyed by lowercased surface form.
std::map<std::string, FrequencyTable> entity_frequencies(
    const std::vector<LabeledSpan>& spans);

void write_frequency_tsv(std::ostream& out, const FrequencyTable& table,
                         const std::string& key_header);
void write_timeseries_tsv(std::ostream& out, const std::vector<DailyRow>& rows);
void write_topics_tsv(std::ostream& out, const std::vector<TopicMonthRow>& rows);
void write_entities_tsv(std::ostream& out,
                        const std::map<std::string, FrequencyTable>& tables);

}  // namespace qmine::report
