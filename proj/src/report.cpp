#include "qmine/report.hpp"

#include <algorithm>

#include "qmine/text.hpp"
#include "qmine/timeutil.hpp"

namespace qmine::report {

FrequencyTable make_frequency_table(const std::map<std::string, int64_t>& counts) {
  FrequencyTable table;
  table.rows.assign(counts.begin(), counts.end());
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return table;
}

FrequencyTable keyword_histogram(const std::vector<corpus::Post>& posts) {
  std::map<std::string, int64_t> counts;
  for (const auto& post : posts) {
    for (const auto& kw : post.keywords) ++counts[kw];
  }
  return make_frequency_table(counts);
}

std::vector<DailyRow> daily_timeseries(const std::vector<corpus::Post>& posts,
                                       const std::vector<questions::Question>& questions) {
  if (posts.empty() && questions.empty()) return {};

  std::map<std::string, int64_t> post_counts, question_counts;
  int64_t min_day = 0, max_day = 0;
  bool first = true;
  auto see = [&](int64_t ts) {
    const int64_t day = ts >= 0 ? ts / 86400 : (ts - 86399) / 86400;
    if (first || day < min_day) min_day = day;
    if (first || day > max_day) max_day = day;
    first = false;
    return day;
  };
  for (const auto& p : posts) {
    see(p.timestamp);
    ++post_counts[timeutil::format_date(p.timestamp)];
  }
  for (const auto& q : questions) {
    see(q.timestamp);
    ++question_counts[timeutil::format_date(q.timestamp)];
  }

  std::vector<DailyRow> rows;
  for (int64_t day = min_day; day <= max_day; ++day) {
    DailyRow row;
    row.date = timeutil::format_date(day * 86400);
    if (auto it = post_counts.find(row.date); it != post_counts.end()) row.post_count = it->second;
    if (auto it = question_counts.find(row.date); it != question_counts.end())
      row.question_count = it->second;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TopicMonthRow> topic_month_distribution(
    const std::map<std::string, const lda::LdaModel*>& models_by_month) {
  std::vector<TopicMonthRow> rows;
  for (const auto& [month, model] : models_by_month) {
    std::vector<int64_t> counts(model->k, 0);
    for (int d = 0; d < model->num_docs(); ++d) ++counts[lda::dominant_topic(*model, d)];
    for (int t = 0; t < model->k; ++t) rows.push_back({month, t, counts[t]});
  }
  return rows;
}

std::map<std::string, FrequencyTable> entity_frequencies(
    const std::vector<LabeledSpan>& spans) {
  std::map<std::string, std::map<std::string, int64_t>> counts;
  for (const auto& label : ner::kLabels) counts[std::string(label)] = {};
  for (const auto& span : spans) {
    ++counts[span.label][text::to_lower(span.text)];
  }
  std::map<std::string, FrequencyTable> tables;
  for (const auto& [label, c] : counts) tables[label] = make_frequency_table(c);
  return tables;
}

void write_frequency_tsv(std::ostream& out, const FrequencyTable& table,
                         const std::string& key_header) {
  out << key_header << "\tcount\n";
  for (const auto& [key, count] : table.rows) out << key << '\t' << count << '\n';
}

void write_timeseries_tsv(std::ostream& out, const std::vector<DailyRow>& rows) {
  out << "date\tpost_count\tquestion_count\n";
  for (const auto& row : rows) {
    out << row.date << '\t' << row.post_count << '\t' << row.question_count << '\n';
  }
}

void write_topics_tsv(std::ostream& out, const std::vector<TopicMonthRow>& rows) {
  out << "month\ttopic_id\tdoc_count\n";
  for (const auto& row : rows) {
    out << row.month << '\t' << row.topic_id << '\t' << row.doc_count << '\n';
  }
}

void write_entities_tsv(std::ostream& out,
                        const std::map<std::string, FrequencyTable>& tables) {
  out << "label\tterm\tcount\n";
  for (const auto& [label, table] : tables) {
    for (const auto& [key, count] : table.rows) {
      out << label << '\t' << key << '\t' << count << '\n';
    }
  }
}

}  // namespace qmine::report
