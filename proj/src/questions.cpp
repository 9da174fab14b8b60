#include "qmine/questions.hpp"

#include <json.hpp>

#include "qmine/preprocess.hpp"
#include "qmine/text.hpp"
#include "qmine/timeutil.hpp"

namespace qmine::questions {

using nlohmann::json;

namespace {

constexpr uint32_t kEllipsis = 0x2026;

bool is_terminator(uint32_t cp) {
  return cp == '.' || cp == '!' || cp == '?' || cp == kEllipsis;
}

bool is_closer(uint32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case ')':
    case ']':
    case '}':
    case 0x00BB:  // »
    case 0x2019:  // ’
    case 0x201D:  // ”
      return true;
    default:
      return false;
  }
}

bool is_space_cp(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

std::string trim_segment(const std::vector<uint32_t>& cps, size_t begin, size_t end) {
  while (begin < end && is_space_cp(cps[begin])) ++begin;
  while (end > begin && is_space_cp(cps[end - 1])) --end;
  std::string out;
  for (size_t i = begin; i < end; ++i) text::append_utf8(out, cps[i]);
  return out;
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view input) {
  const auto cps = text::decode(input);
  std::vector<std::string> sentences;
  size_t start = 0;
  size_t i = 0;
  while (i < cps.size()) {
    if (is_terminator(cps[i])) {
      while (i < cps.size() && is_terminator(cps[i])) ++i;  // absorb the run
      std::string sentence = trim_segment(cps, start, i);
      if (!sentence.empty()) sentences.push_back(std::move(sentence));
      start = i;
    } else {
      ++i;
    }
  }
  std::string tail = trim_segment(cps, start, cps.size());
  if (!tail.empty()) sentences.push_back(std::move(tail));
  return sentences;
}

bool is_question(std::string_view sentence) {
  const auto cps = text::decode(sentence);
  size_t end = cps.size();
  while (end > 0 && (is_space_cp(cps[end - 1]) || is_closer(cps[end - 1]))) --end;
  bool has_question_mark = false;
  size_t run_end = end;
  while (end > 0 && is_terminator(cps[end - 1])) {
    if (cps[end - 1] == '?') has_question_mark = true;
    --end;
  }
  return run_end > end && has_question_mark;
}

std::vector<Question> extract_questions(const corpus::Post& post) {
  const std::string cleaned = preprocess::clean_text(post.text);
  const auto sentences = segment_sentences(cleaned);
  std::vector<Question> out;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (is_question(sentences[i])) {
      Question q;
      q.sentence.post_id = post.id;
      q.sentence.index = static_cast<int>(i);
      q.sentence.text = sentences[i];
      q.timestamp = post.timestamp;
      out.push_back(std::move(q));
    }
  }
  return out;
}

void write_questions(std::ostream& out, const std::vector<Question>& qs) {
  for (const auto& q : qs) {
    json j;
    j["post_id"] = q.sentence.post_id;
    j["index"] = q.sentence.index;
    j["timestamp"] = timeutil::format_iso8601(q.timestamp);
    j["text"] = q.sentence.text;
    out << j.dump() << '\n';
  }
}

ReadQuestionsResult read_questions(std::istream& in) {
  ReadQuestionsResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("post_id") ||
        !j.contains("index") || !j.contains("timestamp") || !j.contains("text")) {
      result.errors.push_back({line_no, "invalid question record"});
      continue;
    }
    auto ts = timeutil::parse_iso8601(j["timestamp"].get<std::string>());
    if (!ts) {
      result.errors.push_back({line_no, "unparseable timestamp"});
      continue;
    }
    Question q;
    q.sentence.post_id = j["post_id"].get<std::string>();
    q.sentence.index = j["index"].get<int>();
    q.sentence.text = j["text"].get<std::string>();
    q.timestamp = *ts;
    result.questions.push_back(std::move(q));
  }
  return result;
}

}  // namespace qmine::questions
