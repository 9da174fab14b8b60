// Sentence segmentation and the question rule: a sentence is a question
// iff its trailing terminator run contains at least one '?'.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qmine/corpus.hpp"

namespace qmine::questions {

struct Sentence {
  std::string post_id;
  int index = 0;  // ordinal within the post, dense from 0
  std::string text;
};

struct Question {
  Sentence sentence;
  int64_t timestamp = 0;
};

// Splits after runs of sentence terminators . ! ? and the ellipsis
// character; the terminator run attaches to the left sentence.
// Whitespace-only segments are dropped. Expects URL-stripped text.
std::vector<std::string> segment_sentences(std::string_view text);

// True iff the sentence's trailing terminator run (ignoring trailing
// whitespace and closing quotes/brackets) contains a '?'.
bool is_question(std::string_view sentence);

// Cleans the post text (preprocess::clean_text), segments it and returns
// the '?'-terminated sentences in order.
std::vector<Question> extract_questions(const corpus::Post& post);

void write_questions(std::ostream& out, const std::vector<Question>& qs);

struct ReadQuestionsResult {
  std::vector<Question> questions;
  std::vector<corpus::LineError> errors;
};

ReadQuestionsResult read_questions(std::istream& in);

}  // namespace qmine::questions
