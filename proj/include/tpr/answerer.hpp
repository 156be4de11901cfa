#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tpr/reasoner.hpp"

namespace tpr {

// Surface forms for abstract answers. The zero count surfaces differently
// for counting ("none") and listing ("nothing") questions.
struct AnswerLexicon {
  std::vector<std::string> count_words;  // index 0..10
  std::string empty_list = "nothing";
  std::string yes = "yes", no = "no", maybe = "maybe";
  std::map<Dir4, std::string> dir_letters;
  std::string list_sep = ",";

  static AnswerLexicon defaults();
  static AnswerLexicon load(const std::string& path);
};

std::string format_answer(const AnswerValue& a, QuestionKind kind,
                          const AnswerLexicon& lex);

// One (abstract value, observed surface) pair from the training split, e.g.
// ("count:2", "two"), ("yes", "yes"), ("dir:n", "n"), ("empty_list", "nothing").
using LexObservation = std::pair<std::string, std::string>;

// Overrides the base lexicon with frequency-consistent observed mappings;
// throws on a value observed with two different surfaces.
AnswerLexicon learn_lexicon(const std::vector<LexObservation>& observations,
                            const AnswerLexicon& base);

// The abstract key format used by learn_lexicon, derived from a gold pair.
std::string lexicon_key(const AnswerValue& a, QuestionKind kind);

}  // namespace tpr
