#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tpr/answerer.hpp"
#include "tpr/config.hpp"
#include "tpr/engine.hpp"
#include "tpr/generator.hpp"

namespace tpr {

struct CorpusSpec {
  enum class Kind { official, generated };
  Kind kind = Kind::generated;
  std::string data_dir;          // official layout: qa{N}_*_{split}.txt
  std::string split = "test";    // official only
  int stories_per_category = 1000;
  std::vector<int> categories;   // default 1..20
};

struct Mismatch {
  int story = 0;  // 1-based story number within the category corpus
  int time = 0;
  std::string predicted;
  std::string gold;
  std::vector<int> gold_clues;
  std::vector<int> slots_used;
};

struct CategoryReport {
  int category = 0;
  long total = 0;
  long correct = 0;
  double accuracy = 0.0;
  long clue_checked = 0;   // categories 1-3 only
  long clue_matched = 0;
  std::vector<Mismatch> mismatches;
  std::vector<Mismatch> allowlisted;  // known corpus label defects
};

struct EvalReport {
  std::string release;
  std::uint64_t seed = 0;
  int d = 0;
  std::string mode;
  std::vector<CategoryReport> categories;
  long total = 0;
  long correct = 0;
  double accuracy = 0.0;

  std::string to_json() const;
  std::string to_csv() const;
};

// Answers every question with no access to gold answers or clues during
// inference; deterministic and byte-stable for a fixed (config, corpus),
// independent of cfg.jobs.
EvalReport run_eval(const Config& cfg, const CorpusSpec& spec,
                    const Lexicon& lex, const AnswerLexicon& alex);

// Evaluates one already-loaded story batch (used by tests and the REPL).
CategoryReport eval_category(const Config& cfg, const Banks& banks,
                             int category, const std::vector<Story>& stories,
                             const Lexicon& lex, const AnswerLexicon& alex,
                             const CorpusSpec& spec);

// Collects (abstract key, gold surface) observations for learn_lexicon by
// running inference over a training batch.
std::vector<LexObservation> collect_lexicon_observations(
    const Config& cfg, const Banks& banks, int category,
    const std::vector<Story>& stories, const Lexicon& lex);

// Locates "qaN_*_SPLIT.txt" under dir; empty string when absent.
std::string find_official_file(const std::string& dir, int category,
                               const std::string& split);

}  // namespace tpr
