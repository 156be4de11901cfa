#pragma once

#include <memory>

#include "tpr/reasoner.hpp"

namespace tpr {

// Drives one story: translates logical forms into slot encodings (the
// per-category binding schemes) and dispatches questions to the inference
// procedures. Banks and config are shared read-only; all mutable state is
// story-local except the optional rule memory.
class Engine {
 public:
  Engine(const Banks& banks, const Config& cfg, RuleMemory* rules = nullptr);

  void begin_story(int task_id, std::uint64_t story_seed);
  void add_statement(int time, const LogicalForm& lf);
  Outcome answer(int time, const QuestionForm& q);

  StoryState& state() { return *state_; }
  const StoryState& state() const { return *state_; }
  int task_id() const { return task_id_; }

  // Harvests C20 rules from the fully encoded story into `out`.
  void harvest_rules(RuleMemory& out) const { induce_rules(*state_, out); }

 private:
  const EntityVector& ent(const std::string& label, EntityRole role, int time);
  Vector unit_pair(const PairBinder& b, const Vector& next, const Vector& prev);
  void push(int time, SlotKind kind, Encoding enc, std::vector<int> sources = {});
  int current_location(int actor, int before, std::vector<int>* used);
  int current_owner(int object, int before);
  Outcome answer_impl(int time, const QuestionForm& q);

  const Banks* banks_;
  const Config* cfg_;
  RuleMemory* rules_;
  std::unique_ptr<StoryState> state_;
  int task_id_ = 0;
  bool local_rules_ready_ = false;
};

}  // namespace tpr
