#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpr/memory.hpp"

namespace tpr {

struct AnswerValue {
  enum class Kind { None, Entity, EntityList, YesNoMaybe, Count, Path, Motivation };
  enum class YNM { yes, no, maybe };

  Kind kind = Kind::None;
  std::string label;                 // Entity / Motivation
  std::vector<std::string> labels;   // EntityList, acquisition order
  YNM ynm = YNM::no;
  int count = 0;
  std::vector<Dir4> path;

  static AnswerValue entity(std::string l) {
    AnswerValue a;
    a.kind = Kind::Entity;
    a.label = std::move(l);
    return a;
  }
  static AnswerValue motivation(std::string l) {
    AnswerValue a;
    a.kind = Kind::Motivation;
    a.label = std::move(l);
    return a;
  }
  static AnswerValue yesno(YNM v) {
    AnswerValue a;
    a.kind = Kind::YesNoMaybe;
    a.ynm = v;
    return a;
  }
};

// Result of one inference: the answer plus the slot times the winning
// derivation actually touched (the clue-equivalent trace).
struct Outcome {
  bool ok = false;
  std::string error;
  AnswerValue value;
  std::vector<int> used;

  static Outcome fail(std::string msg) {
    Outcome o;
    o.error = std::move(msg);
    return o;
  }
  static Outcome of(AnswerValue v, std::vector<int> used_times) {
    Outcome o;
    o.ok = true;
    o.value = std::move(v);
    o.used = std::move(used_times);
    return o;
  }
};

// Snaps a recovered role vector to an entity, honoring the score floor and
// the winner/runner-up margin ratio from the config.
std::optional<int> resolve_entity(const StoryState& state, const Vector& role);

struct EntityHit {
  int id = -1;
  int time = 0;
  std::vector<int> used;
};

// C1/C11/C12/C13: most recent basic or group containment of the actor.
std::optional<EntityHit> locate_actor(const StoryState& state, int actor, int t);
// C2: most recent container of the object; recurses once through an actor.
std::optional<EntityHit> locate_object(const StoryState& state, int object, int t);
// C3 / C14: position of `item` immediately before its latest stay at `loc`.
Outcome locate_before(const StoryState& state, int task_id, int item, int loc,
                      int t);

struct OwnerStep {
  int time = 0;
  int src = -1;  // previous owner
  int dst = -1;  // next owner
};
// C5: ownership transitions of the object (drops end with `nobody`).
std::vector<OwnerStep> ownership_trajectory(const StoryState& state, int object,
                                            int t);

struct TransferQuery {
  std::optional<int> src, dst, obj;
};
// Most recent actor-to-actor transfer matching the filled-in fields.
std::optional<std::pair<OwnerStep, int>> latest_transfer(const StoryState& state,
                                                         const TransferQuery& q,
                                                         int t);

// C6/C9/C10: definite and either-or location confirmation.
Outcome yesno_location(const StoryState& state, int actor, int loc, int t);

struct Holding {
  int object = -1;
  int acquired = 0;
};
struct HoldingsResult {
  std::vector<Holding> held;  // acquisition order
  std::vector<int> used;      // every gain/loss event involving the actor
};
// C7/C8.
HoldingsResult holdings(const StoryState& state, int actor, int t);

// C15: food-chain lookup through the IsA alias.
Outcome deduce_afraid(const StoryState& state, int instance, int t);
// C16: category property from the most recent member evidence.
Outcome induce_property(const StoryState& state, int instance, int t);
// C18: transitive closure over size facts; yes forward, no reverse.
Outcome reach_yesno(const StoryState& state, int containee, int container,
                    int t);

// C4 scans over compass facts (slots bind the south/west item to the
// north/east item).
std::optional<EntityHit> dir_upper_of(const StoryState& state, int ref, int t);
std::optional<EntityHit> dir_lower_of(const StoryState& state, int ref, int t);

// C20.
std::optional<EntityHit> motive_of(const StoryState& state, int actor, int t);
void induce_rules(const StoryState& state, RuleMemory& out);

// C19/C17 constraint solving. Sweeps the deferral queue; on a stalled sweep
// seeds the earliest unresolved constraint's right-hand side and continues.
void solve_constraints(StoryState& state);
Outcome find_path(StoryState& state, int from, int to, int max_len);
Outcome positional_query(StoryState& state, int a, PosDir dir, int b);

}  // namespace tpr
