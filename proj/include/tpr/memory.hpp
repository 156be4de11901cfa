#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "tpr/algebra.hpp"
#include "tpr/config.hpp"
#include "tpr/parser.hpp"

namespace tpr {

// Structural tag recording which binder shaped the slot's role side, so the
// reasoner knows whether to unbind with U-dagger, V-dagger or C-dagger.
enum SlotKind : unsigned {
  kBasic = 1u << 0,     // containee container^T
  kTemporal = 1u << 1,  // actor (loc o prev)^T, loc o stamp for timed moves
  kOwner = 1u << 2,     // object (next * prev)^T ownership transition
  kGroup = 1u << 3,     // (a1 x a2) loc^T conjoined movers
  kEither = 1u << 4,    // actor (locA x locB)^T indefinite location
  kIsa = 1u << 5,       // category instance^T
  kProp = 1u << 6,      // subject property^T / motive actor^T
  kContains = 1u << 7,  // containee container^T size fact
  kDir = 1u << 8,       // lower upper^T compass fact
  kAnyKind = ~0u,
};

struct Slot {
  int time = 0;
  SlotKind kind = kBasic;
  Encoding enc;
  std::vector<int> sources;  // statement times folded in at encoding time
};

// One pending C19/C17 constraint, postponed until one side's vector is known.
struct PendingConstraint {
  int time = 0;
  bool positional = false;  // false: DirRel (C19), true: PosRel (C17)
  int lhs = -1, rhs = -1;   // registry ids
  Dir4 dir{};
  PosDir pos{};
  bool done = false;
};

// Persistent C20 rule store; keyed on the motivation word so merges across
// stories are order-independent.
struct RuleMemory {
  std::map<std::string, std::string> motive_to_location;
  std::map<std::string, std::vector<std::string>> motive_to_objects;

  void add_location(const std::string& motive, const std::string& loc) {
    motive_to_location.emplace(motive, loc);
  }
  void add_object(const std::string& motive, const std::string& obj) {
    auto& v = motive_to_objects[motive];
    if (std::find(v.begin(), v.end(), obj) == v.end()) v.push_back(obj);
  }
};

using PosBlocks = std::array<Vector, 4>;  // above, below, left, right

struct StoryState {
  StoryState(const Banks& b, const Config& c, std::uint64_t story_seed)
      : registry(c.d, c.mode, story_seed), banks(&b), cfg(&c) {}

  EntityRegistry registry;
  std::vector<Slot> slots;
  std::deque<PendingConstraint> deferred;
  std::map<int, Vector> loc_table;      // C19 solved location vectors
  std::map<int, PosBlocks> pos_table;   // C17 positional block vectors
  RuleMemory* rules = nullptr;          // shared, read-mostly
  RuleMemory local_rules;               // induced from this story alone
  const Banks* banks;
  const Config* cfg;
};

void append_slot(StoryState& state, Slot slot);

struct ScanHit {
  int time = 0;
  Vector role;
  double score = 0.0;
  const Slot* slot = nullptr;
};

// probe() applied to every slot with time < before and kind in `kinds`,
// in time order. A pure read.
std::vector<ScanHit> scan(const StoryState& state, const Vector& containee,
                          int before, unsigned kinds);
// Mirror image: probes the container side (enc * v).
std::vector<ScanHit> scan_containers(const StoryState& state,
                                     const Vector& container, int before,
                                     unsigned kinds);

std::optional<ScanHit> most_recent(const StoryState& state,
                                   const Vector& containee, int before,
                                   unsigned kinds);
std::optional<ScanHit> earliest(const StoryState& state,
                                const Vector& containee, int before,
                                unsigned kinds);

}  // namespace tpr
