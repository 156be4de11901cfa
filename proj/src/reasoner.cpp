#include "tpr/reasoner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tpr {

namespace {

void add_used(std::vector<int>& used, const std::vector<int>& more) {
  used.insert(used.end(), more.begin(), more.end());
}

std::vector<int> finish_used(std::vector<int> used) {
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used;
}

UnbindParams unbind_params(const StoryState& s) {
  return {s.cfg->pair_cleanup_threshold, s.cfg->pair_margin_ratio};
}

bool is_actor(const StoryState& s, int id) {
  return s.registry.at(id).role == EntityRole::actor;
}
bool is_object(const StoryState& s, int id) {
  return s.registry.at(id).role == EntityRole::object;
}
bool is_location(const StoryState& s, int id) {
  return s.registry.at(id).role == EntityRole::location;
}
bool is_reserved(const StoryState& s, int id) {
  return s.registry.at(id).role == EntityRole::reserved;
}

const Vector& vec(const StoryState& s, int id) {
  return s.registry.at(id).values;
}

}  // namespace

std::optional<int> resolve_entity(const StoryState& state, const Vector& role) {
  if (role.norm() < 1e-12) return std::nullopt;
  CleanupResult c = cleanup(role, state.registry);
  if (c.cosine < state.cfg->score_threshold) return std::nullopt;
  double runner = c.cosine - c.margin;
  if (runner > 0 && c.cosine / runner < state.cfg->margin_ratio)
    return std::nullopt;
  return c.id;
}

// Attributes a group slot (a1 x a2) loc^T to its members: find the location
// whose right-multiplication recovers a unit group vector, then unbind it.
static std::optional<std::pair<int, std::pair<int, int>>> decode_group(
    const StoryState& state, const Slot& slot) {
  int best_loc = -1;
  double best = 0.0;
  for (const auto& e : state.registry.entries()) {
    if (e.alias) continue;
    double score = (slot.enc * e.values).norm();
    if (score > best) {
      best = score;
      best_loc = e.id;
    }
  }
  if (best_loc < 0 || best < state.cfg->score_threshold) return std::nullopt;
  Vector group = slot.enc * vec(state, best_loc);
  UnbindResult u = pair_unbind(state.banks->conj, group, state.registry,
                               unbind_params(state));
  return std::make_pair(best_loc, std::make_pair(u.next_id, u.prev_id));
}

std::optional<EntityHit> locate_actor(const StoryState& state, int actor,
                                      int t) {
  std::optional<EntityHit> best;
  for (const auto& h : scan(state, vec(state, actor), t, kBasic)) {
    if (h.score < state.cfg->score_threshold) continue;
    if (auto id = resolve_entity(state, h.role))
      best = EntityHit{*id, h.time, {h.time}};
  }
  for (const auto& s : state.slots) {
    if (s.time >= t || s.kind != kGroup) continue;
    if (best && best->time > s.time) continue;
    auto g = decode_group(state, s);
    if (!g) continue;
    auto [loc, members] = *g;
    if (members.first == actor || members.second == actor)
      best = EntityHit{loc, s.time, {s.time}};
  }
  return best;
}

std::optional<EntityHit> locate_object(const StoryState& state, int object,
                                       int t) {
  auto hit = most_recent(state, vec(state, object), t, kBasic | kOwner);
  if (!hit) return std::nullopt;
  EntityHit out;
  out.time = hit->time;
  out.used = hit->slot->sources;
  int holder = -1;
  if (hit->slot->kind == kOwner) {
    UnbindResult u = pair_unbind(state.banks->owner, hit->role, state.registry,
                                 unbind_params(state));
    holder = u.next_id;
    if (holder < 0 || is_reserved(state, holder)) return std::nullopt;
  } else {
    auto id = resolve_entity(state, hit->role);
    if (!id) return std::nullopt;
    holder = *id;
  }
  if (is_actor(state, holder)) {
    auto loc = locate_actor(state, holder, t);
    if (!loc) return std::nullopt;  // carried by an actor with no location
    out.id = loc->id;
    add_used(out.used, loc->used);
    return out;
  }
  out.id = holder;
  return out;
}

// ---- C3 / C14 trajectories --------------------------------------------------

namespace {

struct TrajPoint {
  int loc = -1;
  int entry = 0;  // statement time that placed the item here
};

// Rebuilds the item's location history: carried segments follow the owner's
// temporal transitions, drops freeze it.
struct Trajectory {
  std::vector<TrajPoint> points;
  int anchor = 0;  // most recent item slot before the question
};

std::optional<Trajectory> item_trajectory(const StoryState& state, int item,
                                          int t) {
  auto item_hits = scan(state, vec(state, item), t, kBasic | kOwner);
  std::vector<const ScanHit*> events;
  for (const auto& h : item_hits)
    if (h.score >= state.cfg->score_threshold) events.push_back(&h);
  if (events.empty()) return std::nullopt;

  Trajectory traj;
  traj.anchor = events.back()->time;
  auto push = [&](int loc, int entry) {
    if (traj.points.empty() || traj.points.back().loc != loc)
      traj.points.push_back({loc, entry});
  };
  int nowhere = -1;
  if (const auto* e = state.registry.find("nowhere")) nowhere = e->id;

  for (size_t k = 0; k < events.size(); ++k) {
    const ScanHit& ev = *events[k];
    int seg_end = k + 1 < events.size() ? events[k + 1]->time : t;
    int holder = -1;
    if (ev.slot->kind == kOwner) {
      UnbindResult u = pair_unbind(state.banks->owner, ev.role, state.registry,
                                   unbind_params(state));
      holder = u.next_id;
    } else if (auto id = resolve_entity(state, ev.role)) {
      holder = *id;
    }
    if (holder < 0) continue;
    if (!is_actor(state, holder)) {
      // Drop: frozen at this location until the next item event.
      push(holder, ev.time);
      continue;
    }
    // Carried: start from the carrier's position at pickup time ...
    auto at_pickup =
        most_recent(state, vec(state, holder), ev.time, kTemporal);
    if (at_pickup) {
      UnbindResult u = pair_unbind(state.banks->temporal, at_pickup->role,
                                   state.registry, unbind_params(state));
      push(u.next_id, at_pickup->time);
    } else if (nowhere >= 0) {
      push(nowhere, ev.time);
    }
    // ... then follow the carrier's transitions inside this segment.
    for (const auto& mh :
         scan(state, vec(state, holder), seg_end, kTemporal)) {
      if (mh.time <= ev.time || mh.score < state.cfg->score_threshold)
        continue;
      UnbindResult u = pair_unbind(state.banks->temporal, mh.role,
                                   state.registry, unbind_params(state));
      push(u.next_id, mh.time);
    }
  }
  return traj;
}

Outcome before_by_trajectory(const StoryState& state, int item, int loc,
                             int t) {
  auto traj = item_trajectory(state, item, t);
  if (!traj || traj->points.empty()) return Outcome::fail("no-match");
  const auto& pts = traj->points;
  for (int k = static_cast<int>(pts.size()) - 1; k >= 1; --k) {
    if (pts[k].loc == loc) {
      std::vector<int> used = {traj->anchor, pts[k].entry, pts[k - 1].entry};
      return Outcome::of(
          AnswerValue::entity(state.registry.at(pts[k - 1].loc).label),
          finish_used(std::move(used)));
    }
  }
  return Outcome::fail("loc-not-on-trajectory");
}

Outcome before_by_stamps(const StoryState& state, int item, int loc, int t) {
  // (location o stamp) transitions, reordered by the fixed stamp order.
  struct Visit {
    int stamp_rank;
    int loc;
    int time;
  };
  std::vector<Visit> visits;
  for (const auto& h : scan(state, vec(state, item), t, kTemporal)) {
    if (h.score < state.cfg->score_threshold) continue;
    UnbindResult u = pair_unbind(state.banks->temporal, h.role, state.registry,
                                 unbind_params(state));
    const auto& stamp_ent = state.registry.at(u.prev_id);
    int rank = -1;
    if (stamp_ent.label == "yesterday") rank = 0;
    else if (stamp_ent.label == "morning") rank = 1;
    else if (stamp_ent.label == "afternoon") rank = 2;
    else if (stamp_ent.label == "evening") rank = 3;
    if (rank < 0) continue;
    visits.push_back({rank, u.next_id, h.time});
  }
  std::sort(visits.begin(), visits.end(),
            [](const Visit& a, const Visit& b) {
              return a.stamp_rank < b.stamp_rank;
            });
  for (int k = static_cast<int>(visits.size()) - 1; k >= 1; --k) {
    if (visits[k].loc == loc) {
      std::vector<int> used = {visits[k].time, visits[k - 1].time};
      return Outcome::of(
          AnswerValue::entity(state.registry.at(visits[k - 1].loc).label),
          finish_used(std::move(used)));
    }
  }
  return visits.empty() ? Outcome::fail("no-match")
                        : Outcome::fail("loc-not-on-trajectory");
}

}  // namespace

Outcome locate_before(const StoryState& state, int task_id, int item, int loc,
                      int t) {
  return task_id == 14 ? before_by_stamps(state, item, loc, t)
                       : before_by_trajectory(state, item, loc, t);
}

// ---- ownership --------------------------------------------------------------

std::vector<OwnerStep> ownership_trajectory(const StoryState& state, int object,
                                            int t) {
  std::vector<OwnerStep> steps;
  for (const auto& h : scan(state, vec(state, object), t, kOwner)) {
    if (h.score < state.cfg->score_threshold) continue;
    UnbindResult u = pair_unbind(state.banks->owner, h.role, state.registry,
                                 unbind_params(state));
    steps.push_back({h.time, u.prev_id, u.next_id});
  }
  return steps;
}

std::optional<std::pair<OwnerStep, int>> latest_transfer(
    const StoryState& state, const TransferQuery& q, int t) {
  std::optional<std::pair<OwnerStep, int>> best;
  for (const auto& e : state.registry.entries()) {
    if (e.alias || e.role != EntityRole::object) continue;
    if (q.obj && *q.obj != e.id) continue;
    for (const auto& step : ownership_trajectory(state, e.id, t)) {
      if (!is_actor(state, step.src) || !is_actor(state, step.dst)) continue;
      if (q.src && *q.src != step.src) continue;
      if (q.dst && *q.dst != step.dst) continue;
      if (!best || step.time > best->first.time) best = {{step}, e.id};
    }
  }
  return best;
}

// ---- yes/no/maybe -----------------------------------------------------------

Outcome yesno_location(const StoryState& state, int actor, int loc, int t) {
  auto hit = most_recent(state, vec(state, actor), t, kBasic | kEither);
  if (!hit) return Outcome::fail("no-match");
  std::vector<int> used = {hit->time};
  if (hit->slot->kind == kEither) {
    UnbindResult u = pair_unbind(state.banks->conj, hit->role, state.registry,
                                 unbind_params(state));
    int matches = (u.next_id == loc ? 1 : 0) + (u.prev_id == loc ? 1 : 0);
    AnswerValue::YNM v;
    if (u.next_id == u.prev_id)
      v = u.next_id == loc ? AnswerValue::YNM::yes : AnswerValue::YNM::no;
    else if (matches == 1)
      v = AnswerValue::YNM::maybe;
    else
      v = AnswerValue::YNM::no;
    return Outcome::of(AnswerValue::yesno(v), std::move(used));
  }
  auto id = resolve_entity(state, hit->role);
  if (!id) return Outcome::fail("no-match");
  return Outcome::of(AnswerValue::yesno(*id == loc ? AnswerValue::YNM::yes
                                                   : AnswerValue::YNM::no),
                     std::move(used));
}

// ---- holdings ---------------------------------------------------------------

HoldingsResult holdings(const StoryState& state, int actor, int t) {
  HoldingsResult out;
  for (const auto& e : state.registry.entries()) {
    if (e.alias || e.role != EntityRole::object) continue;
    int held_since = -1;
    int current_holder = -1;
    std::vector<int> events;
    for (const auto& h : scan(state, e.values, t, kBasic | kOwner)) {
      if (h.score < state.cfg->score_threshold) continue;
      int next = -1, prev = -1;
      if (h.slot->kind == kOwner) {
        UnbindResult u = pair_unbind(state.banks->owner, h.role,
                                     state.registry, unbind_params(state));
        next = u.next_id;
        prev = u.prev_id;
      } else {
        auto id = resolve_entity(state, h.role);
        if (!id) continue;
        next = *id;
        prev = current_holder;
      }
      if (next == actor || prev == actor) events.push_back(h.time);
      current_holder = is_actor(state, next) ? next : -1;
      held_since = current_holder == actor ? h.time : -1;
    }
    if (held_since >= 0) out.held.push_back({e.id, held_since});
    add_used(out.used, events);
  }
  std::sort(out.held.begin(), out.held.end(),
            [](const Holding& a, const Holding& b) {
              return a.acquired < b.acquired;
            });
  out.used = finish_used(std::move(out.used));
  return out;
}

// ---- deduction / induction --------------------------------------------------

Outcome deduce_afraid(const StoryState& state, int instance, int t) {
  const auto& inst = state.registry.at(instance);
  auto hit = most_recent(state, inst.values, t, kBasic);
  if (!hit) return Outcome::fail("no-match");
  auto id = resolve_entity(state, hit->role);
  if (!id) return Outcome::fail("no-match");
  std::vector<int> used = {hit->time};
  if (inst.alias) used.push_back(inst.first_time);  // the is-a statement
  return Outcome::of(AnswerValue::entity(state.registry.at(*id).label),
                     finish_used(std::move(used)));
}

Outcome induce_property(const StoryState& state, int instance, int t) {
  // Category of the instance: most recent is-a evidence (category instance^T).
  auto cat_hit =
      [&]() -> std::optional<ScanHit> {
    std::optional<ScanHit> best;
    for (const auto& h :
         scan_containers(state, vec(state, instance), t, kIsa))
      if (h.score >= state.cfg->score_threshold) best = h;
    return best;
  }();
  if (!cat_hit) return Outcome::fail("no-evidence");
  auto cat = resolve_entity(state, cat_hit->role);
  if (!cat) return Outcome::fail("no-evidence");

  // Most recent property evidence among the category's members:
  // (cat member^T) . (member prop^T) = cat prop^T.
  struct Evidence {
    int prop;
    int prop_time;
    int member_time;
  };
  std::optional<Evidence> best;
  for (const auto& mh : scan(state, vec(state, *cat), t, kIsa)) {
    if (mh.score < state.cfg->score_threshold) continue;
    auto member = resolve_entity(state, mh.role);
    if (!member) continue;
    for (const auto& ph : scan(state, vec(state, *member), t, kProp)) {
      if (ph.score < state.cfg->score_threshold) continue;
      auto prop = resolve_entity(state, ph.role);
      if (!prop) continue;
      if (!best || ph.time > best->prop_time)
        best = Evidence{*prop, ph.time, mh.time};
    }
  }
  if (!best) return Outcome::fail("no-evidence");
  std::vector<int> used = {cat_hit->time, best->member_time, best->prop_time};
  return Outcome::of(AnswerValue::entity(state.registry.at(best->prop).label),
                     finish_used(std::move(used)));
}

namespace {

// BFS over containment facts by repeated chaining; returns the statement
// times of the edges on the found chain.
std::optional<std::vector<int>> contains_chain(const StoryState& state,
                                               int from, int to, int t) {
  struct Crumb {
    int parent;
    int time;
  };
  std::map<int, Crumb> seen;
  std::vector<int> frontier = {from};
  seen[from] = {-1, 0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int cur : frontier) {
      for (const auto& h : scan(state, vec(state, cur), t, kContains)) {
        if (h.score < state.cfg->score_threshold) continue;
        auto id = resolve_entity(state, h.role);
        if (!id || seen.count(*id)) continue;
        seen[*id] = {cur, h.time};
        if (*id == to) {
          std::vector<int> times;
          for (int at = to; at != from; at = seen[at].parent)
            times.push_back(seen[at].time);
          return finish_used(std::move(times));
        }
        next.push_back(*id);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

Outcome reach_yesno(const StoryState& state, int containee, int container,
                    int t) {
  if (auto fwd = contains_chain(state, containee, container, t))
    return Outcome::of(AnswerValue::yesno(AnswerValue::YNM::yes), *fwd);
  if (auto rev = contains_chain(state, container, containee, t))
    return Outcome::of(AnswerValue::yesno(AnswerValue::YNM::no), *rev);
  return Outcome::fail("undecidable");
}

std::optional<EntityHit> dir_upper_of(const StoryState& state, int ref, int t) {
  auto hit = most_recent(state, vec(state, ref), t, kDir);
  if (!hit) return std::nullopt;
  auto id = resolve_entity(state, hit->role);
  if (!id) return std::nullopt;
  return EntityHit{*id, hit->time, {hit->time}};
}

std::optional<EntityHit> dir_lower_of(const StoryState& state, int ref, int t) {
  std::optional<EntityHit> best;
  for (const auto& h : scan_containers(state, vec(state, ref), t, kDir)) {
    if (h.score < state.cfg->score_threshold) continue;
    if (auto id = resolve_entity(state, h.role))
      best = EntityHit{*id, h.time, {h.time}};
  }
  return best;
}

// ---- motivations ------------------------------------------------------------

std::optional<EntityHit> motive_of(const StoryState& state, int actor, int t) {
  std::optional<EntityHit> best;
  for (const auto& h : scan_containers(state, vec(state, actor), t, kProp)) {
    if (h.score < state.cfg->score_threshold) continue;
    if (auto id = resolve_entity(state, h.role))
      best = EntityHit{*id, h.time, {h.time}};
  }
  return best;
}

void induce_rules(const StoryState& state, RuleMemory& out) {
  for (const auto& prop : state.slots) {
    if (prop.kind != kProp) continue;
    // Identify (motive, actor) from the rank-1 encoding.
    int motive = -1, actor = -1;
    double best = 0.0;
    for (const auto& e : state.registry.entries()) {
      if (e.alias) continue;
      ProbeResult p = probe(e.values, prop.enc);
      if (p.score > best && p.score >= state.cfg->score_threshold) {
        if (auto id = resolve_entity(state, p.role)) {
          best = p.score;
          motive = e.id;
          actor = *id;
        }
      }
    }
    if (motive < 0 || actor < 0 || !is_actor(state, actor)) continue;
    // Chain the motive through every action of that actor, over the whole
    // story: (m a^T) . (a target^T) = m target^T.
    for (const auto& act : state.slots) {
      if (act.kind != kBasic || act.time == prop.time) continue;
      Encoding rule = chain(prop.enc, act.enc);
      ProbeResult p = probe(vec(state, motive), rule);
      if (p.score < state.cfg->score_threshold) continue;
      auto target = resolve_entity(state, p.role);
      if (!target) continue;
      const auto& te = state.registry.at(*target);
      if (te.role == EntityRole::location)
        out.add_location(state.registry.at(motive).label, te.label);
      else if (te.role == EntityRole::object)
        out.add_object(state.registry.at(motive).label, te.label);
    }
  }
}

// ---- C19 / C17 constraint solving -------------------------------------------

namespace {

bool try_direction(StoryState& state, PendingConstraint& c) {
  const DirectionBank& bank = state.banks->dir;
  auto lhs = state.loc_table.find(c.lhs);
  auto rhs = state.loc_table.find(c.rhs);
  bool lk = lhs != state.loc_table.end();
  bool rk = rhs != state.loc_table.end();
  if (!lk && !rk) return false;
  if (lk && rk) {
    c.done = true;  // duplicate edge; first assignment wins
    return true;
  }
  if (rk)
    state.loc_table[c.lhs] = bank.of(dir_letter(c.dir)) * rhs->second;
  else
    state.loc_table[c.rhs] = bank.of(dir_letter(opposite(c.dir))) * lhs->second;
  c.done = true;
  return true;
}

bool try_positional(StoryState& state, PendingConstraint& c) {
  const PositionBank& bank = state.banks->pos;
  auto lhs = state.pos_table.find(c.lhs);
  auto rhs = state.pos_table.find(c.rhs);
  bool lk = lhs != state.pos_table.end();
  bool rk = rhs != state.pos_table.end();
  int block = static_cast<int>(c.pos);
  int opp_block = static_cast<int>(opposite(c.pos));
  if (!lk && !rk) return false;
  if (lk && rk) {
    // Both already placed: overwrite the lhs block along this relation.
    lhs->second[block] = bank.of(block) * rhs->second[block];
    c.done = true;
    return true;
  }
  if (rk) {
    PosBlocks b = rhs->second;
    b[block] = bank.of(block) * b[block];
    state.pos_table[c.lhs] = std::move(b);
  } else {
    PosBlocks b = lhs->second;
    b[opp_block] = bank.of(opp_block) * b[opp_block];
    state.pos_table[c.rhs] = std::move(b);
  }
  c.done = true;
  return true;
}

void seed_constraint_rhs(StoryState& state, PendingConstraint& c) {
  int d = state.cfg->d;
  if (c.positional) {
    if (!state.pos_table.count(c.rhs)) {
      PosBlocks b;
      for (auto& blk : b) blk = random_unit_vector(d, state.registry.rng());
      state.pos_table[c.rhs] = std::move(b);
    }
  } else {
    if (!state.loc_table.count(c.rhs))
      state.loc_table[c.rhs] = random_unit_vector(d, state.registry.rng());
  }
}

}  // namespace

void solve_constraints(StoryState& state) {
  for (;;) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto& c : state.deferred) {
        if (c.done) continue;
        progress |= c.positional ? try_positional(state, c)
                                 : try_direction(state, c);
      }
    }
    auto undone = std::find_if(state.deferred.begin(), state.deferred.end(),
                               [](const PendingConstraint& c) { return !c.done; });
    if (undone == state.deferred.end()) return;
    // Stalled sweep: start (or restart, for a disconnected component) by
    // seeding the earliest unresolved statement's right-hand side.
    seed_constraint_rhs(state, *undone);
  }
}

Outcome find_path(StoryState& state, int from, int to, int max_len) {
  solve_constraints(state);
  auto fi = state.loc_table.find(from);
  auto ti = state.loc_table.find(to);
  if (fi == state.loc_table.end() || ti == state.loc_table.end())
    return Outcome::fail("no-path-within-bound");
  const DirectionBank& bank = state.banks->dir;
  const Dir4 dirs[4] = {Dir4::n, Dir4::e, Dir4::s, Dir4::w};

  std::vector<Dir4> best_path;
  double best_res = std::numeric_limits<double>::max();
  std::vector<Dir4> seq;
  auto walk = [&](auto&& self, const Vector& v, int remaining) -> void {
    if (!seq.empty()) {
      double res = (v - ti->second).norm();
      if (res < best_res - 1e-12) {
        best_res = res;
        best_path = seq;
      }
    }
    if (remaining == 0) return;
    for (Dir4 d : dirs) {
      if (!seq.empty() && seq.back() == opposite(d)) continue;
      seq.push_back(d);
      self(self, bank.of(dir_letter(d)) * v, remaining - 1);
      seq.pop_back();
    }
  };
  walk(walk, fi->second, max_len);

  if (best_res > state.cfg->eps_path) return Outcome::fail("no-path-within-bound");

  // Replay along the stated edges to recover the supporting statements.
  std::vector<int> used;
  int cur = from;
  for (Dir4 step : best_path) {
    for (const auto& c : state.deferred) {
      if (c.positional) continue;
      if (c.rhs == cur && c.dir == step) {
        used.push_back(c.time);
        cur = c.lhs;
        break;
      }
      if (c.lhs == cur && c.dir == opposite(step)) {
        used.push_back(c.time);
        cur = c.rhs;
        break;
      }
    }
  }
  AnswerValue v;
  v.kind = AnswerValue::Kind::Path;
  v.path = best_path;
  return Outcome::of(std::move(v), finish_used(std::move(used)));
}

Outcome positional_query(StoryState& state, int a, PosDir dir, int b) {
  solve_constraints(state);
  auto ai = state.pos_table.find(a);
  auto bi = state.pos_table.find(b);
  if (ai == state.pos_table.end() || bi == state.pos_table.end())
    return Outcome::fail("no-match");
  const PositionBank& bank = state.banks->pos;
  int blk = static_cast<int>(dir);
  int opp = static_cast<int>(opposite(dir));
  double tol = state.cfg->block_tol;
  bool direct =
      (ai->second[blk] - bank.of(blk) * bi->second[blk]).norm() <= tol;
  bool mirrored =
      (bi->second[opp] - bank.of(opp) * ai->second[opp]).norm() <= tol;
  std::vector<int> used;
  for (const auto& c : state.deferred)
    if (c.positional && (c.lhs == a || c.rhs == a || c.lhs == b || c.rhs == b))
      used.push_back(c.time);
  return Outcome::of(AnswerValue::yesno((direct || mirrored)
                                            ? AnswerValue::YNM::yes
                                            : AnswerValue::YNM::no),
                     finish_used(std::move(used)));
}

}  // namespace tpr
