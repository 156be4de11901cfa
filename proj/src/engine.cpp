#include "tpr/engine.hpp"

#include <algorithm>

namespace tpr {

namespace {

bool owner_pair_task(int task) { return task == 5 || task == 7; }

// Stamp entities are registered per story so C14 transitions can bind
// (location o stamp) instead of (location o previous).
const char* kStampLabels[4] = {"yesterday", "morning", "afternoon", "evening"};

}  // namespace

Engine::Engine(const Banks& banks, const Config& cfg, RuleMemory* rules)
    : banks_(&banks), cfg_(&cfg), rules_(rules) {}

void Engine::begin_story(int task_id, std::uint64_t story_seed) {
  task_id_ = task_id;
  local_rules_ready_ = false;
  state_ = std::make_unique<StoryState>(*banks_, *cfg_, story_seed);
  state_->rules = rules_;
  state_->registry.sample("nowhere", EntityRole::reserved, 0);
  state_->registry.sample("nobody", EntityRole::reserved, 0);
  if (task_id == 14)
    for (const char* s : kStampLabels)
      state_->registry.sample(s, EntityRole::stamp, 0);
}

const EntityVector& Engine::ent(const std::string& label, EntityRole role,
                                int time) {
  return state_->registry.sample(label, role, time);
}

Vector Engine::unit_pair(const PairBinder& b, const Vector& next,
                         const Vector& prev) {
  Vector v = pair_bind(b, next, prev);
  double n = v.norm();
  if (n < 1e-9) throw std::runtime_error("engine: degenerate pair binding");
  // Unit role vectors keep exact-mode probe scores exactly 0 or 1.
  return v / n;
}

void Engine::push(int time, SlotKind kind, Encoding enc,
                  std::vector<int> sources) {
  Slot s;
  s.time = time;
  s.kind = kind;
  s.enc = std::move(enc);
  s.sources = std::move(sources);
  append_slot(*state_, std::move(s));
}

int Engine::current_location(int actor, int before, std::vector<int>* used) {
  if (auto hit = locate_actor(*state_, actor, before)) {
    if (used) used->insert(used->end(), hit->used.begin(), hit->used.end());
    return hit->id;
  }
  return state_->registry.find("nowhere")->id;
}

int Engine::current_owner(int object, int before) {
  auto steps = ownership_trajectory(*state_, object, before);
  if (!steps.empty()) {
    int last = steps.back().dst;
    if (state_->registry.at(last).role == EntityRole::actor) return last;
  }
  return state_->registry.find("nobody")->id;
}

void Engine::add_statement(int time, const LogicalForm& lf) {
  local_rules_ready_ = false;
  StoryState& st = *state_;
  switch (lf.kind) {
    case StatementKind::Move: {
      const auto& loc = ent(lf.to, EntityRole::location, time);
      if (lf.actors.size() >= 2) {
        const auto& a1 = ent(lf.actors[0], EntityRole::actor, time);
        const auto& a2 = ent(lf.actors[1], EntityRole::actor, time);
        Vector group = unit_pair(banks_->conj, a1.values, a2.values);
        push(time, kGroup, bind(group, loc.values));
        return;
      }
      const auto& actor = ent(lf.actors[0], EntityRole::actor, time);
      if (task_id_ == 10) {
        // All C10 location statements are conjunction-encoded, definite
        // moves included (k x k).
        Vector pair = unit_pair(banks_->conj, loc.values, loc.values);
        push(time, kEither, bind(actor.values, pair));
        return;
      }
      if (task_id_ == 20) {
        push(time, kBasic, bind(actor.values, loc.values));
        return;
      }
      int prev = current_location(actor.id, time, nullptr);
      push(time, kBasic, bind(actor.values, loc.values));
      Vector trans =
          unit_pair(banks_->temporal, loc.values, st.registry.at(prev).values);
      push(time, kTemporal, bind(actor.values, trans), {time});
      return;
    }
    case StatementKind::MoveTimed: {
      const auto& actor = ent(lf.actors[0], EntityRole::actor, time);
      const auto& loc = ent(lf.to, EntityRole::location, time);
      const auto& stamp = st.registry.sample(
          kStampLabels[static_cast<int>(lf.stamp)], EntityRole::stamp, time);
      Vector trans = unit_pair(banks_->temporal, loc.values, stamp.values);
      push(time, kTemporal, bind(actor.values, trans));
      return;
    }
    case StatementKind::MoveEither: {
      const auto& actor = ent(lf.actors[0], EntityRole::actor, time);
      const auto& la = ent(lf.to, EntityRole::location, time);
      const auto& lb = ent(lf.alt, EntityRole::location, time);
      Vector pair = unit_pair(banks_->conj, la.values, lb.values);
      push(time, kEither, bind(actor.values, pair));
      return;
    }
    case StatementKind::Negation: {
      const auto& actor = ent(lf.actor, EntityRole::actor, time);
      ent(lf.loc, EntityRole::location, time);  // keep the location known
      const auto& nowhere = *st.registry.find("nowhere");
      if (task_id_ == 10) {
        Vector pair = unit_pair(banks_->conj, nowhere.values, nowhere.values);
        push(time, kEither, bind(actor.values, pair));
      } else {
        push(time, kBasic, bind(actor.values, nowhere.values));
      }
      return;
    }
    case StatementKind::Affirm: {
      const auto& actor = ent(lf.actor, EntityRole::actor, time);
      const auto& loc = ent(lf.loc, EntityRole::location, time);
      if (task_id_ == 10) {
        Vector pair = unit_pair(banks_->conj, loc.values, loc.values);
        push(time, kEither, bind(actor.values, pair));
      } else {
        push(time, kBasic, bind(actor.values, loc.values));
      }
      return;
    }
    case StatementKind::Grab: {
      const auto& actor = ent(lf.actor, EntityRole::actor, time);
      const auto& obj = ent(lf.item, EntityRole::object, time);
      if (task_id_ == 20) {
        push(time, kBasic, bind(actor.values, obj.values));
      } else if (owner_pair_task(task_id_)) {
        int prev = current_owner(obj.id, time);
        Vector pair = unit_pair(banks_->owner, actor.values,
                                st.registry.at(prev).values);
        push(time, kOwner, bind(obj.values, pair));
      } else {
        push(time, kBasic, bind(obj.values, actor.values));
      }
      return;
    }
    case StatementKind::Drop: {
      const auto& actor = ent(lf.actor, EntityRole::actor, time);
      const auto& obj = ent(lf.item, EntityRole::object, time);
      if (owner_pair_task(task_id_)) {
        int prev = current_owner(obj.id, time);
        const auto& nobody = *st.registry.find("nobody");
        Vector pair =
            unit_pair(banks_->owner, nobody.values, st.registry.at(prev).values);
        push(time, kOwner, bind(obj.values, pair));
        return;
      }
      // Eager inference: resolve the drop location now, exactly as the
      // transitivity chain (f m^T) . (m g^T) would.
      std::vector<int> sources = {time};
      int loc = current_location(actor.id, time, &sources);
      push(time, kBasic, bind(obj.values, st.registry.at(loc).values),
           std::move(sources));
      return;
    }
    case StatementKind::Give: {
      const auto& giver = ent(lf.actor, EntityRole::actor, time);
      const auto& obj = ent(lf.item, EntityRole::object, time);
      const auto& receiver = ent(lf.recipient, EntityRole::actor, time);
      Vector pair = unit_pair(banks_->owner, receiver.values, giver.values);
      push(time, kOwner, bind(obj.values, pair));
      return;
    }
    case StatementKind::IsA: {
      if (task_id_ == 16) {
        const auto& inst = ent(lf.lhs, EntityRole::actor, time);
        const auto& cat = ent(lf.rhs, EntityRole::category, time);
        push(time, kIsa, bind(cat.values, inst.values));
      } else {
        // C15: the instance vector *is* the category vector.
        ent(lf.rhs, EntityRole::category, time);
        state_->registry.set_alias(lf.lhs, lf.rhs, time);
      }
      return;
    }
    case StatementKind::HasProp: {
      const auto& subject = ent(lf.lhs, EntityRole::actor, time);
      const auto& prop = ent(lf.rhs, EntityRole::property, time);
      push(time, kProp, bind(subject.values, prop.values));
      return;
    }
    case StatementKind::AfraidOf: {
      const auto& a = ent(lf.lhs, EntityRole::category, time);
      const auto& b = ent(lf.rhs, EntityRole::category, time);
      push(time, kBasic, bind(a.values, b.values));
      return;
    }
    case StatementKind::Contains: {
      const auto& inner = ent(lf.lhs, EntityRole::object, time);
      const auto& outer = ent(lf.rhs, EntityRole::object, time);
      push(time, kContains, bind(inner.values, outer.values));
      return;
    }
    case StatementKind::DirRel: {
      const auto& a = ent(lf.lhs, EntityRole::location, time);
      const auto& b = ent(lf.rhs, EntityRole::location, time);
      if (task_id_ == 19) {
        PendingConstraint c;
        c.time = time;
        c.positional = false;
        c.lhs = a.id;
        c.rhs = b.id;
        c.dir = lf.dir;
        st.deferred.push_back(c);
        return;
      }
      // C4: normalize onto the north/east pole: edges bind the south/west
      // item to the north/east item.
      if (lf.dir == Dir4::n || lf.dir == Dir4::e)
        push(time, kDir, bind(b.values, a.values));
      else
        push(time, kDir, bind(a.values, b.values));
      return;
    }
    case StatementKind::PosRel: {
      const auto& a = ent(lf.lhs, EntityRole::object, time);
      const auto& b = ent(lf.rhs, EntityRole::object, time);
      PendingConstraint c;
      c.time = time;
      c.positional = true;
      c.lhs = a.id;
      c.rhs = b.id;
      c.pos = lf.pos;
      st.deferred.push_back(c);
      return;
    }
    case StatementKind::Motivation: {
      const auto& actor = ent(lf.actor, EntityRole::actor, time);
      const auto& motive = ent(lf.rhs, EntityRole::property, time);
      push(time, kProp, bind(motive.values, actor.values));
      return;
    }
  }
  throw std::runtime_error("engine: unhandled statement kind");
}

Outcome Engine::answer(int time, const QuestionForm& q) {
  try {
    return answer_impl(time, q);
  } catch (const std::exception& e) {
    return Outcome::fail(e.what());
  }
}

Outcome Engine::answer_impl(int time, const QuestionForm& q) {
  StoryState& st = *state_;
  auto lookup = [&](const std::string& label) -> const EntityVector* {
    return st.registry.find(label);
  };

  switch (q.kind) {
    case QuestionKind::WhereActor: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      auto hit = locate_actor(st, a->id, time);
      if (!hit) return Outcome::fail("no-match");
      return Outcome::of(AnswerValue::entity(st.registry.at(hit->id).label),
                         hit->used);
    }
    case QuestionKind::WhereObject: {
      const auto* o = lookup(q.a);
      if (!o) return Outcome::fail("no-match: unknown object " + q.a);
      auto hit = locate_object(st, o->id, time);
      if (!hit) return Outcome::fail("no-match");
      std::sort(hit->used.begin(), hit->used.end());
      hit->used.erase(std::unique(hit->used.begin(), hit->used.end()),
                      hit->used.end());
      return Outcome::of(AnswerValue::entity(st.registry.at(hit->id).label),
                         hit->used);
    }
    case QuestionKind::WhereBefore: {
      const auto* item = lookup(q.a);
      const auto* loc = lookup(q.b);
      if (!item || !loc) return Outcome::fail("no-match: unknown entity");
      return locate_before(st, task_id_, item->id, loc->id, time);
    }
    case QuestionKind::WhoGaveTo: {
      const auto* g = lookup(q.a);
      const auto* o = lookup(q.b);
      if (!g || !o) return Outcome::fail("no-match: unknown entity");
      TransferQuery tq;
      tq.src = g->id;
      tq.obj = o->id;
      auto tr = latest_transfer(st, tq, time);
      if (!tr) return Outcome::fail("no-match");
      return Outcome::of(
          AnswerValue::entity(st.registry.at(tr->first.dst).label),
          {tr->first.time});
    }
    case QuestionKind::WhoGave: {
      const auto* o = lookup(q.a);
      const auto* r = lookup(q.b);
      if (!o || !r) return Outcome::fail("no-match: unknown entity");
      TransferQuery tq;
      tq.obj = o->id;
      tq.dst = r->id;
      auto tr = latest_transfer(st, tq, time);
      if (!tr) return Outcome::fail("no-match");
      return Outcome::of(
          AnswerValue::entity(st.registry.at(tr->first.src).label),
          {tr->first.time});
    }
    case QuestionKind::WhoReceived: {
      const auto* o = lookup(q.a);
      if (!o) return Outcome::fail("no-match: unknown entity");
      TransferQuery tq;
      tq.obj = o->id;
      auto tr = latest_transfer(st, tq, time);
      if (!tr) return Outcome::fail("no-match");
      return Outcome::of(
          AnswerValue::entity(st.registry.at(tr->first.dst).label),
          {tr->first.time});
    }
    case QuestionKind::WhatGiven: {
      const auto* g = lookup(q.a);
      const auto* r = lookup(q.b);
      if (!g || !r) return Outcome::fail("no-match: unknown entity");
      TransferQuery tq;
      tq.src = g->id;
      tq.dst = r->id;
      auto tr = latest_transfer(st, tq, time);
      if (!tr) return Outcome::fail("no-match");
      return Outcome::of(AnswerValue::entity(st.registry.at(tr->second).label),
                         {tr->first.time});
    }
    case QuestionKind::IsIn: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      // The queried location may never occur in the statements; a fresh
      // vector is orthogonal to all evidence and compares unequal.
      const auto& l = st.registry.sample(q.b, EntityRole::location, time);
      return yesno_location(st, a->id, l.id, time);
    }
    case QuestionKind::HowMany: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      HoldingsResult h = holdings(st, a->id, time);
      AnswerValue v;
      v.kind = AnswerValue::Kind::Count;
      v.count = static_cast<int>(h.held.size());
      return Outcome::of(std::move(v), h.used);
    }
    case QuestionKind::WhatCarrying: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      HoldingsResult h = holdings(st, a->id, time);
      AnswerValue v;
      v.kind = AnswerValue::Kind::EntityList;
      for (const auto& held : h.held)
        v.labels.push_back(st.registry.at(held.object).label);
      return Outcome::of(std::move(v), h.used);
    }
    case QuestionKind::WhatAfraid: {
      const auto* x = lookup(q.a);
      if (!x) return Outcome::fail("no-match: unknown entity " + q.a);
      return deduce_afraid(st, x->id, time);
    }
    case QuestionKind::WhatColor: {
      const auto* x = lookup(q.a);
      if (!x) return Outcome::fail("no-match: unknown entity " + q.a);
      return induce_property(st, x->id, time);
    }
    case QuestionKind::ContainsQ: {
      const auto* c = lookup(q.a);
      const auto* o = lookup(q.b);
      if (!c || !o) return Outcome::fail("no-match: unknown entity");
      return reach_yesno(st, c->id, o->id, time);
    }
    case QuestionKind::WhatDirOf: {
      const auto* ref = lookup(q.a);
      if (!ref) return Outcome::fail("no-match: unknown entity " + q.a);
      auto hit = (q.dir == Dir4::n || q.dir == Dir4::e)
                     ? dir_upper_of(st, ref->id, time)
                     : dir_lower_of(st, ref->id, time);
      if (!hit) return Outcome::fail("no-match");
      return Outcome::of(AnswerValue::entity(st.registry.at(hit->id).label),
                         hit->used);
    }
    case QuestionKind::WhatDirRev: {
      const auto* x = lookup(q.a);
      if (!x) return Outcome::fail("no-match: unknown entity " + q.a);
      auto hit = (q.dir == Dir4::n || q.dir == Dir4::e)
                     ? dir_lower_of(st, x->id, time)
                     : dir_upper_of(st, x->id, time);
      if (!hit) return Outcome::fail("no-match");
      return Outcome::of(AnswerValue::entity(st.registry.at(hit->id).label),
                         hit->used);
    }
    case QuestionKind::WhereWillGo: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      auto m = motive_of(st, a->id, time);
      if (!m) return Outcome::fail("no-rule: actor has no motive");
      if (!local_rules_ready_) {
        st.local_rules = RuleMemory{};
        induce_rules(st, st.local_rules);
        local_rules_ready_ = true;
      }
      const std::string& motive = st.registry.at(m->id).label;
      auto it = st.local_rules.motive_to_location.find(motive);
      if (it == st.local_rules.motive_to_location.end() && st.rules) {
        it = st.rules->motive_to_location.find(motive);
        if (it == st.rules->motive_to_location.end())
          return Outcome::fail("no-rule: " + motive);
      } else if (it == st.local_rules.motive_to_location.end()) {
        return Outcome::fail("no-rule: " + motive);
      }
      return Outcome::of(AnswerValue::entity(it->second), m->used);
    }
    case QuestionKind::WhyAction: {
      const auto* a = lookup(q.a);
      if (!a) return Outcome::fail("no-match: unknown actor " + q.a);
      auto m = motive_of(st, a->id, time);
      if (!m) return Outcome::fail("no-rule: actor has no motive");
      return Outcome::of(
          AnswerValue::motivation(st.registry.at(m->id).label), m->used);
    }
    case QuestionKind::PathQ: {
      const auto* f = lookup(q.a);
      const auto* to = lookup(q.b);
      if (!f || !to) return Outcome::fail("no-match: unknown location");
      return find_path(st, f->id, to->id, cfg_->max_path_len);
    }
    case QuestionKind::PosQ: {
      const auto* a = lookup(q.a);
      const auto* b = lookup(q.b);
      if (!a || !b) return Outcome::fail("no-match: unknown object");
      return positional_query(st, a->id, q.pos, b->id);
    }
  }
  return Outcome::fail("unhandled question kind");
}

}  // namespace tpr
