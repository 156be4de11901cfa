#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tpr/memory.hpp"

using namespace tpr;

namespace {

struct Fixture {
  Config cfg;
  Banks banks;
  StoryState state;

  Fixture() : banks(Banks::make(make_cfg())), state(banks, cfg, 99) {}

  Config make_cfg() {
    cfg.d = 64;
    cfg.seed = 42;
    return cfg;
  }

  const EntityVector& ent(const std::string& label,
                          EntityRole role = EntityRole::actor) {
    return state.registry.sample(label, role, 0);
  }
  void put(int time, SlotKind kind, const EntityVector& f,
           const EntityVector& r) {
    Slot s;
    s.time = time;
    s.kind = kind;
    s.enc = bind(f, r);
    append_slot(state, std::move(s));
  }
};

}  // namespace

TEST_CASE("append is strictly time ordered") {
  Fixture fx;
  const auto& m = fx.ent("mary");
  const auto& k = fx.ent("kitchen", EntityRole::location);
  fx.put(1, kBasic, m, k);
  fx.put(3, kBasic, m, k);
  CHECK(fx.state.slots.size() == 2);
  Slot bad;
  bad.time = 2;
  bad.kind = kBasic;
  bad.enc = bind(m, k);
  CHECK_THROWS_WITH_AS(append_slot(fx.state, std::move(bad)),
                       doctest::Contains("out-of-order"), std::runtime_error);
}

TEST_CASE("scan probes only matching kinds before the horizon") {
  // The five encodings of the worked two-supporting-facts story:
  // m->kitchen(1), f->m(3), m->garden(4), f->garden(9), m->kitchen(10).
  Fixture fx;
  const auto& m = fx.ent("mary");
  const auto& k = fx.ent("kitchen", EntityRole::location);
  const auto& f = fx.ent("football", EntityRole::object);
  const auto& g = fx.ent("garden", EntityRole::location);
  fx.put(1, kBasic, m, k);
  fx.put(3, kBasic, f, m);
  fx.put(4, kBasic, m, g);
  fx.put(9, kBasic, f, g);
  fx.put(10, kBasic, m, k);

  auto hits = scan(fx.state, f.values, 5, kBasic);
  REQUIRE(hits.size() == 3);
  int strong = 0;
  for (const auto& h : hits) {
    if (h.score > 0.5) {
      ++strong;
      CHECK(h.time == 3);
      CHECK(h.score == doctest::Approx(1.0).epsilon(1e-9));
    } else {
      CHECK(h.score < 1e-9);  // exact mode: scores are 0 or 1
    }
  }
  CHECK(strong == 1);

  CHECK(scan(fx.state, f.values, 5, kTemporal).empty());
  StoryState empty(fx.banks, fx.cfg, 1);
  CHECK(scan(empty, f.values, 5, kAnyKind).empty());
}

TEST_CASE("most_recent and earliest pick by time among strong matches") {
  Fixture fx;
  const auto& a = fx.ent("apple", EntityRole::object);
  const auto& d = fx.ent("daniel");
  const auto& s = fx.ent("sandra");
  const auto& h = fx.ent("hallway", EntityRole::location);
  fx.put(1, kBasic, s, h);
  fx.put(2, kBasic, a, d);
  fx.put(6, kBasic, d, h);

  auto early = earliest(fx.state, a.values, 7, kBasic);
  REQUIRE(early.has_value());
  CHECK(early->time == 2);

  auto recent = most_recent(fx.state, d.values, 7, kBasic);
  REQUIRE(recent.has_value());
  CHECK(recent->time == 6);

  const auto& ghost = fx.ent("ghost");
  CHECK_FALSE(most_recent(fx.state, ghost.values, 7, kBasic).has_value());
}

TEST_CASE("scan is a pure read") {
  Fixture fx;
  const auto& m = fx.ent("mary");
  const auto& k = fx.ent("kitchen", EntityRole::location);
  fx.put(1, kBasic, m, k);
  auto a = scan(fx.state, m.values, 5, kAnyKind);
  auto b = scan(fx.state, m.values, 5, kAnyKind);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].time == b[i].time);
    CHECK(a[i].score == b[i].score);
  }
  CHECK(fx.state.slots.size() == 1);
}
