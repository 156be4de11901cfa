#include "tpr/generator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tpr/rng.hpp"

namespace tpr {

namespace {

const char* kActors[] = {"mary", "john", "daniel", "sandra"};
const char* kActors5[] = {"jeff", "bill", "fred", "daniel", "mary"};
const char* kActors10[] = {"julie", "bill", "fred", "mary"};
const char* kActors20[] = {"sumit", "yann", "jason", "antoine"};
const char* kLocations[] = {"bathroom", "hallway", "kitchen",
                            "garden",   "office",  "bedroom"};
const char* kLocations10[] = {"school", "office", "park",
                              "bedroom", "kitchen", "cinema"};
const char* kObjects[] = {"football", "apple", "milk"};
const char* kMoveVerbs[] = {"moved", "went", "journeyed", "travelled"};
const char* kGrabVerbs[] = {"got", "took", "grabbed", "picked up"};
const char* kDropVerbs[] = {"dropped", "discarded", "put down", "left"};
const char* kGiveVerbs[] = {"gave", "handed", "passed"};

bool is_she(const std::string& actor) {
  return actor == "mary" || actor == "sandra" || actor == "julie" ||
         actor == "jessica" || actor == "emily" || actor == "winona" ||
         actor == "gertrude" || actor == "lily";
}

std::string cap(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  return s;
}

// Surface form of a multiword registry key ("pink_rectangle" -> "pink rectangle").
std::string surface(const std::string& key) {
  std::string out = key;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

struct StoryBuilder {
  Story story;
  Rng rng;
  int time = 1;

  explicit StoryBuilder(int task, std::uint64_t seed) : rng(seed) {
    story.task_id = task;
  }

  void reset() {
    int task = story.task_id;
    story = Story{};
    story.task_id = task;
    time = 1;
  }

  int stmt(const std::string& text) {
    story.lines.push_back({time, cap(text) + ".", false, "", {}});
    return time++;
  }
  void ask(const std::string& text, const std::string& answer,
           std::vector<int> clues) {
    story.lines.push_back({time++, cap(text) + "?", true, answer,
                           std::move(clues)});
  }

  template <typename T, size_t N>
  T pick(T (&pool)[N]) {
    return pool[rng.uniform_int(0, static_cast<int>(N) - 1)];
  }
  template <typename T>
  T pick(const std::vector<T>& pool) {
    return pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
  }
  // n distinct draws from pool
  std::vector<std::string> draw(const std::vector<std::string>& pool, int n) {
    std::vector<std::string> p = pool, out;
    for (int i = 0; i < n; ++i) {
      int k = rng.uniform_int(0, static_cast<int>(p.size()) - 1);
      out.push_back(p[k]);
      p.erase(p.begin() + k);
    }
    return out;
  }

  std::string move_line(const std::string& actor, const std::string& loc) {
    std::string verb = pick(kMoveVerbs);
    std::string back = (verb != "moved" && rng.uniform() < 0.3) ? " back" : "";
    return cap(actor) + " " + verb + back + " to the " + loc;
  }
  std::string grab_line(const std::string& actor, const std::string& obj) {
    std::string there = rng.uniform() < 0.5 ? " there" : "";
    return cap(actor) + " " + std::string(pick(kGrabVerbs)) + " the " + obj +
           there;
  }
  std::string drop_line(const std::string& actor, const std::string& obj) {
    return cap(actor) + " " + std::string(pick(kDropVerbs)) + " the " + obj;
  }
};

std::vector<std::string> to_vec(const char* const* arr, size_t n) {
  return std::vector<std::string>(arr, arr + n);
}

// ---- categories 1, 11, 12, 13: actor movement -------------------------------

Story gen_c1(StoryBuilder& b) {
  std::map<std::string, std::pair<std::string, int>> at;  // actor -> loc, time
  auto actors = to_vec(kActors, 4);
  auto locs = to_vec(kLocations, 6);
  int rounds = b.rng.uniform_int(2, 4);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      std::string a = b.pick(actors);
      std::string l = b.pick(locs);
      while (at.count(a) && at[a].first == l) l = b.pick(locs);
      int t = b.stmt(b.move_line(a, l));
      at[a] = {l, t};
    }
    std::vector<std::string> moved;
    for (auto& [a, v] : at) moved.push_back(a);
    std::string who = b.pick(moved);
    b.ask("Where is " + cap(who), at[who].first, {at[who].second});
  }
  return b.story;
}

Story gen_c11(StoryBuilder& b, bool compound) {
  auto actors = to_vec(kActors, 4);
  auto locs = to_vec(kLocations, 6);
  const char* connectives[] = {"Afterwards", "Then", "After that",
                               "Following that"};
  int rounds = b.rng.uniform_int(2, 3);
  for (int r = 0; r < rounds; ++r) {
    std::string l1 = b.pick(locs), l2 = b.pick(locs);
    while (l2 == l1) l2 = b.pick(locs);
    if (compound) {
      auto pair = b.draw(actors, 2);
      int t1 = b.stmt(cap(pair[0]) + " and " + pair[1] + " " +
                      std::string(b.pick(kMoveVerbs)) + " to the " + l1);
      int t2 = b.stmt(std::string(b.pick(connectives)) + " they " +
                      std::string(b.pick(kMoveVerbs)) + " to the " + l2);
      b.ask("Where is " + cap(b.pick(pair)), l2, {t1, t2});
    } else {
      std::string a = b.pick(actors);
      int t1 = b.stmt(b.move_line(a, l1));
      std::string pron = is_she(a) ? "she" : "he";
      int t2 = b.stmt(std::string(b.pick(connectives)) + " " + pron + " " +
                      std::string(b.pick(kMoveVerbs)) + " to the " + l2);
      b.ask("Where is " + cap(a), l2, {t1, t2});
    }
  }
  return b.story;
}

Story gen_c12(StoryBuilder& b) {
  auto actors = to_vec(kActors, 4);
  auto locs = to_vec(kLocations, 6);
  std::map<std::string, std::pair<std::string, int>> at;
  int rounds = b.rng.uniform_int(2, 3);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      auto pair = b.draw(actors, 2);
      std::string l = b.pick(locs);
      int t = b.stmt(cap(pair[0]) + " and " + pair[1] + " " +
                     std::string(b.pick(kMoveVerbs)) + " to the " + l);
      at[pair[0]] = {l, t};
      at[pair[1]] = {l, t};
    }
    std::vector<std::string> moved;
    for (auto& [a, v] : at) moved.push_back(a);
    std::string who = b.pick(moved);
    b.ask("Where is " + cap(who), at[who].first, {at[who].second});
  }
  return b.story;
}

// ---- categories 2, 6, 8: movement plus objects -------------------------------

struct ObjectWorld {
  struct Obj {
    std::string holder;   // empty if loose
    int grab_time = -1;
    std::string loc;      // set when dropped
    int drop_time = -1;
    int loc_support = -1;  // the move that established the drop location
    std::vector<int> events;  // per-actor relevance filled externally
  };
  std::map<std::string, std::pair<std::string, int>> at;  // actor -> (loc, t)
  std::map<std::string, Obj> objs;
  // gain/loss events per (object) with holder context for C8 clue lists
  std::map<std::string, std::vector<std::pair<int, std::string>>> touch;

  bool answerable(const std::string& o) const {
    auto& ob = objs.at(o);
    if (!ob.holder.empty()) return at.count(ob.holder) > 0;
    return !ob.loc.empty();
  }
  std::string answer(const std::string& o) const {
    auto& ob = objs.at(o);
    return ob.holder.empty() ? ob.loc : at.at(ob.holder).first;
  }
  std::vector<int> clues(const std::string& o) const {
    auto& ob = objs.at(o);
    if (!ob.holder.empty()) return {ob.grab_time, at.at(ob.holder).second};
    return {ob.drop_time, ob.loc_support};
  }
};

Story gen_c2_family(StoryBuilder& b, int task) {
  auto actors = b.draw(to_vec(kActors, 4), 3);
  auto locs = to_vec(kLocations, 6);
  auto objects = b.draw(to_vec(kObjects, 3), 2);
  ObjectWorld w;
  for (const auto& o : objects) w.objs[o] = {};

  // Parameters by value: callers pass views into the world maps they mutate.
  auto do_move = [&](std::string a) {
    std::string l = b.pick(locs);
    while (w.at.count(a) && w.at[a].first == l) l = b.pick(locs);
    int t = b.stmt(b.move_line(a, l));
    w.at[a] = {l, t};
  };
  auto do_grab = [&](std::string a, std::string o) {
    int t = b.stmt(b.grab_line(a, o));
    auto& ob = w.objs[o];
    ob.holder = a;
    ob.grab_time = t;
    ob.loc.clear();
    w.touch[o].push_back({t, a});
  };
  auto do_drop = [&](std::string a, std::string o) {
    int t = b.stmt(b.drop_line(a, o));
    auto& ob = w.objs[o];
    ob.loc = w.at[a].first;
    ob.loc_support = w.at[a].second;
    ob.drop_time = t;
    ob.holder.clear();
    w.touch[o].push_back({t, a});
  };

  // Opening: a located actor acquires the first object.
  do_move(actors[0]);
  do_move(actors[1]);
  do_grab(actors[0], objects[0]);

  int rounds = b.rng.uniform_int(2, 4);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      double roll = b.rng.uniform();
      std::string a = b.pick(actors);
      if (roll < 0.45) {
        do_move(a);
      } else if (roll < 0.7) {
        // grab a loose object
        std::vector<std::string> loose;
        for (auto& [o, ob] : w.objs)
          if (ob.holder.empty()) loose.push_back(o);
        if (!loose.empty() && w.at.count(a))
          do_grab(a, b.pick(loose));
        else
          do_move(a);
      } else {
        std::vector<std::string> held;
        for (auto& [o, ob] : w.objs)
          if (!ob.holder.empty() && w.at.count(ob.holder)) held.push_back(o);
        if (!held.empty()) {
          std::string o = b.pick(held);
          do_drop(w.objs[o].holder, o);
        } else {
          do_move(a);
        }
      }
    }
    if (task == 2) {
      std::vector<std::string> ok;
      for (const auto& o : objects)
        if (w.answerable(o)) ok.push_back(o);
      if (ok.empty()) continue;
      std::string o = b.pick(ok);
      b.ask("Where is the " + o, w.answer(o), w.clues(o));
    } else if (task == 6) {
      std::vector<std::string> located;
      for (auto& [a, v] : w.at) located.push_back(a);
      std::string a = b.pick(located);
      if (b.rng.uniform() < 0.5) {
        b.ask("Is " + cap(a) + " in the " + w.at[a].first, "yes",
              {w.at[a].second});
      } else {
        std::string l = b.pick(locs);
        while (l == w.at[a].first) l = b.pick(locs);
        b.ask("Is " + cap(a) + " in the " + l, "no", {w.at[a].second});
      }
    } else {  // task 8: what is X carrying
      std::string a = b.pick(actors);
      std::vector<std::pair<int, std::string>> held;  // (grab time, obj)
      for (auto& [o, ob] : w.objs)
        if (ob.holder == a) held.push_back({ob.grab_time, o});
      std::sort(held.begin(), held.end());
      std::string ans;
      for (auto& [t, o] : held) {
        if (!ans.empty()) ans += ",";
        ans += o;
      }
      if (ans.empty()) ans = "nothing";
      std::vector<int> clues;
      for (auto& [o, ev] : w.touch)
        for (auto& [t, who] : ev)
          if (who == a) clues.push_back(t);
      std::sort(clues.begin(), clues.end());
      if (clues.empty()) continue;  // never asked about untouched actors
      b.ask("What is " + cap(a) + " carrying", ans, clues);
    }
  }
  return b.story;
}

// ---- category 3: trajectories -----------------------------------------------

Story gen_c3(StoryBuilder& b) {
  for (;;) {
    b.reset();
    auto actors = b.draw(to_vec(kActors, 4), 3);
    auto locs = to_vec(kLocations, 6);
    std::string obj = b.pick(to_vec(kObjects, 3));

    struct Point {
      std::string loc;
      int entry;
    };
    std::map<std::string, std::pair<std::string, int>> at;
    std::vector<Point> traj;  // the object's location history
    std::string holder;
    int anchor = -1;  // last grab/drop event time

    auto push = [&](const std::string& l, int t) {
      if (traj.empty() || traj.back().loc != l) traj.push_back({l, t});
    };
    auto do_move = [&](const std::string& a) {
      std::string l = b.pick(locs);
      while (at.count(a) && at[a].first == l) l = b.pick(locs);
      int t = b.stmt(b.move_line(a, l));
      at[a] = {l, t};
      if (holder == a) push(l, t);
    };

    std::string carrier = actors[0];
    // Sometimes the carrier is already located when it picks the item up.
    if (b.rng.uniform() < 0.5) do_move(carrier);
    anchor = b.stmt(b.grab_line(carrier, obj));
    holder = carrier;
    if (at.count(carrier))
      push(at[carrier].first, at[carrier].second);
    else
      push("nowhere", anchor);

    int steps = b.rng.uniform_int(4, 7);
    bool dropped = false;
    for (int s = 0; s < steps; ++s) {
      double roll = b.rng.uniform();
      if (roll < 0.55) {
        do_move(carrier);
      } else if (roll < 0.8) {
        do_move(b.pick(actors));  // decoy traffic
      } else if (!holder.empty() && at.count(holder) && traj.size() >= 2 &&
                 !dropped) {
        anchor = b.stmt(b.drop_line(holder, obj));
        holder.clear();
        dropped = true;
      } else if (holder.empty()) {
        anchor = b.stmt(b.grab_line(carrier, obj));
        holder = carrier;
        push(at.count(carrier) ? at[carrier].first : "nowhere",
             at.count(carrier) ? at[carrier].second : anchor);
      }
    }

    // Ask about a location whose latest visit has a real predecessor.
    std::vector<size_t> candidates;
    for (size_t j = 1; j < traj.size(); ++j) {
      bool latest = true;
      for (size_t k = j + 1; k < traj.size(); ++k)
        if (traj[k].loc == traj[j].loc) latest = false;
      if (latest && traj[j - 1].loc != "nowhere") candidates.push_back(j);
    }
    if (candidates.empty()) continue;  // rare: redraw the whole story
    size_t j =
        candidates[b.rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];
    b.ask("Where was the " + obj + " before the " + traj[j].loc,
          traj[j - 1].loc, {anchor, traj[j].entry, traj[j - 1].entry});
    return b.story;
  }
}

// ---- category 4: compass relations ------------------------------------------

Story gen_c4(StoryBuilder& b) {
  auto locs = b.draw(to_vec(kLocations, 6), 3);
  bool vertical = b.rng.uniform() < 0.5;
  Dir4 up = vertical ? Dir4::n : Dir4::e;
  Dir4 down = opposite(up);

  // A 3-location chain locs[2] < locs[1] < locs[0] along the chosen axis,
  // stated as two edges (lower, upper). Both polarities of phrasing occur.
  std::vector<std::pair<std::string, std::string>> edges = {
      {locs[1], locs[0]}, {locs[2], locs[1]}};
  std::vector<int> times;
  for (auto& [lo, hi] : edges) {
    if (b.rng.uniform() < 0.5)
      times.push_back(b.stmt("The " + hi + " is " + dir_word(up) + " of the " + lo));
    else
      times.push_back(b.stmt("The " + lo + " is " + dir_word(down) + " of the " + hi));
  }
  int nq = b.rng.uniform_int(1, 2);
  for (int qi = 0; qi < nq; ++qi) {
    int e = b.rng.uniform_int(0, 1);
    auto [lo, hi] = edges[e];
    int form = b.rng.uniform_int(0, 3);
    switch (form) {
      case 0:
        b.ask("What is " + std::string(dir_word(up)) + " of the " + lo, hi,
              {times[e]});
        break;
      case 1:
        b.ask("What is " + std::string(dir_word(down)) + " of the " + hi, lo,
              {times[e]});
        break;
      case 2:
        b.ask("What is the " + hi + " " + dir_word(up) + " of", lo, {times[e]});
        break;
      default:
        b.ask("What is the " + lo + " " + dir_word(down) + " of", hi,
              {times[e]});
        break;
    }
  }
  return b.story;
}

// ---- categories 5, 7: ownership ----------------------------------------------

struct OwnerWorld {
  struct Give {
    int time;
    std::string src, dst;
  };
  std::map<std::string, std::string> owner;             // object -> actor
  std::map<std::string, std::vector<Give>> gives;       // per object
  std::map<std::string, std::vector<int>> events;       // per actor, C7 clues
};

Story gen_c5_family(StoryBuilder& b, int task) {
  auto actors = b.draw(to_vec(kActors5, 5), 4);
  auto locs = to_vec(kLocations, 6);
  auto objects = b.draw(to_vec(kObjects, 3), task == 7 ? 3 : 2);
  OwnerWorld w;

  // Parameters by value: callers pass views into w.owner, which mutates here.
  auto do_grab = [&](std::string a, std::string o) {
    int t = b.stmt(b.grab_line(a, o));
    w.owner[o] = a;
    w.events[a].push_back(t);
  };
  auto do_give = [&](std::string src, std::string o, std::string dst) {
    int t = b.stmt(cap(src) + " " + std::string(b.pick(kGiveVerbs)) + " the " +
                   o + " to " + cap(dst));
    w.owner[o] = dst;
    w.gives[o].push_back({t, src, dst});
    w.events[src].push_back(t);
    w.events[dst].push_back(t);
  };
  auto do_drop = [&](std::string a, std::string o) {
    int t = b.stmt(b.drop_line(a, o));
    w.owner.erase(o);
    w.events[a].push_back(t);
  };

  do_grab(actors[0], objects[0]);
  int rounds = b.rng.uniform_int(2, 4);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      double roll = b.rng.uniform();
      if (roll < 0.35) {
        std::vector<std::string> owned;
        for (auto& [o, a] : w.owner) owned.push_back(o);
        if (!owned.empty()) {
          std::string o = b.pick(owned);
          std::string dst = b.pick(actors);
          while (dst == w.owner[o]) dst = b.pick(actors);
          do_give(w.owner[o], o, dst);
          continue;
        }
        roll = 0.5;
      }
      if (roll < 0.6) {
        std::vector<std::string> loose;
        for (const auto& o : objects)
          if (!w.owner.count(o)) loose.push_back(o);
        if (!loose.empty()) {
          do_grab(b.pick(actors), b.pick(loose));
          continue;
        }
      }
      if (roll < 0.75 && task == 7) {
        std::vector<std::string> owned;
        for (auto& [o, a] : w.owner) owned.push_back(o);
        if (!owned.empty()) {
          std::string o = b.pick(owned);
          do_drop(w.owner[o], o);
          continue;
        }
      }
      b.stmt(b.move_line(b.pick(actors), b.pick(locs)));  // decoy
    }
    if (task == 5) {
      std::vector<std::string> given;
      for (auto& [o, g] : w.gives)
        if (!g.empty()) given.push_back(o);
      if (given.empty()) continue;
      std::string o = b.pick(given);
      const auto& g = w.gives[o].back();
      switch (b.rng.uniform_int(0, 3)) {
        case 0:
          b.ask("Who did " + cap(g.src) + " give the " + o + " to", g.dst,
                {g.time});
          break;
        case 1:
          b.ask("Who gave the " + o + " to " + cap(g.dst), g.src, {g.time});
          break;
        case 2:
          b.ask("Who received the " + o, g.dst, {g.time});
          break;
        default: {
          // Most recent give between this exact pair across all objects.
          int best_t = -1;
          std::string best_o;
          for (auto& [oo, gg] : w.gives)
            for (auto& ev : gg)
              if (ev.src == g.src && ev.dst == g.dst && ev.time > best_t) {
                best_t = ev.time;
                best_o = oo;
              }
          b.ask("What did " + cap(g.src) + " give to " + cap(g.dst), best_o,
                {best_t});
          break;
        }
      }
    } else {  // task 7: counting
      std::string a = b.pick(actors);
      int count = 0;
      for (auto& [o, holder] : w.owner)
        if (holder == a) ++count;
      const char* words[] = {"none", "one", "two", "three"};
      if (w.events[a].empty()) continue;
      b.ask("How many objects is " + cap(a) + " carrying", words[count],
            w.events[a]);
    }
  }
  return b.story;
}

// ---- categories 9, 10: negation and indefinite knowledge ---------------------

Story gen_c9(StoryBuilder& b) {
  auto actors = to_vec(kActors, 4);
  auto locs = to_vec(kLocations, 6);
  // evidence: actor -> (kind, loc, time); kind: 1 positive, 0 negated
  std::map<std::string, std::tuple<int, std::string, int>> ev;
  int rounds = b.rng.uniform_int(2, 4);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      std::string a = b.pick(actors);
      double roll = b.rng.uniform();
      if (roll < 0.45 || !ev.count(a)) {
        if (roll < 0.2) {
          std::string l = b.pick(locs);
          int t = b.stmt(cap(a) + " is in the " + l);
          ev[a] = {1, l, t};
        } else {
          std::string l = b.pick(locs);
          int t = b.stmt(b.move_line(a, l));
          ev[a] = {1, l, t};
        }
      } else {
        auto [kind, l, t0] = ev[a];
        if (kind == 1) {
          int t = b.stmt(cap(a) + " is no longer in the " + l);
          ev[a] = {0, l, t};
        } else {
          std::string l2 = b.pick(locs);
          int t = b.stmt(b.move_line(a, l2));
          ev[a] = {1, l2, t};
        }
      }
    }
    std::vector<std::string> known;
    for (auto& [a, e] : ev) known.push_back(a);
    std::string a = b.pick(known);
    auto [kind, l, t] = ev[a];
    if (kind == 1) {
      if (b.rng.uniform() < 0.5) {
        b.ask("Is " + cap(a) + " in the " + l, "yes", {t});
      } else {
        std::string l2 = b.pick(locs);
        while (l2 == l) l2 = b.pick(locs);
        b.ask("Is " + cap(a) + " in the " + l2, "no", {t});
      }
    } else {
      b.ask("Is " + cap(a) + " in the " + l, "no", {t});
    }
  }
  return b.story;
}

Story gen_c10(StoryBuilder& b) {
  auto actors = to_vec(kActors10, 4);
  auto locs = to_vec(kLocations10, 6);
  // actor -> (locA, locB == locA when definite, time)
  std::map<std::string, std::tuple<std::string, std::string, int>> ev;
  int rounds = b.rng.uniform_int(2, 4);
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < 2; ++k) {
      std::string a = b.pick(actors);
      double roll = b.rng.uniform();
      if (roll < 0.45) {
        auto two = b.draw(locs, 2);
        int t = b.stmt(cap(a) + " is either in the " + two[0] + " or the " +
                       two[1]);
        ev[a] = {two[0], two[1], t};
      } else if (roll < 0.8) {
        std::string l = b.pick(locs);
        int t = b.stmt(b.move_line(a, l));
        ev[a] = {l, l, t};
      } else {
        std::string l = b.pick(locs);
        int t = b.stmt(cap(a) + " is in the " + l);
        ev[a] = {l, l, t};
      }
    }
    std::vector<std::string> known;
    for (auto& [a, e] : ev) known.push_back(a);
    std::string a = b.pick(known);
    auto [la, lb, t] = ev[a];
    double roll = b.rng.uniform();
    if (la == lb) {
      if (roll < 0.5) {
        b.ask("Is " + cap(a) + " in the " + la, "yes", {t});
      } else {
        std::string l2 = b.pick(locs);
        while (l2 == la) l2 = b.pick(locs);
        b.ask("Is " + cap(a) + " in the " + l2, "no", {t});
      }
    } else {
      if (roll < 0.6) {
        b.ask("Is " + cap(a) + " in the " + (roll < 0.3 ? la : lb), "maybe",
              {t});
      } else {
        std::string l2 = b.pick(locs);
        while (l2 == la || l2 == lb) l2 = b.pick(locs);
        b.ask("Is " + cap(a) + " in the " + l2, "no", {t});
      }
    }
  }
  return b.story;
}

// ---- category 14: time stamps -------------------------------------------------

Story gen_c14(StoryBuilder& b) {
  auto actors = b.draw(to_vec(kActors10, 4), 2);
  auto locs = to_vec(kLocations10, 6);
  const char* stamps[] = {"yesterday", "morning", "afternoon", "evening"};

  struct Visit {
    std::string actor, loc;
    int stamp;
    int time = 0;
  };
  std::vector<Visit> visits;
  for (const auto& a : actors) {
    int n = b.rng.uniform_int(2, 4);
    auto itinerary = b.draw(locs, n);
    int first = b.rng.uniform_int(0, 4 - n);
    for (int k = 0; k < n; ++k)
      visits.push_back({a, itinerary[k], first + k});
  }
  // Emit in shuffled order; the statements are deliberately achronological.
  for (size_t i = visits.size(); i > 1; --i)
    std::swap(visits[i - 1], visits[b.rng.uniform_int(0, static_cast<int>(i) - 1)]);
  for (auto& v : visits) {
    std::string word = stamps[v.stamp];
    std::string phr = v.stamp == 0 ? word : "this " + word;
    if (b.rng.uniform() < 0.5)
      v.time = b.stmt(cap(phr) + " " + b.move_line(v.actor, v.loc));
    else
      v.time = b.stmt(b.move_line(v.actor, v.loc) + " " + phr);
  }
  int nq = b.rng.uniform_int(1, 2);
  for (int qi = 0; qi < nq; ++qi) {
    std::string a = b.pick(actors);
    std::vector<Visit> mine;
    for (auto& v : visits)
      if (v.actor == a) mine.push_back(v);
    std::sort(mine.begin(), mine.end(),
              [](const Visit& x, const Visit& y) { return x.stamp < y.stamp; });
    int j = b.rng.uniform_int(1, static_cast<int>(mine.size()) - 1);
    b.ask("Where was " + cap(a) + " before the " + mine[j].loc,
          mine[j - 1].loc, {mine[j].time, mine[j - 1].time});
  }
  return b.story;
}

// ---- categories 15, 16: deduction / induction --------------------------------

Story gen_c15(StoryBuilder& b) {
  std::vector<std::string> species = {"mouse", "wolf", "cat", "sheep"};
  std::map<std::string, std::string> plural = {{"mouse", "mice"},
                                               {"wolf", "wolves"},
                                               {"cat", "cats"},
                                               {"sheep", "sheep"}};
  // random circular food chain
  auto order = b.draw(species, 4);
  std::map<std::string, std::string> fears;
  for (int i = 0; i < 4; ++i) fears[order[i]] = order[(i + 1) % 4];

  std::vector<std::string> people = {"emily", "jessica", "winona", "gertrude"};
  std::map<std::string, std::string> kind_of;
  for (const auto& p : people) kind_of[p] = b.pick(species);

  struct Line {
    int what;  // 0 fear, 1 isa
    std::string a, c;
  };
  std::vector<Line> lines;
  for (auto& [s, tgt] : fears) lines.push_back({0, s, tgt});
  for (auto& [p, s] : kind_of) lines.push_back({1, p, s});
  for (size_t i = lines.size(); i > 1; --i)
    std::swap(lines[i - 1], lines[b.rng.uniform_int(0, static_cast<int>(i) - 1)]);

  std::map<std::string, int> fear_time, isa_time;
  for (auto& ln : lines) {
    if (ln.what == 0)
      fear_time[ln.a] =
          b.stmt(cap(plural[ln.a]) + " are afraid of " + plural[ln.c]);
    else
      isa_time[ln.a] = b.stmt(cap(ln.a) + " is a " + ln.c);
  }
  int nq = b.rng.uniform_int(2, 4);
  for (int qi = 0; qi < nq; ++qi) {
    std::string p = b.pick(people);
    const std::string& s = kind_of[p];
    b.ask("What is " + cap(p) + " afraid of", fears[s],
          {isa_time[p], fear_time[s]});
  }
  return b.story;
}

Story gen_c16(StoryBuilder& b) {
  std::vector<std::string> animals = {"lion", "swan", "frog", "rhino"};
  std::vector<std::string> colors = {"green", "white", "gray", "yellow"};
  std::map<std::string, std::string> color_of;  // one color per species
  auto shuffled = b.draw(colors, 4);
  for (int i = 0; i < 4; ++i) color_of[animals[i]] = shuffled[i];

  std::vector<std::string> people = {"bernhard", "julius", "lily", "greg",
                                     "brian"};
  std::map<std::string, std::string> kind_of;
  std::map<std::string, int> isa_time;
  std::map<std::string, std::pair<int, std::string>> last_color;  // species
  // First a run of is-a facts, then color facts about a subset, interleaved.
  std::vector<std::string> colored;
  for (const auto& p : people) kind_of[p] = b.pick(animals);
  // Guarantee at least one species with a colored member and an uncolored one.
  std::string qperson = people[b.rng.uniform_int(0, 4)];
  std::string witness = qperson == "greg" ? "lily" : "greg";
  kind_of[witness] = kind_of[qperson];

  struct Line {
    int what;  // 0 isa, 1 color
    std::string p;
  };
  std::vector<Line> lines;
  for (const auto& p : people) lines.push_back({0, p});
  for (const auto& p : people)
    if (p != qperson && b.rng.uniform() < 0.7) lines.push_back({1, p});
  lines.push_back({1, witness});
  for (size_t i = lines.size(); i > 1; --i)
    std::swap(lines[i - 1], lines[b.rng.uniform_int(0, static_cast<int>(i) - 1)]);

  std::set<std::string> isa_done, color_done;
  for (auto& ln : lines) {
    if (ln.what == 0) {
      if (isa_done.insert(ln.p).second)
        isa_time[ln.p] = b.stmt(cap(ln.p) + " is a " + kind_of[ln.p]);
    } else if (isa_done.count(ln.p) && color_done.insert(ln.p).second) {
      int t = b.stmt(cap(ln.p) + " is " + color_of[kind_of[ln.p]]);
      last_color[kind_of[ln.p]] = {t, ln.p};
    }
  }
  if (!last_color.count(kind_of[qperson])) {
    int t = b.stmt(cap(witness) + " is " + color_of[kind_of[witness]]);
    last_color[kind_of[witness]] = {t, witness};
  }
  auto [ct, cp] = last_color[kind_of[qperson]];
  b.ask("What color is " + cap(qperson), color_of[kind_of[qperson]],
        {isa_time[qperson], isa_time[cp], ct});
  return b.story;
}

// ---- category 17: positional reasoning ----------------------------------------

Story gen_c17(StoryBuilder& b) {
  std::vector<std::string> objectsAll = {"triangle",   "blue_square",
                                         "pink_rectangle", "red_sphere",
                                         "yellow_square",  "red_square"};
  auto objs = b.draw(objectsAll, 3);  // z, m, q: statements share the middle m
  const std::string &z = objs[0], &m = objs[1], &q = objs[2];

  auto dxy = [](PosDir p) -> std::pair<int, int> {
    switch (p) {
      case PosDir::above: return {0, 1};
      case PosDir::below: return {0, -1};
      case PosDir::left: return {-1, 0};
      default: return {1, 0};
    }
  };
  const PosDir dirs[4] = {PosDir::above, PosDir::below, PosDir::left,
                          PosDir::right};

  auto emit_rel = [&](const std::string& x, PosDir p, const std::string& y) {
    std::string rel = (p == PosDir::above || p == PosDir::below)
                          ? std::string(pos_word(p))
                          : "to the " + std::string(pos_word(p)) + " of";
    return b.stmt("The " + surface(x) + " is " + rel + " the " + surface(y));
  };

  // Two statements through the middle object; net-zero and coincident
  // placements are excluded so truth is a pure displacement test.
  int pattern = b.rng.uniform_int(0, 3);
  PosDir d1 = dirs[b.rng.uniform_int(0, 3)];
  PosDir d2 = dirs[b.rng.uniform_int(0, 3)];
  int mx = 0, my = 0, qx = 0, qy = 0;  // z at origin
  int t1 = 0, t2 = 0;
  for (;;) {
    auto [ax, ay] = dxy(d1);
    auto [bx, by] = dxy(d2);
    switch (pattern) {
      case 0:  // m d1 z ; q d2 m
        mx = ax, my = ay;
        qx = mx + bx, qy = my + by;
        break;
      case 1:  // z d1 m ; q d2 m
        mx = -ax, my = -ay;
        qx = mx + bx, qy = my + by;
        break;
      case 2:  // m d1 z ; m d2 q
        mx = ax, my = ay;
        qx = mx - bx, qy = my - by;
        break;
      default:  // z d1 m ; m d2 q
        mx = -ax, my = -ay;
        qx = mx - bx, qy = my - by;
        break;
    }
    if ((qx != 0 || qy != 0) && (qx != mx || qy != my)) break;
    d2 = dirs[b.rng.uniform_int(0, 3)];
  }
  switch (pattern) {
    case 0: t1 = emit_rel(m, d1, z); t2 = emit_rel(q, d2, m); break;
    case 1: t1 = emit_rel(z, d1, m); t2 = emit_rel(q, d2, m); break;
    case 2: t1 = emit_rel(m, d1, z); t2 = emit_rel(m, d2, q); break;
    default: t1 = emit_rel(z, d1, m); t2 = emit_rel(m, d2, q); break;
  }

  auto truth = [&](PosDir p) {
    switch (p) {
      case PosDir::above: return qy > 0;
      case PosDir::below: return qy < 0;
      case PosDir::left: return qx < 0;
      default: return qx > 0;
    }
  };
  auto ask_rel = [&](PosDir p) {
    std::string rel = (p == PosDir::above || p == PosDir::below)
                          ? std::string(pos_word(p))
                          : "to the " + std::string(pos_word(p)) + " of";
    b.ask("Is the " + surface(q) + " " + rel + " the " + surface(z),
          truth(p) ? "yes" : "no", {t1, t2});
  };
  std::vector<PosDir> yes_dirs, no_dirs;
  for (PosDir p : dirs) (truth(p) ? yes_dirs : no_dirs).push_back(p);
  ask_rel(yes_dirs[b.rng.uniform_int(0, static_cast<int>(yes_dirs.size()) - 1)]);
  ask_rel(no_dirs[b.rng.uniform_int(0, static_cast<int>(no_dirs.size()) - 1)]);
  return b.story;
}

// ---- category 18: size chains --------------------------------------------------

Story gen_c18(StoryBuilder& b) {
  std::vector<std::string> objects = {"box",           "chocolate",
                                      "box_of_chocolates", "chest",
                                      "container",     "suitcase"};
  auto objs = b.draw(objects, 5);
  // random chain objs[0] < objs[1] < ... with a couple of extra side edges
  std::vector<std::tuple<int, std::string, std::string>> edges;  // t, inner, outer
  std::map<std::string, int> rank;
  for (size_t i = 0; i < objs.size(); ++i) rank[objs[i]] = static_cast<int>(i);

  std::vector<std::pair<std::string, std::string>> rel;
  for (size_t i = 0; i + 1 < objs.size(); ++i)
    rel.push_back({objs[i], objs[i + 1]});
  for (size_t i = rel.size(); i > 1; --i)
    std::swap(rel[i - 1], rel[b.rng.uniform_int(0, static_cast<int>(i) - 1)]);

  for (auto& [inner, outer] : rel) {
    int t;
    if (b.rng.uniform() < 0.5)
      t = b.stmt("The " + surface(inner) + " fits inside the " + surface(outer));
    else
      t = b.stmt("The " + surface(outer) + " is bigger than the " +
                 surface(inner));
    edges.push_back({t, inner, outer});
  }

  auto path_times = [&](const std::string& from, const std::string& to) {
    // follow the chain from rank[from] to rank[to]
    std::vector<int> times;
    for (int r = rank[from]; r < rank[to]; ++r) {
      for (auto& [t, in, out] : edges)
        if (rank[in] == r) times.push_back(t);
    }
    std::reverse(times.begin(), times.end());
    return times;
  };

  int nq = b.rng.uniform_int(2, 3);
  for (int qi = 0; qi < nq; ++qi) {
    int i = b.rng.uniform_int(0, static_cast<int>(objs.size()) - 2);
    int j = b.rng.uniform_int(i + 1, std::min<int>(i + 2, static_cast<int>(objs.size()) - 1));
    std::string inner = objs[i], outer = objs[j];
    bool yes = b.rng.uniform() < 0.5;
    auto clues = path_times(inner, outer);
    if (b.rng.uniform() < 0.5) {
      if (yes)
        b.ask("Does the " + surface(inner) + " fit in the " + surface(outer),
              "yes", clues);
      else
        b.ask("Does the " + surface(outer) + " fit in the " + surface(inner),
              "no", clues);
    } else {
      if (yes)
        b.ask("Is the " + surface(outer) + " bigger than the " + surface(inner),
              "yes", clues);
      else
        b.ask("Is the " + surface(inner) + " bigger than the " + surface(outer),
              "no", clues);
    }
  }
  return b.story;
}

// ---- category 19: path finding --------------------------------------------------

Story gen_c19(StoryBuilder& b) {
  auto locs = to_vec(kLocations, 6);
  struct Placed {
    std::string name;
    int x, y;
  };
  std::vector<Placed> placed;
  std::set<std::pair<int, int>> occupied;
  std::vector<std::tuple<int, int, Dir4>> edges;  // child idx, parent idx, dir(child rel parent)
  std::vector<int> edge_times;

  placed.push_back({locs[0], 0, 0});
  occupied.insert({0, 0});
  const Dir4 dirs[4] = {Dir4::n, Dir4::e, Dir4::s, Dir4::w};
  auto dxy = [](Dir4 d) -> std::pair<int, int> {
    switch (d) {
      case Dir4::n: return {0, 1};
      case Dir4::e: return {1, 0};
      case Dir4::s: return {0, -1};
      default: return {-1, 0};
    }
  };
  for (size_t i = 1; i < locs.size(); ++i) {
    for (;;) {
      int parent = b.rng.uniform_int(0, static_cast<int>(placed.size()) - 1);
      Dir4 d = dirs[b.rng.uniform_int(0, 3)];
      auto [dx, dy] = dxy(d);
      int nx = placed[parent].x + dx, ny = placed[parent].y + dy;
      if (occupied.count({nx, ny})) continue;
      placed.push_back({locs[i], nx, ny});
      occupied.insert({nx, ny});
      edges.push_back({static_cast<int>(i), parent, d});
      break;
    }
  }
  // Emit the five edges in random order, random phrasing orientation.
  std::vector<size_t> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[b.rng.uniform_int(0, static_cast<int>(i) - 1)]);
  std::map<size_t, int> time_of_edge;
  for (size_t oi : order) {
    auto [child, parent, d] = edges[oi];
    int t;
    if (b.rng.uniform() < 0.5)
      t = b.stmt("The " + placed[child].name + " is " + dir_word(d) +
                 " of the " + placed[parent].name);
    else
      t = b.stmt("The " + placed[parent].name + " is " + dir_word(opposite(d)) +
                 " of the " + placed[child].name);
    time_of_edge[oi] = t;
  }

  // Adjacency over stated edges only.
  std::vector<std::vector<std::tuple<int, Dir4, size_t>>> adj(placed.size());
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    auto [child, parent, d] = edges[ei];
    adj[parent].push_back({child, d, ei});
    adj[child].push_back({parent, opposite(d), ei});
  }
  // All (from, to) pairs at tree distance exactly 2.
  std::vector<std::tuple<int, int, std::string, std::vector<int>>> options;
  for (size_t from = 0; from < placed.size(); ++from) {
    for (auto& [mid, d1, e1] : adj[from]) {
      for (auto& [to, d2, e2] : adj[mid]) {
        if (static_cast<size_t>(to) == from) continue;
        std::string ans = std::string(1, dir_letter(d1)) + "," + dir_letter(d2);
        options.push_back({static_cast<int>(from), to, ans,
                           {time_of_edge[e1], time_of_edge[e2]}});
      }
    }
  }
  auto& [from, to, ans, clues] =
      options[b.rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
  b.ask("How do you go from the " + placed[from].name + " to the " +
            placed[to].name,
        ans, clues);
  return b.story;
}

// ---- category 20: motivations ----------------------------------------------------

Story gen_c20(StoryBuilder& b) {
  struct Motive {
    std::string state, loc, obj;
  };
  const Motive motives[] = {{"bored", "garden", "football"},
                            {"hungry", "kitchen", "apple"},
                            {"thirsty", "kitchen", "milk"},
                            {"tired", "bedroom", "pajamas"}};
  auto people = b.draw(to_vec(kActors20, 4), 2);
  int mi0 = b.rng.uniform_int(0, 3);
  int mi1 = b.rng.uniform_int(0, 3);
  while (mi1 == mi0) mi1 = b.rng.uniform_int(0, 3);
  const Motive* chosen[2] = {&motives[mi0], &motives[mi1]};

  // Each person's beat order is fixed; the two scripts interleave randomly.
  // step: 0 motive, 1 ask-where, 2 move, 3 ask-why-go, 4 grab, 5 ask-why-get
  struct Beat {
    int person;
    int step;
  };
  std::vector<Beat> beats;
  int next_step[2] = {0, 0};
  while (next_step[0] < 6 || next_step[1] < 6) {
    int p;
    if (next_step[0] >= 6)
      p = 1;
    else if (next_step[1] >= 6)
      p = 0;
    else
      p = b.rng.uniform() < 0.5 ? 0 : 1;
    beats.push_back({p, next_step[p]++});
  }

  int motive_time[2] = {0, 0};
  for (auto& beat : beats) {
    const std::string& who = people[beat.person];
    const Motive& m = *chosen[beat.person];
    switch (beat.step) {
      case 0:
        motive_time[beat.person] = b.stmt(cap(who) + " is " + m.state);
        break;
      case 1:
        b.ask("Where will " + cap(who) + " go", m.loc,
              {motive_time[beat.person]});
        break;
      case 2:
        b.stmt(b.move_line(who, m.loc));
        break;
      case 3:
        b.ask("Why did " + cap(who) + " go to the " + m.loc, m.state,
              {motive_time[beat.person]});
        break;
      case 4:
        b.stmt(b.grab_line(who, m.obj));
        break;
      default:
        b.ask("Why did " + cap(who) + " get the " + m.obj, m.state,
              {motive_time[beat.person]});
        break;
    }
  }
  return b.story;
}

}  // namespace

Story generate_story(const Config& cfg, int category, int story_index) {
  std::uint64_t seed =
      mix_seed(mix_seed(cfg.seed, 0x6e00ULL + category), story_index);
  StoryBuilder b(category, seed);
  Story s;
  switch (category) {
    case 1: s = gen_c1(b); break;
    case 2: s = gen_c2_family(b, 2); break;
    case 3: s = gen_c3(b); break;
    case 4: s = gen_c4(b); break;
    case 5: s = gen_c5_family(b, 5); break;
    case 6: s = gen_c2_family(b, 6); break;
    case 7: s = gen_c5_family(b, 7); break;
    case 8: s = gen_c2_family(b, 8); break;
    case 9: s = gen_c9(b); break;
    case 10: s = gen_c10(b); break;
    case 11: s = gen_c11(b, false); break;
    case 12: s = gen_c12(b); break;
    case 13: s = gen_c11(b, true); break;
    case 14: s = gen_c14(b); break;
    case 15: s = gen_c15(b); break;
    case 16: s = gen_c16(b); break;
    case 17: s = gen_c17(b); break;
    case 18: s = gen_c18(b); break;
    case 19: s = gen_c19(b); break;
    case 20: s = gen_c20(b); break;
    default:
      throw std::runtime_error("generate: invalid category " +
                               std::to_string(category));
  }
  s.task_id = category;
  s.index = story_index;
  return s;
}

std::vector<Story> generate_category(const Config& cfg, int category,
                                     int n_stories) {
  std::vector<Story> out;
  out.reserve(n_stories);
  for (int i = 0; i < n_stories; ++i)
    out.push_back(generate_story(cfg, category, i));
  return out;
}

}  // namespace tpr
