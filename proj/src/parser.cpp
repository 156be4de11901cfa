#include "tpr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tpr {

Dir4 opposite(Dir4 d) {
  switch (d) {
    case Dir4::n: return Dir4::s;
    case Dir4::s: return Dir4::n;
    case Dir4::e: return Dir4::w;
    default: return Dir4::e;
  }
}

PosDir opposite(PosDir d) {
  switch (d) {
    case PosDir::above: return PosDir::below;
    case PosDir::below: return PosDir::above;
    case PosDir::left: return PosDir::right;
    default: return PosDir::left;
  }
}

char dir_letter(Dir4 d) {
  switch (d) {
    case Dir4::n: return 'n';
    case Dir4::e: return 'e';
    case Dir4::s: return 's';
    default: return 'w';
  }
}

const char* dir_word(Dir4 d) {
  switch (d) {
    case Dir4::n: return "north";
    case Dir4::e: return "east";
    case Dir4::s: return "south";
    default: return "west";
  }
}

const char* pos_word(PosDir d) {
  switch (d) {
    case PosDir::above: return "above";
    case PosDir::below: return "below";
    case PosDir::left: return "left";
    default: return "right";
  }
}

const char* stamp_word(Stamp s) {
  switch (s) {
    case Stamp::yesterday: return "yesterday";
    case Stamp::morning: return "morning";
    case Stamp::afternoon: return "afternoon";
    default: return "evening";
  }
}

namespace {

const char* kDefaultLexicon =
    "move: moved went journeyed travelled\n"
    "grab: got took grabbed picked_up\n"
    "drop: dropped discarded put_down left\n"
    "give: gave handed passed\n"
    "stamps: yesterday morning afternoon evening\n"
    "plural: mice=mouse wolves=wolf cats=cat sheep=sheep\n";

std::optional<Dir4> dir_from_word(const std::string& w) {
  if (w == "north") return Dir4::n;
  if (w == "east") return Dir4::e;
  if (w == "south") return Dir4::s;
  if (w == "west") return Dir4::w;
  return std::nullopt;
}

std::optional<Stamp> stamp_from_word(const std::string& w) {
  if (w == "yesterday") return Stamp::yesterday;
  if (w == "morning") return Stamp::morning;
  if (w == "afternoon") return Stamp::afternoon;
  if (w == "evening") return Stamp::evening;
  return std::nullopt;
}

using Tokens = std::vector<std::string>;

bool tok_is(const Tokens& t, size_t i, const char* w) {
  return i < t.size() && t[i] == w;
}

// Matches a (possibly multiword, '_'-joined) verb at position i; returns the
// number of tokens consumed, 0 if no match.
size_t match_verb(const Tokens& t, size_t i,
                  const std::vector<std::string>& verbs) {
  for (const auto& v : verbs) {
    size_t start = 0, j = i;
    bool ok = true;
    while (start < v.size()) {
      size_t us = v.find('_', start);
      std::string part = v.substr(start, us == std::string::npos
                                             ? std::string::npos
                                             : us - start);
      if (j >= t.size() || t[j] != part) {
        ok = false;
        break;
      }
      ++j;
      if (us == std::string::npos) break;
      start = us + 1;
    }
    if (ok) return j - i;
  }
  return 0;
}

// Joins tokens [i, stop) with '_' so multiword names stay atomic registry keys.
std::string phrase(const Tokens& t, size_t i, size_t stop) {
  std::string out;
  for (size_t k = i; k < stop && k < t.size(); ++k) {
    if (!out.empty()) out += '_';
    out += t[k];
  }
  return out;
}

size_t find_any(const Tokens& t, size_t from,
                std::initializer_list<const char*> words) {
  for (size_t i = from; i < t.size(); ++i)
    for (const char* w : words)
      if (t[i] == w) return i;
  return t.size();
}

[[noreturn]] void fail(const Tokens& t) {
  std::string s;
  for (const auto& w : t) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  throw ParseError("unparseable-line: " + s);
}

std::string singular(const std::string& w, const Lexicon& lex) {
  auto it = lex.plural_to_singular.find(w);
  return it == lex.plural_to_singular.end() ? w : it->second;
}

Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head.empty() || head[0] == '#') continue;
    if (head.back() == ':') head.pop_back();
    std::string w;
    while (ls >> w) {
      if (head == "move") lex.move_verbs.push_back(w);
      else if (head == "grab") lex.grab_verbs.push_back(w);
      else if (head == "drop") lex.drop_verbs.push_back(w);
      else if (head == "give") lex.give_verbs.push_back(w);
      else if (head == "stamps") lex.stamp_order.push_back(w);
      else if (head == "plural") {
        size_t eq = w.find('=');
        if (eq == std::string::npos)
          throw ParseError("lexicon: bad plural entry " + w);
        lex.plural_to_singular[w.substr(0, eq)] = w.substr(eq + 1);
      } else {
        throw ParseError("lexicon: unknown class " + head);
      }
    }
  }
  return lex;
}

}  // namespace

Lexicon Lexicon::defaults() {
  std::istringstream in(kDefaultLexicon);
  return parse_lexicon(in);
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("lexicon: cannot open " + path);
  return parse_lexicon(f);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (char raw : line) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '.' || c == '?' || c == '!' || c == ',') {
      flush();
      out.push_back(std::string(1, c));
    } else if (c == '\'') {
      flush();  // split possessives: mary's -> mary 's
      cur = "'";
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

LogicalForm parse_statement(const Tokens& raw, int task_id,
                            const ParseContext& ctx, const Lexicon& lex) {
  Tokens t = raw;
  while (!t.empty() && (t.back() == "." || t.back() == "!")) t.pop_back();
  if (t.empty()) fail(raw);

  // Time stamps (leading "yesterday" / "this morning", or trailing).
  bool has_stamp = false;
  Stamp stamp{};
  if (auto s = stamp_from_word(t[0]); s && t.size() > 1) {
    has_stamp = true;
    stamp = *s;
    t.erase(t.begin());
  } else if (tok_is(t, 0, "this") && t.size() > 1) {
    if (auto s2 = stamp_from_word(t[1])) {
      has_stamp = true;
      stamp = *s2;
      t.erase(t.begin(), t.begin() + 2);
    }
  }
  if (!has_stamp && t.size() >= 2) {
    if (t[t.size() - 2] == "this") {
      if (auto s = stamp_from_word(t.back())) {
        has_stamp = true;
        stamp = *s;
        t.resize(t.size() - 2);
      }
    } else if (auto s = stamp_from_word(t.back());
               s && *s == Stamp::yesterday) {
      has_stamp = true;
      stamp = *s;
      t.pop_back();
    }
  }

  // Discourse connectives preceding pronouns.
  if (tok_is(t, 0, "afterwards") || tok_is(t, 0, "then")) {
    t.erase(t.begin());
  } else if ((tok_is(t, 0, "after") || tok_is(t, 0, "following")) &&
             tok_is(t, 1, "that")) {
    t.erase(t.begin(), t.begin() + 2);
  }
  if (t.empty()) fail(raw);

  // "The ..." statements: relations between non-actor entities.
  if (t[0] == "the") {
    size_t verb = find_any(t, 1, {"is", "fits"});
    if (verb >= t.size() || verb < 2) fail(raw);
    std::string subject = phrase(t, 1, verb);
    LogicalForm lf;
    if (t[verb] == "fits") {
      size_t i = verb + 1;
      if (!(tok_is(t, i, "inside") || tok_is(t, i, "in"))) fail(raw);
      if (!tok_is(t, i + 1, "the")) fail(raw);
      lf.kind = StatementKind::Contains;
      lf.lhs = subject;
      lf.rhs = phrase(t, i + 2, t.size());
      if (lf.rhs.empty()) fail(raw);
      return lf;
    }
    size_t i = verb + 1;
    if (tok_is(t, i, "bigger")) {
      if (!tok_is(t, i + 1, "than") || !tok_is(t, i + 2, "the")) fail(raw);
      lf.kind = StatementKind::Contains;  // X bigger than Y => Y fits in X
      lf.lhs = phrase(t, i + 3, t.size());
      lf.rhs = subject;
      if (lf.lhs.empty()) fail(raw);
      return lf;
    }
    if (auto d = dir_from_word(t[i]); d && tok_is(t, i + 1, "of")) {
      if (!tok_is(t, i + 2, "the")) fail(raw);
      lf.kind = StatementKind::DirRel;
      lf.lhs = subject;
      lf.dir = *d;
      lf.rhs = phrase(t, i + 3, t.size());
      if (lf.rhs.empty()) fail(raw);
      return lf;
    }
    if (tok_is(t, i, "above") || tok_is(t, i, "below")) {
      if (!tok_is(t, i + 1, "the")) fail(raw);
      lf.kind = StatementKind::PosRel;
      lf.lhs = subject;
      lf.pos = t[i] == "above" ? PosDir::above : PosDir::below;
      lf.rhs = phrase(t, i + 2, t.size());
      if (lf.rhs.empty()) fail(raw);
      return lf;
    }
    if (tok_is(t, i, "to") && tok_is(t, i + 1, "the") &&
        (tok_is(t, i + 2, "left") || tok_is(t, i + 2, "right")) &&
        tok_is(t, i + 3, "of") && tok_is(t, i + 4, "the")) {
      lf.kind = StatementKind::PosRel;
      lf.lhs = subject;
      lf.pos = t[i + 2] == "left" ? PosDir::left : PosDir::right;
      lf.rhs = phrase(t, i + 5, t.size());
      if (lf.rhs.empty()) fail(raw);
      return lf;
    }
    fail(raw);
  }

  // Actor-initial statements. Resolve pronouns against the prior statement.
  std::vector<std::string> actors;
  size_t i = 0;
  if (t[0] == "he" || t[0] == "she") {
    if (ctx.prev_actors.empty()) fail(raw);
    actors.push_back(ctx.prev_actors.front());
    i = 1;
  } else if (t[0] == "they") {
    if (ctx.prev_actors.empty()) fail(raw);
    actors = ctx.prev_actors;
    i = 1;
  } else {
    actors.push_back(t[0]);
    i = 1;
    if (tok_is(t, i, "and") && i + 1 < t.size()) {
      actors.push_back(t[i + 1]);
      i += 2;
    }
  }
  if (i >= t.size()) fail(raw);

  LogicalForm lf;
  if (size_t n = match_verb(t, i, lex.move_verbs)) {
    size_t j = i + n;
    if (tok_is(t, j, "back")) ++j;
    if (!tok_is(t, j, "to") || !tok_is(t, j + 1, "the") || j + 2 >= t.size())
      fail(raw);
    std::string loc = phrase(t, j + 2, t.size());
    if (has_stamp) {
      if (actors.size() != 1) fail(raw);
      lf.kind = StatementKind::MoveTimed;
      lf.actors = actors;
      lf.to = loc;
      lf.stamp = stamp;
      return lf;
    }
    lf.kind = StatementKind::Move;
    lf.actors = actors;
    lf.to = loc;
    return lf;
  }

  if ((tok_is(t, i, "is") || tok_is(t, i, "are")) && actors.size() == 1) {
    size_t j = i + 1;
    if (tok_is(t, j, "either") && tok_is(t, j + 1, "in") &&
        tok_is(t, j + 2, "the")) {
      size_t orp = find_any(t, j + 3, {"or"});
      if (orp >= t.size() || !tok_is(t, orp + 1, "the")) fail(raw);
      lf.kind = StatementKind::MoveEither;
      lf.actors = actors;
      lf.to = phrase(t, j + 3, orp);
      lf.alt = phrase(t, orp + 2, t.size());
      if (lf.to.empty() || lf.alt.empty()) fail(raw);
      return lf;
    }
    if (tok_is(t, j, "no") && tok_is(t, j + 1, "longer") &&
        tok_is(t, j + 2, "in") && tok_is(t, j + 3, "the")) {
      lf.kind = StatementKind::Negation;
      lf.actor = actors[0];
      lf.loc = phrase(t, j + 4, t.size());
      if (lf.loc.empty()) fail(raw);
      return lf;
    }
    if (tok_is(t, j, "not") && tok_is(t, j + 1, "in") &&
        tok_is(t, j + 2, "the")) {
      lf.kind = StatementKind::Negation;
      lf.actor = actors[0];
      lf.loc = phrase(t, j + 3, t.size());
      if (lf.loc.empty()) fail(raw);
      return lf;
    }
    if (tok_is(t, j, "in") && tok_is(t, j + 1, "the")) {
      lf.kind = StatementKind::Affirm;
      lf.actor = actors[0];
      lf.loc = phrase(t, j + 2, t.size());
      if (lf.loc.empty()) fail(raw);
      return lf;
    }
    if ((tok_is(t, j, "a") || tok_is(t, j, "an")) && j + 1 < t.size()) {
      lf.kind = StatementKind::IsA;
      lf.lhs = actors[0];
      lf.rhs = phrase(t, j + 1, t.size());
      return lf;
    }
    if (tok_is(t, j, "afraid") && tok_is(t, j + 1, "of") &&
        j + 2 < t.size()) {
      lf.kind = StatementKind::AfraidOf;
      lf.lhs = singular(actors[0], lex);
      lf.rhs = singular(phrase(t, j + 2, t.size()), lex);
      return lf;
    }
    if (j + 1 == t.size()) {  // "X is green." / "X is bored."
      lf.kind = task_id == 20 ? StatementKind::Motivation
                              : StatementKind::HasProp;
      if (lf.kind == StatementKind::Motivation) {
        lf.actor = actors[0];
        lf.rhs = t[j];
      } else {
        lf.lhs = actors[0];
        lf.rhs = t[j];
      }
      return lf;
    }
    fail(raw);
  }

  if (size_t n = match_verb(t, i, lex.give_verbs)) {
    size_t j = i + n;
    if (!tok_is(t, j, "the")) fail(raw);
    size_t top = find_any(t, j + 1, {"to"});
    if (top >= t.size() || top + 1 >= t.size() || actors.size() != 1) fail(raw);
    lf.kind = StatementKind::Give;
    lf.actor = actors[0];
    lf.item = phrase(t, j + 1, top);
    lf.recipient = t[top + 1];
    if (lf.item.empty()) fail(raw);
    return lf;
  }

  if (size_t n = match_verb(t, i, lex.grab_verbs)) {
    size_t j = i + n;
    if (!tok_is(t, j, "the") || actors.size() != 1) fail(raw);
    size_t stop = t.size();
    if (t.back() == "there") --stop;
    lf.kind = StatementKind::Grab;
    lf.actor = actors[0];
    lf.item = phrase(t, j + 1, stop);
    if (lf.item.empty()) fail(raw);
    return lf;
  }

  if (size_t n = match_verb(t, i, lex.drop_verbs)) {
    size_t j = i + n;
    if (!tok_is(t, j, "the") || actors.size() != 1) fail(raw);
    size_t stop = t.size();
    if (t.back() == "there") --stop;
    lf.kind = StatementKind::Drop;
    lf.actor = actors[0];
    lf.item = phrase(t, j + 1, stop);
    if (lf.item.empty()) fail(raw);
    return lf;
  }

  fail(raw);
}

QuestionForm parse_question(const Tokens& raw, int task_id,
                            const Lexicon& lex) {
  (void)task_id;
  Tokens t = raw;
  while (!t.empty() && (t.back() == "?" || t.back() == ".")) t.pop_back();
  if (t.empty()) fail(raw);
  QuestionForm q;

  if (t[0] == "where") {
    if (tok_is(t, 1, "is") && tok_is(t, 2, "the")) {
      q.kind = QuestionKind::WhereObject;
      q.a = phrase(t, 3, t.size());
      if (q.a.empty()) fail(raw);
      return q;
    }
    if (tok_is(t, 1, "is") && t.size() == 3) {
      q.kind = QuestionKind::WhereActor;
      q.a = t[2];
      return q;
    }
    if (tok_is(t, 1, "was")) {
      size_t i = 2;
      if (tok_is(t, i, "the")) ++i;
      size_t bef = find_any(t, i, {"before"});
      if (bef >= t.size() || !tok_is(t, bef + 1, "the")) fail(raw);
      q.kind = QuestionKind::WhereBefore;
      q.a = phrase(t, i, bef);
      q.b = phrase(t, bef + 2, t.size());
      if (q.a.empty() || q.b.empty()) fail(raw);
      return q;
    }
    if (tok_is(t, 1, "will") && tok_is(t, 3, "go") && t.size() == 4) {
      q.kind = QuestionKind::WhereWillGo;
      q.a = t[2];
      return q;
    }
    fail(raw);
  }

  if (t[0] == "who") {
    if (tok_is(t, 1, "did") && tok_is(t, 3, "give") && tok_is(t, 4, "the") &&
        t.back() == "to") {
      q.kind = QuestionKind::WhoGaveTo;
      q.a = t[2];
      q.b = phrase(t, 5, t.size() - 1);
      if (q.b.empty()) fail(raw);
      return q;
    }
    if (tok_is(t, 1, "gave") && tok_is(t, 2, "the")) {
      size_t top = find_any(t, 3, {"to"});
      if (top >= t.size() || top + 1 >= t.size()) fail(raw);
      q.kind = QuestionKind::WhoGave;
      q.a = phrase(t, 3, top);
      q.b = t[top + 1];
      if (q.a.empty()) fail(raw);
      return q;
    }
    if (tok_is(t, 1, "received") && tok_is(t, 2, "the")) {
      q.kind = QuestionKind::WhoReceived;
      q.a = phrase(t, 3, t.size());
      if (q.a.empty()) fail(raw);
      return q;
    }
    fail(raw);
  }

  if (t[0] == "what") {
    if (tok_is(t, 1, "did") && tok_is(t, 3, "give") && tok_is(t, 4, "to") &&
        t.size() == 6) {
      q.kind = QuestionKind::WhatGiven;
      q.a = t[2];
      q.b = t[5];
      return q;
    }
    if (tok_is(t, 1, "color") && tok_is(t, 2, "is") && t.size() == 4) {
      q.kind = QuestionKind::WhatColor;
      q.a = t[3];
      return q;
    }
    if (tok_is(t, 1, "is")) {
      if (tok_is(t, 2, "the")) {
        // "What is the garden east of?"
        if (t.size() >= 5 && t.back() == "of") {
          if (auto d = dir_from_word(t[t.size() - 2])) {
            q.kind = QuestionKind::WhatDirRev;
            q.a = phrase(t, 3, t.size() - 2);
            q.dir = *d;
            if (q.a.empty()) fail(raw);
            return q;
          }
        }
        fail(raw);
      }
      if (auto d = dir_from_word(t[2]);
          d && tok_is(t, 3, "of") && tok_is(t, 4, "the")) {
        q.kind = QuestionKind::WhatDirOf;
        q.dir = *d;
        q.a = phrase(t, 5, t.size());
        if (q.a.empty()) fail(raw);
        return q;
      }
      if (tok_is(t, 3, "carrying") && t.size() == 4) {
        q.kind = QuestionKind::WhatCarrying;
        q.a = t[2];
        return q;
      }
      if (tok_is(t, 3, "afraid") && tok_is(t, 4, "of") && t.size() == 5) {
        q.kind = QuestionKind::WhatAfraid;
        q.a = t[2];
        return q;
      }
    }
    fail(raw);
  }

  if (t[0] == "is") {
    if (tok_is(t, 1, "the")) {
      size_t rel = find_any(t, 2, {"bigger", "above", "below", "to"});
      if (rel >= t.size()) fail(raw);
      std::string subject = phrase(t, 2, rel);
      if (subject.empty()) fail(raw);
      if (t[rel] == "bigger") {
        if (!tok_is(t, rel + 1, "than") || !tok_is(t, rel + 2, "the"))
          fail(raw);
        q.kind = QuestionKind::ContainsQ;  // "X bigger than Y" asks Y in X
        q.b = subject;
        q.a = phrase(t, rel + 3, t.size());
        q.bigger_phrasing = true;
        if (q.a.empty()) fail(raw);
        return q;
      }
      if (t[rel] == "above" || t[rel] == "below") {
        if (!tok_is(t, rel + 1, "the")) fail(raw);
        q.kind = QuestionKind::PosQ;
        q.a = subject;
        q.pos = t[rel] == "above" ? PosDir::above : PosDir::below;
        q.b = phrase(t, rel + 2, t.size());
        if (q.b.empty()) fail(raw);
        return q;
      }
      if (tok_is(t, rel + 1, "the") &&
          (tok_is(t, rel + 2, "left") || tok_is(t, rel + 2, "right")) &&
          tok_is(t, rel + 3, "of") && tok_is(t, rel + 4, "the")) {
        q.kind = QuestionKind::PosQ;
        q.a = subject;
        q.pos = t[rel + 2] == "left" ? PosDir::left : PosDir::right;
        q.b = phrase(t, rel + 5, t.size());
        if (q.b.empty()) fail(raw);
        return q;
      }
      fail(raw);
    }
    if (tok_is(t, 2, "in") && tok_is(t, 3, "the") && t.size() >= 5) {
      q.kind = QuestionKind::IsIn;
      q.a = t[1];
      q.b = phrase(t, 4, t.size());
      return q;
    }
    fail(raw);
  }

  if (t[0] == "does" && tok_is(t, 1, "the")) {
    size_t fit = find_any(t, 2, {"fit"});
    if (fit >= t.size()) fail(raw);
    size_t i = fit + 1;
    if (!(tok_is(t, i, "in") || tok_is(t, i, "inside"))) fail(raw);
    if (!tok_is(t, i + 1, "the")) fail(raw);
    q.kind = QuestionKind::ContainsQ;
    q.a = phrase(t, 2, fit);
    q.b = phrase(t, i + 2, t.size());
    if (q.a.empty() || q.b.empty()) fail(raw);
    return q;
  }

  if (t[0] == "how") {
    if (tok_is(t, 1, "many") && tok_is(t, 2, "objects") && tok_is(t, 3, "is") &&
        tok_is(t, 5, "carrying") && t.size() == 6) {
      q.kind = QuestionKind::HowMany;
      q.a = t[4];
      return q;
    }
    if (tok_is(t, 1, "do") && tok_is(t, 2, "you") && tok_is(t, 3, "go") &&
        tok_is(t, 4, "from") && tok_is(t, 5, "the")) {
      size_t top = find_any(t, 6, {"to"});
      if (top >= t.size() || !tok_is(t, top + 1, "the")) fail(raw);
      q.kind = QuestionKind::PathQ;
      q.a = phrase(t, 6, top);
      q.b = phrase(t, top + 2, t.size());
      if (q.a.empty() || q.b.empty()) fail(raw);
      return q;
    }
    fail(raw);
  }

  if (t[0] == "why" && tok_is(t, 1, "did") && t.size() >= 5) {
    q.kind = QuestionKind::WhyAction;
    q.a = t[2];
    if (tok_is(t, 3, "go") && tok_is(t, 4, "to") && tok_is(t, 5, "the")) {
      q.b = phrase(t, 6, t.size());
      q.deed_is_object = false;
      if (q.b.empty()) fail(raw);
      return q;
    }
    // "Why did X get the O?" (get / pick up / grab in base form)
    size_t the = find_any(t, 3, {"the"});
    if (the >= t.size()) fail(raw);
    q.b = phrase(t, the + 1, t.size());
    q.deed_is_object = true;
    if (q.b.empty()) fail(raw);
    return q;
  }

  (void)lex;
  fail(raw);
}

std::vector<Story> load_babi_stream(std::istream& in, int task_id) {
  std::vector<Story> stories;
  Story cur;
  cur.task_id = task_id;
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!cur.lines.empty()) {
      cur.index = static_cast<int>(stories.size());
      stories.push_back(std::move(cur));
      cur = Story{};
      cur.task_id = task_id;
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw ParseError("malformed-line " + std::to_string(lineno) +
                       ": missing index");
    int idx = 0;
    try {
      size_t used = 0;
      idx = std::stoi(line.substr(0, sp), &used);
      if (used != sp) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("malformed-line " + std::to_string(lineno) +
                       ": non-integer index");
    }
    if (idx == 1) flush();
    std::string rest = line.substr(sp + 1);
    StoryLine sl;
    sl.time = idx;
    size_t tab1 = rest.find('\t');
    if (tab1 == std::string::npos) {
      sl.text = rest;
    } else {
      sl.is_question = true;
      sl.text = rest.substr(0, tab1);
      size_t tab2 = rest.find('\t', tab1 + 1);
      if (tab2 == std::string::npos)
        throw ParseError("malformed-line " + std::to_string(lineno) +
                         ": question missing clue field");
      sl.answer = rest.substr(tab1 + 1, tab2 - tab1 - 1);
      std::istringstream cs(rest.substr(tab2 + 1));
      int c;
      while (cs >> c) sl.clues.push_back(c);
    }
    if (!cur.lines.empty() && sl.time <= cur.lines.back().time)
      throw ParseError("malformed-line " + std::to_string(lineno) +
                       ": non-increasing time index");
    cur.lines.push_back(std::move(sl));
  }
  flush();
  return stories;
}

std::vector<Story> load_babi_file(const std::string& path, int task_id) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open corpus file: " + path);
  return load_babi_stream(f, task_id);
}

void write_babi_stream(const std::vector<Story>& stories, std::ostream& out) {
  for (const auto& story : stories) {
    for (const auto& sl : story.lines) {
      out << sl.time << ' ' << sl.text;
      if (sl.is_question) {
        out << '\t' << sl.answer << '\t';
        for (size_t i = 0; i < sl.clues.size(); ++i) {
          if (i) out << ' ';
          out << sl.clues[i];
        }
      }
      out << '\n';
    }
  }
}

}  // namespace tpr
