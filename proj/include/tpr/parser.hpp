#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tpr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Dir4 { n, e, s, w };
enum class PosDir { above, below, left, right };
enum class Stamp { yesterday, morning, afternoon, evening };

Dir4 opposite(Dir4 d);
PosDir opposite(PosDir d);
char dir_letter(Dir4 d);
const char* dir_word(Dir4 d);
const char* pos_word(PosDir d);
const char* stamp_word(Stamp s);

enum class StatementKind {
  Move,       // actors (1-2) -> to
  MoveTimed,  // actors[0] -> to at stamp
  MoveEither, // actors[0] in to or alt
  Negation,   // actor not at loc
  Affirm,     // actor at loc
  Grab,       // actor takes item
  Drop,       // actor drops item
  Give,       // actor gives item to recipient
  IsA,        // lhs instance of rhs category
  HasProp,    // lhs has property rhs
  AfraidOf,   // lhs category fears rhs category
  Contains,   // lhs fits inside rhs (normalized)
  DirRel,     // lhs is dir of rhs
  PosRel,     // lhs is pos of rhs
  Motivation, // actor is in state rhs
};

struct LogicalForm {
  StatementKind kind{};
  std::vector<std::string> actors;  // movers, 1 or 2 (2 only from "and")
  std::string to;                   // move destination / either option A
  std::string alt;                  // either option B
  std::string actor;                // grab/drop/give/negation/affirm/motivation
  std::string item;                 // grabbed/dropped/given object
  std::string recipient;            // give target
  std::string lhs, rhs;             // IsA/HasProp/AfraidOf/Contains/DirRel/PosRel
  std::string loc;                  // negation/affirm location
  Dir4 dir{};
  PosDir pos{};
  Stamp stamp{};

  bool operator==(const LogicalForm&) const = default;
};

enum class QuestionKind {
  WhereActor,   // a
  WhereObject,  // a
  WhereBefore,  // a = item (actor or object), b = location
  WhoGaveTo,    // a = giver, b = object       -> receiver
  WhoGave,      // a = object, b = receiver    -> giver
  WhoReceived,  // a = object                  -> receiver
  WhatGiven,    // a = giver, b = receiver     -> object
  IsIn,         // a = actor, b = location
  HowMany,      // a = actor
  WhatCarrying, // a = actor
  WhatAfraid,   // a = instance
  WhatColor,    // a = instance
  ContainsQ,    // a = containee, b = container
  WhatDirOf,    // dir, a = reference          -> entity dir of a
  WhatDirRev,   // a = subject, dir            -> entity a is dir of
  WhereWillGo,  // a = actor
  WhyAction,    // a = actor, b = deed argument
  PathQ,        // a = from, b = to
  PosQ,         // a, pos, b
};

struct QuestionForm {
  QuestionKind kind{};
  std::string a, b;
  Dir4 dir{};
  PosDir pos{};
  bool bigger_phrasing = false;   // ContainsQ surfaced as "is X bigger than Y"
  bool deed_is_object = false;    // WhyAction: get-object vs go-to-location

  bool operator==(const QuestionForm&) const = default;
};

// Verb classes and the small closed word lists the grammar needs, kept in a
// data file (one class per line, multiword verbs joined with '_').
struct Lexicon {
  std::vector<std::string> move_verbs;
  std::vector<std::string> grab_verbs;
  std::vector<std::string> drop_verbs;
  std::vector<std::string> give_verbs;
  std::vector<std::string> stamp_order;  // yesterday morning afternoon evening
  std::unordered_map<std::string, std::string> plural_to_singular;

  static Lexicon defaults();
  static Lexicon load(const std::string& path);
};

struct ParseContext {
  std::vector<std::string> prev_actors;  // actors of the immediately prior statement
};

std::vector<std::string> tokenize(const std::string& line);

LogicalForm parse_statement(const std::vector<std::string>& tokens, int task_id,
                            const ParseContext& ctx, const Lexicon& lex);
QuestionForm parse_question(const std::vector<std::string>& tokens, int task_id,
                            const Lexicon& lex);

inline void update_context(ParseContext& ctx, const LogicalForm& lf) {
  if (!lf.actors.empty())
    ctx.prev_actors = lf.actors;
  else if (!lf.actor.empty())
    ctx.prev_actors = {lf.actor};
}

// ---- corpus ----------------------------------------------------------------

struct StoryLine {
  int time = 0;
  std::string text;
  bool is_question = false;
  std::string answer;       // gold, verbatim
  std::vector<int> clues;   // gold supporting statement indices
};

struct Story {
  int task_id = 0;
  int index = 0;  // position within its corpus file / batch
  std::vector<StoryLine> lines;
};

std::vector<Story> load_babi_stream(std::istream& in, int task_id);
std::vector<Story> load_babi_file(const std::string& path, int task_id);
void write_babi_stream(const std::vector<Story>& stories, std::ostream& out);

}  // namespace tpr
