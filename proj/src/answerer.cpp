#include "tpr/answerer.hpp"

#include <fstream>
#include <sstream>

namespace tpr {

AnswerLexicon AnswerLexicon::defaults() {
  AnswerLexicon lex;
  lex.count_words = {"none", "one", "two",   "three", "four", "five",
                     "six",  "seven", "eight", "nine",  "ten"};
  lex.dir_letters = {{Dir4::n, "n"}, {Dir4::e, "e"}, {Dir4::s, "s"},
                     {Dir4::w, "w"}};
  return lex;
}

AnswerLexicon AnswerLexicon::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("answer lexicon: cannot open " + path);
  AnswerLexicon lex = defaults();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("answer lexicon: bad line: " + line);
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    if (key.rfind("count", 0) == 0) {
      int idx = std::stoi(key.substr(5));
      if (idx < 0 || idx >= static_cast<int>(lex.count_words.size()))
        throw std::runtime_error("answer lexicon: count out of range: " + key);
      lex.count_words[idx] = val;
    } else if (key == "empty_list") {
      lex.empty_list = val;
    } else if (key == "yes") {
      lex.yes = val;
    } else if (key == "no") {
      lex.no = val;
    } else if (key == "maybe") {
      lex.maybe = val;
    } else if (key == "dir_n") {
      lex.dir_letters[Dir4::n] = val;
    } else if (key == "dir_e") {
      lex.dir_letters[Dir4::e] = val;
    } else if (key == "dir_s") {
      lex.dir_letters[Dir4::s] = val;
    } else if (key == "dir_w") {
      lex.dir_letters[Dir4::w] = val;
    } else if (key == "list_sep") {
      lex.list_sep = val;
    } else {
      throw std::runtime_error("answer lexicon: unknown key: " + key);
    }
  }
  return lex;
}

std::string format_answer(const AnswerValue& a, QuestionKind kind,
                          const AnswerLexicon& lex) {
  (void)kind;
  switch (a.kind) {
    case AnswerValue::Kind::Entity:
    case AnswerValue::Kind::Motivation:
      return a.label;
    case AnswerValue::Kind::EntityList: {
      if (a.labels.empty()) return lex.empty_list;
      std::string out;
      for (size_t i = 0; i < a.labels.size(); ++i) {
        if (i) out += lex.list_sep;
        out += a.labels[i];
      }
      return out;
    }
    case AnswerValue::Kind::YesNoMaybe:
      switch (a.ynm) {
        case AnswerValue::YNM::yes: return lex.yes;
        case AnswerValue::YNM::no: return lex.no;
        default: return lex.maybe;
      }
    case AnswerValue::Kind::Count:
      if (a.count < 0 || a.count >= static_cast<int>(lex.count_words.size()))
        throw std::runtime_error("unmapped-count: " + std::to_string(a.count));
      return lex.count_words[a.count];
    case AnswerValue::Kind::Path: {
      std::string out;
      for (size_t i = 0; i < a.path.size(); ++i) {
        if (i) out += lex.list_sep;
        out += lex.dir_letters.at(a.path[i]);
      }
      return out;
    }
    case AnswerValue::Kind::None:
      break;
  }
  throw std::runtime_error("format_answer: empty answer");
}

std::string lexicon_key(const AnswerValue& a, QuestionKind kind) {
  (void)kind;
  switch (a.kind) {
    case AnswerValue::Kind::Count:
      return "count:" + std::to_string(a.count);
    case AnswerValue::Kind::EntityList:
      return a.labels.empty() ? "empty_list" : "";
    case AnswerValue::Kind::YesNoMaybe:
      switch (a.ynm) {
        case AnswerValue::YNM::yes: return "yes";
        case AnswerValue::YNM::no: return "no";
        default: return "maybe";
      }
    case AnswerValue::Kind::Path: {
      // A path observation teaches one letter per step only when unambiguous
      // (single-step answers).
      if (a.path.size() == 1)
        return std::string("dir:") + dir_letter(a.path[0]);
      return "";
    }
    default:
      return "";
  }
}

AnswerLexicon learn_lexicon(const std::vector<LexObservation>& observations,
                            const AnswerLexicon& base) {
  std::map<std::string, std::string> seen;
  for (const auto& [key, surface] : observations) {
    if (key.empty()) continue;
    auto it = seen.find(key);
    if (it != seen.end() && it->second != surface)
      throw std::runtime_error("conflicting-mapping for " + key + ": '" +
                               it->second + "' vs '" + surface + "'");
    seen.emplace(key, surface);
  }
  AnswerLexicon lex = base;
  for (const auto& [key, surface] : seen) {
    if (key.rfind("count:", 0) == 0) {
      int idx = std::stoi(key.substr(6));
      if (idx >= 0 && idx < static_cast<int>(lex.count_words.size()))
        lex.count_words[idx] = surface;
    } else if (key == "empty_list") {
      lex.empty_list = surface;
    } else if (key == "yes") {
      lex.yes = surface;
    } else if (key == "no") {
      lex.no = surface;
    } else if (key == "maybe") {
      lex.maybe = surface;
    } else if (key.rfind("dir:", 0) == 0 && key.size() == 5) {
      switch (key[4]) {
        case 'n': lex.dir_letters[Dir4::n] = surface; break;
        case 'e': lex.dir_letters[Dir4::e] = surface; break;
        case 's': lex.dir_letters[Dir4::s] = surface; break;
        case 'w': lex.dir_letters[Dir4::w] = surface; break;
      }
    }
  }
  return lex;
}

}  // namespace tpr
