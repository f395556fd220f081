#include "lccsem/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "lccsem/error.hpp"

namespace lccsem {

const std::map<std::string, int, std::less<>>& semclass_arities() {
  static const std::map<std::string, int, std::less<>> arities{
      {"cn", 0},    {"adj", 1},  {"adv", 2},  {"itv", 1}, {"tv", 2},
      {"coord", 2}, {"poss", 2}, {"aux", 2},  {"prep", 2},
  };
  return arities;
}

void Lexicon::add(LexEntry entry) {
  auto cls = semclass_arities().find(entry.semclass);
  if (cls == semclass_arities().end()) throw LexiconError("unknown semclass '" + entry.semclass + "'");
  if (entry.formula.arity() != cls->second)
    throw LexiconError("semclass '" + entry.semclass + "' expects arity " + std::to_string(cls->second) +
                       " but '" + print_formula(entry.formula) + "' has arity " +
                       std::to_string(entry.formula.arity()));
  if (by_constant_.contains(entry.constant)) throw LexiconError("duplicate constant '" + entry.constant + "'");
  by_constant_.emplace(entry.constant, entries_.size());
  by_word_[entry.word].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

std::vector<const LexEntry*> Lexicon::lookup(std::string_view word) const {
  auto it = by_word_.find(word);
  if (it == by_word_.end()) throw LexiconError("unknown word '" + std::string(word) + "'");
  std::vector<const LexEntry*> out;
  for (std::size_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

const LexEntry* Lexicon::find_constant(std::string_view constant) const {
  auto it = by_constant_.find(constant);
  return it == by_constant_.end() ? nullptr : &entries_[it->second];
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Lexicon load_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  int lineno = 0;
  bool seen_entry = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.rfind("#atoms:", 0) == 0) {
      if (seen_entry) throw LexiconError("line " + std::to_string(lineno) + ": #atoms: must precede entries");
      AtomSet atoms;
      std::istringstream names(stripped.substr(7));
      for (std::string a; names >> a;) atoms.insert(a);
      if (atoms.empty()) throw LexiconError("line " + std::to_string(lineno) + ": empty atom set");
      lex.set_atoms(std::move(atoms));
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw LexiconError("line " + std::to_string(lineno) + ": expected 4 tab-separated fields, got " +
                         std::to_string(fields.size()));
    for (auto& f : fields) f = trim(f);
    try {
      lex.add(LexEntry{fields[0], parse_formula(fields[1], lex.atoms()), fields[2], fields[3]});
    } catch (const Error& e) {
      throw LexiconError("line " + std::to_string(lineno) + ": " + e.what());
    }
    seen_entry = true;
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon '" + path + "'");
  return load_lexicon(in);
}

const Lexicon& builtin_lexicon() {
  static const Lexicon lex = [] {
    std::istringstream in{std::string(builtin_lexicon_text())};
    return load_lexicon(in);
  }();
  return lex;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::istringstream in{std::string(sentence)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace lccsem
