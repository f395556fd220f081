#ifndef LCCSEM_LEXICON_HPP
#define LCCSEM_LEXICON_HPP

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lccsem/formula.hpp"

namespace lccsem {

struct LexEntry {
  std::string word;      // token form; multi-word items joined by '_'
  Formula formula;
  std::string constant;  // abstract constant naming the word meaning
  std::string semclass;  // key into the translation tables
};

// Semantic classes understood by the translation tables, with the number of
// arguments their formula must take.
const std::map<std::string, int, std::less<>>& semclass_arities();

class Lexicon {
 public:
  Lexicon() = default;

  // Validates the entry (semclass known, arity match, fresh constant).
  void add(LexEntry entry);

  // All entries for a word, in load order. Throws LexiconError for unknown words.
  std::vector<const LexEntry*> lookup(std::string_view word) const;
  bool contains(std::string_view word) const { return by_word_.contains(word); }

  const LexEntry* find_constant(std::string_view constant) const;

  std::span<const LexEntry> entries() const { return entries_; }
  const AtomSet& atoms() const { return atoms_; }
  void set_atoms(AtomSet atoms) { atoms_ = std::move(atoms); }

 private:
  AtomSet atoms_ = default_atoms();
  std::vector<LexEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_word_;
  std::map<std::string, std::size_t, std::less<>> by_constant_;
};

// Tab-separated `word formula constant semclass`, '#' comments, and an
// optional `#atoms: a b c` header before the first entry.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::string& path);

// The lexicon shipped with the tool (data/lexicon.tsv).
const Lexicon& builtin_lexicon();
std::string_view builtin_lexicon_text();

// Splits on whitespace.
std::vector<std::string> tokenize(std::string_view sentence);

}  // namespace lccsem

#endif
