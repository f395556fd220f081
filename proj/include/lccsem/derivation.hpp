#ifndef LCCSEM_DERIVATION_HPP
#define LCCSEM_DERIVATION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lccsem/formula.hpp"
#include "lccsem/lexicon.hpp"
#include "lccsem/term.hpp"

namespace lccsem {

enum class Rule { Lex, Hyp, IProd, EProd1, EProd2, IUnder, EUnder, IOver, EOver, EAnaph };

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// A checked natural deduction tree. Terms are the raw terms composed by the
// rule schemas (not normalized).
struct Derivation {
  Derivation(Rule rule, Formula formula, Term term)
      : rule(rule), formula(std::move(formula)), term(std::move(term)) {}

  Rule rule;
  Formula formula;
  Term term;
  std::vector<Derivation> premises;
  int hyp = 0;              // Hyp: its index; IUnder/IOver: index discharged
  std::string label;
  std::string word;         // Lex
  std::size_t position = 0; // Lex: word position in the sentence
  std::string bind;         // EAnaph: label of the antecedent node
  std::string of;           // EProd2: label of the EProd1 node it pairs with

  std::size_t size() const;
  bool contains_introduction() const;
};

struct Binding {
  std::string anaphor;           // word of the anaphoric item
  std::size_t anaphor_position;
  std::string antecedent_label;
  Term antecedent;               // raw antecedent term
  Formula formula;
  // Word positions covered by the antecedent (empty for a bare hypothesis).
  std::optional<std::pair<std::size_t, std::size_t>> span;
  bool abstraction;              // antecedent contains an I\ or I/ node
};

struct Reading {
  Term term;  // β-normal
  Derivation derivation;
  std::vector<Binding> binding_map;
  std::vector<std::string> words;

  // "sloppy" if some antecedent abstracts over a hypothesis, else "strict".
  std::string kind() const;
};

// Parenthesized script syntax, see README.
struct ScriptNode {
  std::string head;
  std::vector<std::string> args;
  std::map<std::string, std::string> attrs;
  std::vector<ScriptNode> children;
  std::size_t offset = 0;
};

ScriptNode parse_script(std::string_view text);
std::string print_script(const ScriptNode& node, bool pretty = false);

// Validates every node against its rule schema and returns the reading.
// Throws DerivationError naming the offending node.
Reading check_derivation(const ScriptNode& script, const Lexicon& lexicon, const Formula& goal);
Reading check_derivation(std::string_view script, const Lexicon& lexicon, const Formula& goal);

// Script form of a checked tree; check_derivation(to_script(d)) rebuilds d.
ScriptNode to_script(const Derivation& d);

// Indented rendering, one node per line: rule, formula and term.
std::string render_tree(const Derivation& d);

}  // namespace lccsem

#endif
