#ifndef LCCSEM_SEARCH_HPP
#define LCCSEM_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lccsem/derivation.hpp"

namespace lccsem {

struct SearchBudget {
  std::size_t max_hyps = 2;       // hypotheses per derivation
  std::size_t max_items = 100000; // chart items
};

struct SearchStats {
  std::size_t items = 0;
  std::size_t complete = 0;   // complete chart items exported
  std::size_t rejected = 0;   // exports the checker refused
  bool exhausted = false;     // item budget reached
};

// All distinct readings of `words` at `goal`, ordered by number of
// hypotheses, then derivation size, then printed term. Readings are
// distinct up to α-equivalence of their βη-normal terms. Every reading has
// been re-validated by check_derivation. Throws NoDerivation when empty.
std::vector<Reading> derive(const std::vector<std::string>& words, const Lexicon& lexicon, const Formula& goal,
                            const SearchBudget& budget = {}, SearchStats* stats = nullptr);

struct AntecedentCandidate {
  std::optional<std::pair<std::size_t, std::size_t>> span;  // word positions, inclusive
  Formula formula;
  Term term;
};

struct AnaphorBindings {
  std::size_t position;
  std::string word;
  Formula input;
  std::vector<AntecedentCandidate> candidates;
};

// For every anaphoric item, the left-context constituents the chart offers
// as its antecedent.
std::vector<AnaphorBindings> enumerate_bindings(const std::vector<std::string>& words, const Lexicon& lexicon,
                                                const SearchBudget& budget = {});

}  // namespace lccsem

#endif
