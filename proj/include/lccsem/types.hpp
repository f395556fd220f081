#ifndef LCCSEM_TYPES_HPP
#define LCCSEM_TYPES_HPP

#include <map>
#include <memory>
#include <string>

#include "lccsem/formula.hpp"
#include "lccsem/lexicon.hpp"
#include "lccsem/term.hpp"

namespace lccsem {

// Simple types: base types, arrows and products. Var only appears in
// inferred types when a term leaves part of its type unconstrained.
class SimpleType {
 public:
  enum class Kind { Base, Var, Arrow, Product };

  static SimpleType base(std::string name);
  static SimpleType var(int id);
  static SimpleType arrow(SimpleType from, SimpleType to);
  static SimpleType product(SimpleType first, SimpleType second);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  int id() const { return node_->id; }
  const SimpleType& left() const { return *node_->left; }
  const SimpleType& right() const { return *node_->right; }

  bool operator==(const SimpleType& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    int id = 0;
    std::shared_ptr<const SimpleType> left, right;
  };
  explicit SimpleType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string print_type(const SimpleType& t);

// Atom → base; A\B, B/A and A|B → A → B; A*B → A × B.
SimpleType type_of_formula(const Formula& f);

using TypeEnv = std::map<std::string, SimpleType, std::less<>>;

// Constant types from the lexicon formulas.
TypeEnv lexicon_types(const Lexicon& lexicon);

// Principal type by unification; free variables and constants are looked up
// in `env`. Throws TermError on a type clash or an unknown name. Type
// variables in the result are renumbered from 0 in order of appearance.
SimpleType infer_type(const Term& t, const TypeEnv& env);

}  // namespace lccsem

#endif
