#ifndef LCCSEM_FORMULA_HPP
#define LCCSEM_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace lccsem {

// A formula of the Lambek calculus with limited contraction.
//
//   Atom            np, n, s, ...
//   Prod(A, B)      A*B
//   Under(A, B)     A\B   (argument A on the left, result B)
//   Over(B, A)      B/A   (result B, argument A on the right)
//   Anaph(A, B)     A|B   (binds an antecedent A to its left, yields B)
//
// Formulas are immutable and cheap to copy; equality is structural.
class Formula {
 public:
  enum class Kind { Atom, Prod, Under, Over, Anaph };

  static Formula atom(std::string name);
  static Formula prod(Formula left, Formula right);
  static Formula under(Formula argument, Formula result);
  static Formula over(Formula result, Formula argument);
  static Formula anaph(Formula input, Formula output);

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  const std::string& name() const { return node_->name; }

  // Children in surface order: for B/A left() is B, for A\B left() is A.
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  // Role-based accessors for the implicational connectives.
  const Formula& argument() const;  // A in A\B, B/A, A|B
  const Formula& result() const;    // B in A\B, B/A, A|B

  // Number of arguments along the result spine of \, / and |.
  int arity() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> left, right;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, Formula left, Formula right);

  std::shared_ptr<const Node> node_;
};

using AtomSet = std::set<std::string, std::less<>>;

const AtomSet& default_atoms();

// Infix syntax: `\`, `/`, `*` and `|`, with parentheses. `|` binds loosest;
// `*`, `\` and `/` share one level and are non-associative, so nested uses
// need parentheses. Throws ParseError.
Formula parse_formula(std::string_view text, const AtomSet& atoms = default_atoms());

// Every compound operand is parenthesized, so the output always re-parses.
std::string print_formula(const Formula& f);

}  // namespace lccsem

#endif
