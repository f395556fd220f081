#ifndef LCCSEM_TERM_HPP
#define LCCSEM_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lccsem {

// Untyped syntax of the non-linear lambda calculus with pairs:
//   x | c | λx.M | M N | ⟨M, N⟩ | π1(M) | π2(M)
// Variables and constants are distinguished by kind, not by spelling.
class Term {
 public:
  enum class Kind { Var, Const, Abs, App, Pair, Proj1, Proj2 };

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term pair(Term first, Term second);
  static Term proj1(Term t);
  static Term proj2(Term t);

  // Left-nested application of `fun` to each of `args`.
  static Term apply(Term fun, std::initializer_list<Term> args);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  // Var/Const name or Abs binder.
  const std::string& name() const;

  // Abs: body(); App: fun()/arg(); Pair: first()/second(); Proj: body().
  const Term& body() const;
  const Term& fun() const { return body(); }
  const Term& arg() const;
  const Term& first() const { return body(); }
  const Term& second() const { return arg(); }

  // Syntactic identity (bound names included). Use alpha_eq for α-equivalence.
  bool same(const Term& other) const;
  bool shares_node(const Term& other) const { return node_ == other.node_; }

  std::size_t size() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  Term a{nullptr}, b{nullptr};
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::body() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }

// Application associates to the left; compound arguments are parenthesized.
std::string print_term(const Term& t);

// Accepts the printed syntax. `\` may stand for λ, `<`/`>` for ⟨/⟩ and
// `pi1`/`pi2` for π1/π2; `λx y.M` abbreviates `λx.λy.M`. Identifiers bound by
// an enclosing λ become variables, every other identifier a constant.
Term parse_term(std::string_view text);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> constants(const Term& t);

// A name of the form base_N that is not in `avoid`. Thread safe.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid = {});

}  // namespace lccsem

#endif
