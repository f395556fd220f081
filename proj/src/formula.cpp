#include "lccsem/formula.hpp"

#include <cctype>

#include "lccsem/error.hpp"

namespace lccsem {

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

Formula Formula::binary(Kind kind, Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, std::make_shared<const Formula>(std::move(left)),
           std::make_shared<const Formula>(std::move(right))}));
}

Formula Formula::prod(Formula left, Formula right) { return binary(Kind::Prod, std::move(left), std::move(right)); }
Formula Formula::under(Formula argument, Formula result) {
  return binary(Kind::Under, std::move(argument), std::move(result));
}
Formula Formula::over(Formula result, Formula argument) {
  return binary(Kind::Over, std::move(result), std::move(argument));
}
Formula Formula::anaph(Formula input, Formula output) {
  return binary(Kind::Anaph, std::move(input), std::move(output));
}

const Formula& Formula::argument() const {
  switch (kind()) {
    case Kind::Under:
    case Kind::Anaph:
      return left();
    case Kind::Over:
      return right();
    default:
      throw std::logic_error("argument() of a non-implicational formula");
  }
}

const Formula& Formula::result() const {
  switch (kind()) {
    case Kind::Under:
    case Kind::Anaph:
      return right();
    case Kind::Over:
      return left();
    default:
      throw std::logic_error("result() of a non-implicational formula");
  }
}

int Formula::arity() const {
  switch (kind()) {
    case Kind::Under:
    case Kind::Over:
    case Kind::Anaph:
      return 1 + result().arity();
    default:
      return 0;
  }
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  if (is_atom()) return name() == other.name();
  return left() == other.left() && right() == other.right();
}

bool Formula::operator<(const Formula& other) const {
  if (kind() != other.kind()) return kind() < other.kind();
  if (is_atom()) return name() < other.name();
  if (left() != other.left()) return left() < other.left();
  return right() < other.right();
}

const AtomSet& default_atoms() {
  static const AtomSet atoms{"n", "np", "s"};
  return atoms;
}

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const AtomSet& atoms) : text_(text), atoms_(atoms) {}

  Formula parse() {
    Formula f = parse_anaph();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("formula: " + what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Formula parse_anaph() {
    Formula left = parse_binary();
    if (peek() == '|') {
      ++pos_;
      Formula right = parse_binary();
      if (peek() == '|') fail("'|' is non-associative; add parentheses");
      return Formula::anaph(std::move(left), std::move(right));
    }
    return left;
  }

  Formula parse_binary() {
    Formula left = parse_primary();
    char op = peek();
    if (op != '*' && op != '\\' && op != '/') return left;
    ++pos_;
    Formula right = parse_primary();
    char next = peek();
    if (next == '*' || next == '\\' || next == '/')
      fail(std::string("operator '") + next + "' cannot follow '" + op + "' without parentheses");
    switch (op) {
      case '*':
        return Formula::prod(std::move(left), std::move(right));
      case '\\':
        return Formula::under(std::move(left), std::move(right));
      default:
        return Formula::over(std::move(left), std::move(right));
    }
  }

  Formula parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Formula inner = parse_anaph();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    std::string name(text_.substr(start, pos_ - start));
    if (!atoms_.contains(name)) {
      pos_ = start;
      fail("unknown atom '" + name + "'");
    }
    return Formula::atom(std::move(name));
  }

  std::string_view text_;
  const AtomSet& atoms_;
  std::size_t pos_ = 0;
};

std::string operand(const Formula& f) { return f.is_atom() ? f.name() : "(" + print_formula(f) + ")"; }

}  // namespace

Formula parse_formula(std::string_view text, const AtomSet& atoms) { return FormulaParser(text, atoms).parse(); }

std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f.name();
    case Formula::Kind::Prod:
      return operand(f.left()) + "*" + operand(f.right());
    case Formula::Kind::Under:
      return operand(f.left()) + "\\" + operand(f.right());
    case Formula::Kind::Over:
      return operand(f.left()) + "/" + operand(f.right());
    case Formula::Kind::Anaph:
      return operand(f.left()) + "|" + operand(f.right());
  }
  return {};
}

}  // namespace lccsem
