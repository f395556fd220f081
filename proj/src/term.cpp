#include "lccsem/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>

#include "lccsem/error.hpp"

namespace lccsem {

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name)}));
}
Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Const, std::move(name)}));
}
Term Term::abs(std::string binder, Term body) {
  return Term(std::make_shared<const Node>(Node{Kind::Abs, std::move(binder), std::move(body)}));
}
Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const Node>(Node{Kind::App, {}, std::move(fun), std::move(arg)}));
}
Term Term::pair(Term first, Term second) {
  return Term(std::make_shared<const Node>(Node{Kind::Pair, {}, std::move(first), std::move(second)}));
}
Term Term::proj1(Term t) { return Term(std::make_shared<const Node>(Node{Kind::Proj1, {}, std::move(t)})); }
Term Term::proj2(Term t) { return Term(std::make_shared<const Node>(Node{Kind::Proj2, {}, std::move(t)})); }

Term Term::apply(Term fun, std::initializer_list<Term> args) {
  for (const Term& a : args) fun = app(std::move(fun), a);
  return fun;
}

bool Term::same(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Var:
    case Kind::Const:
      return name() == other.name();
    case Kind::Abs:
      return name() == other.name() && body().same(other.body());
    case Kind::App:
    case Kind::Pair:
      return node_->a.same(other.node_->a) && node_->b.same(other.node_->b);
    case Kind::Proj1:
    case Kind::Proj2:
      return body().same(other.body());
  }
  return false;
}

std::size_t Term::size() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Const:
      return 1;
    case Kind::Abs:
    case Kind::Proj1:
    case Kind::Proj2:
      return 1 + body().size();
    case Kind::App:
    case Kind::Pair:
      return 1 + node_->a.size() + node_->b.size();
  }
  return 0;
}

namespace {

void print_to(const Term& t, std::string& out);

void print_operand(const Term& t, std::string& out) {
  if (t.is(Term::Kind::App) || t.is(Term::Kind::Abs)) {
    out += '(';
    print_to(t, out);
    out += ')';
  } else {
    print_to(t, out);
  }
}

void print_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += t.name();
      break;
    case Term::Kind::Abs:
      out += "λ" + t.name() + ".";
      print_to(t.body(), out);
      break;
    case Term::Kind::App: {
      std::vector<const Term*> args;
      const Term* head = &t;
      while (head->is(Term::Kind::App)) {
        args.push_back(&head->arg());
        head = &head->fun();
      }
      print_operand(*head, out);
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        out += ' ';
        print_operand(**it, out);
      }
      break;
    }
    case Term::Kind::Pair:
      out += "⟨";
      print_to(t.first(), out);
      out += ", ";
      print_to(t.second(), out);
      out += "⟩";
      break;
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      out += t.is(Term::Kind::Proj1) ? "π1(" : "π2(";
      print_to(t.body(), out);
      out += ')';
      break;
  }
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("term: " + what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '?' || c == '#';
  }

  bool at_ident() {
    skip_space();
    return pos_ < text_.size() && ident_char(text_[pos_]) && !at_projection();
  }

  bool at_projection() const {
    auto rest = text_.substr(pos_);
    for (std::string_view p : {"pi1(", "pi2(", "pi1 (", "pi2 ("})
      if (rest.substr(0, p.size()) == p) return true;
    return false;
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_lambda() {
    skip_space();
    return text_.substr(pos_, 1) == "\\" || text_.substr(pos_, 2) == "λ";
  }

  Term parse_expr() {
    if (at_lambda()) {
      if (!accept("\\")) expect("λ");
      std::vector<std::string> binders;
      while (at_ident()) binders.push_back(ident());
      if (binders.empty()) fail("expected binder");
      expect(".");
      for (const auto& b : binders) bound_.push_back(b);
      Term body = parse_expr();
      bound_.resize(bound_.size() - binders.size());
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, std::move(body));
      return body;
    }
    Term head = parse_atom();
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      if (at_lambda()) {
        head = Term::app(std::move(head), parse_expr());
        break;
      }
      if (!starts_atom()) break;
      head = Term::app(std::move(head), parse_atom());
    }
    return head;
  }

  bool starts_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    auto rest = text_.substr(pos_);
    return rest[0] == '(' || rest[0] == '<' || rest.substr(0, 3) == "⟨" || rest.substr(0, 2) == "π" ||
           at_projection() || ident_char(rest[0]);
  }

  Term parse_atom() {
    skip_space();
    if (accept("(")) {
      Term t = parse_expr();
      expect(")");
      return t;
    }
    if (accept("<") || accept("⟨")) {
      Term a = parse_expr();
      expect(",");
      Term b = parse_expr();
      if (!accept(">")) expect("⟩");
      return Term::pair(std::move(a), std::move(b));
    }
    if (accept("π1") || accept("pi1")) return Term::proj1(parse_atom());
    if (accept("π2") || accept("pi2")) return Term::proj2(parse_atom());
    std::string name = ident();
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return Term::var(std::move(name));
    return Term::constant(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      break;
    case Term::Kind::Const:
      break;
    case Term::Kind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      break;
    case Term::Kind::App:
    case Term::Kind::Pair:
      collect_free(t.first(), bound, out);
      collect_free(t.second(), bound, out);
      break;
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      collect_free(t.body(), bound, out);
      break;
  }
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      break;
    case Term::Kind::Const:
      out.insert(t.name());
      break;
    case Term::Kind::Abs:
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      collect_constants(t.body(), out);
      break;
    case Term::Kind::App:
    case Term::Kind::Pair:
      collect_constants(t.first(), out);
      collect_constants(t.second(), out);
      break;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_to(t, out);
  return out;
}

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> constants(const Term& t) {
  std::set<std::string> out;
  collect_constants(t, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  static std::atomic<unsigned long> counter{0};
  std::string stem = base.substr(0, base.find('_'));
  while (true) {
    std::string candidate = stem + "_" + std::to_string(++counter);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace lccsem
