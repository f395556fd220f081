#include "lccsem/types.hpp"

#include <optional>

#include "lccsem/error.hpp"

namespace lccsem {

SimpleType SimpleType::base(std::string name) {
  return SimpleType(std::make_shared<const Node>(Node{Kind::Base, std::move(name), 0, nullptr, nullptr}));
}

SimpleType SimpleType::var(int id) {
  return SimpleType(std::make_shared<const Node>(Node{Kind::Var, {}, id, nullptr, nullptr}));
}

SimpleType SimpleType::arrow(SimpleType from, SimpleType to) {
  return SimpleType(std::make_shared<const Node>(Node{Kind::Arrow, {}, 0, std::make_shared<const SimpleType>(std::move(from)),
                                                      std::make_shared<const SimpleType>(std::move(to))}));
}

SimpleType SimpleType::product(SimpleType first, SimpleType second) {
  return SimpleType(std::make_shared<const Node>(Node{Kind::Product, {}, 0,
                                                      std::make_shared<const SimpleType>(std::move(first)),
                                                      std::make_shared<const SimpleType>(std::move(second))}));
}

bool SimpleType::operator==(const SimpleType& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Base:
      return name() == o.name();
    case Kind::Var:
      return id() == o.id();
    default:
      return left() == o.left() && right() == o.right();
  }
}

namespace {

std::string print_rec(const SimpleType& t, bool nested) {
  switch (t.kind()) {
    case SimpleType::Kind::Base:
      return t.name();
    case SimpleType::Kind::Var:
      return "'t" + std::to_string(t.id());
    case SimpleType::Kind::Arrow: {
      std::string s = print_rec(t.left(), true) + " -> " + print_rec(t.right(), false);
      return nested ? "(" + s + ")" : s;
    }
    case SimpleType::Kind::Product:
      return "(" + print_rec(t.left(), true) + " x " + print_rec(t.right(), true) + ")";
  }
  return {};
}

class Inference {
 public:
  explicit Inference(const TypeEnv& env) : env_(env) {}

  SimpleType run(const Term& t) {
    std::map<std::string, SimpleType> locals;
    SimpleType ty = infer(t, locals);
    std::map<int, int> rename;
    return canon(resolve(ty), rename);
  }

 private:
  SimpleType fresh() { return SimpleType::var(next_++); }

  SimpleType resolve(const SimpleType& t) {
    switch (t.kind()) {
      case SimpleType::Kind::Var: {
        auto it = bound_.find(t.id());
        return it == bound_.end() ? t : resolve(it->second);
      }
      case SimpleType::Kind::Arrow:
        return SimpleType::arrow(resolve(t.left()), resolve(t.right()));
      case SimpleType::Kind::Product:
        return SimpleType::product(resolve(t.left()), resolve(t.right()));
      default:
        return t;
    }
  }

  SimpleType walk(const SimpleType& t) {
    if (t.kind() != SimpleType::Kind::Var) return t;
    auto it = bound_.find(t.id());
    return it == bound_.end() ? t : walk(it->second);
  }

  bool occurs(int id, const SimpleType& t) {
    SimpleType w = walk(t);
    if (w.kind() == SimpleType::Kind::Var) return w.id() == id;
    if (w.kind() == SimpleType::Kind::Base) return false;
    return occurs(id, w.left()) || occurs(id, w.right());
  }

  void unify(const SimpleType& a, const SimpleType& b, const Term& where) {
    SimpleType x = walk(a), y = walk(b);
    if (x.kind() == SimpleType::Kind::Var) {
      if (y.kind() == SimpleType::Kind::Var && y.id() == x.id()) return;
      if (occurs(x.id(), y)) clash(x, y, where);
      bound_.emplace(x.id(), y);
      return;
    }
    if (y.kind() == SimpleType::Kind::Var) return unify(y, x, where);
    if (x.kind() != y.kind()) clash(x, y, where);
    if (x.kind() == SimpleType::Kind::Base) {
      if (x.name() != y.name()) clash(x, y, where);
      return;
    }
    unify(x.left(), y.left(), where);
    unify(x.right(), y.right(), where);
  }

  [[noreturn]] void clash(const SimpleType& a, const SimpleType& b, const Term& where) {
    throw TermError("type clash in `" + print_term(where) + "`: " + print_type(resolve(a)) + " vs " +
                    print_type(resolve(b)));
  }

  SimpleType infer(const Term& t, std::map<std::string, SimpleType>& locals) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        if (auto it = locals.find(t.name()); it != locals.end()) return it->second;
        [[fallthrough]];
      }
      case Term::Kind::Const: {
        auto it = env_.find(t.name());
        if (it == env_.end()) throw TermError("no type for '" + t.name() + "'");
        return it->second;
      }
      case Term::Kind::Abs: {
        SimpleType a = fresh();
        std::optional<SimpleType> saved;
        if (auto it = locals.find(t.name()); it != locals.end()) saved = it->second;
        locals.insert_or_assign(t.name(), a);
        SimpleType b = infer(t.body(), locals);
        if (saved)
          locals.insert_or_assign(t.name(), *saved);
        else
          locals.erase(t.name());
        return SimpleType::arrow(a, b);
      }
      case Term::Kind::App: {
        SimpleType f = infer(t.fun(), locals);
        SimpleType x = infer(t.arg(), locals);
        SimpleType r = fresh();
        unify(f, SimpleType::arrow(x, r), t);
        return r;
      }
      case Term::Kind::Pair:
        return SimpleType::product(infer(t.first(), locals), infer(t.second(), locals));
      case Term::Kind::Proj1:
      case Term::Kind::Proj2: {
        SimpleType p = infer(t.body(), locals);
        SimpleType a = fresh(), b = fresh();
        unify(p, SimpleType::product(a, b), t);
        return t.kind() == Term::Kind::Proj1 ? a : b;
      }
    }
    throw TermError("unreachable");
  }

  SimpleType canon(const SimpleType& t, std::map<int, int>& rename) {
    switch (t.kind()) {
      case SimpleType::Kind::Var: {
        auto [it, _] = rename.emplace(t.id(), static_cast<int>(rename.size()));
        return SimpleType::var(it->second);
      }
      case SimpleType::Kind::Arrow: {
        SimpleType l = canon(t.left(), rename);
        return SimpleType::arrow(l, canon(t.right(), rename));
      }
      case SimpleType::Kind::Product: {
        SimpleType l = canon(t.left(), rename);
        return SimpleType::product(l, canon(t.right(), rename));
      }
      default:
        return t;
    }
  }

  const TypeEnv& env_;
  std::map<int, SimpleType> bound_;
  int next_ = 0;
};

}  // namespace

std::string print_type(const SimpleType& t) { return print_rec(t, false); }

SimpleType type_of_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return SimpleType::base(f.name());
    case Formula::Kind::Prod:
      return SimpleType::product(type_of_formula(f.left()), type_of_formula(f.right()));
    default:
      return SimpleType::arrow(type_of_formula(f.argument()), type_of_formula(f.result()));
  }
}

TypeEnv lexicon_types(const Lexicon& lexicon) {
  TypeEnv env;
  for (const auto& e : lexicon.entries()) env.insert_or_assign(e.constant, type_of_formula(e.formula));
  return env;
}

SimpleType infer_type(const Term& t, const TypeEnv& env) { return Inference(env).run(t); }

}  // namespace lccsem
