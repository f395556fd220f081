#include "lccsem/lambda.hpp"

#include <algorithm>
#include <vector>

#include "lccsem/error.hpp"

namespace lccsem {

namespace {

long bound_index(const std::vector<std::string>& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i] == name) return static_cast<long>(env.size() - 1 - i);
  return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<std::string>& ea, std::vector<std::string>& eb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = bound_index(ea, a.name()), ib = bound_index(eb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Const:
      return a.name() == b.name();
    case Term::Kind::Abs: {
      ea.push_back(a.name());
      eb.push_back(b.name());
      bool r = alpha_rec(a.body(), b.body(), ea, eb);
      ea.pop_back();
      eb.pop_back();
      return r;
    }
    case Term::Kind::App:
    case Term::Kind::Pair:
      return alpha_rec(a.first(), b.first(), ea, eb) && alpha_rec(a.second(), b.second(), ea, eb);
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      return alpha_rec(a.body(), b.body(), ea, eb);
  }
  return false;
}

void key_rec(const Term& t, std::vector<std::string>& env, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      long i = bound_index(env, t.name());
      out += i >= 0 ? "#" + std::to_string(i) : "$" + t.name();
      break;
    }
    case Term::Kind::Const:
      out += t.name();
      break;
    case Term::Kind::Abs:
      out += "(L ";
      env.push_back(t.name());
      key_rec(t.body(), env, out);
      env.pop_back();
      out += ')';
      break;
    case Term::Kind::App:
    case Term::Kind::Pair:
      out += t.is(Term::Kind::App) ? "(@ " : "(P ";
      key_rec(t.first(), env, out);
      out += ' ';
      key_rec(t.second(), env, out);
      out += ')';
      break;
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      out += t.is(Term::Kind::Proj1) ? "(p1 " : "(p2 ";
      key_rec(t.body(), env, out);
      out += ')';
      break;
  }
}

bool occurs_free(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == x;
    case Term::Kind::Const:
      return false;
    case Term::Kind::Abs:
      return t.name() != x && occurs_free(t.body(), x);
    case Term::Kind::App:
    case Term::Kind::Pair:
      return occurs_free(t.first(), x) || occurs_free(t.second(), x);
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      return occurs_free(t.body(), x);
  }
  return false;
}

Term subst_rec(const Term& m, const std::string& x, const Term& n, const std::set<std::string>& fv_n) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return m.name() == x ? n : m;
    case Term::Kind::Const:
      return m;
    case Term::Kind::Abs: {
      if (m.name() == x || !occurs_free(m.body(), x)) return m;
      if (fv_n.contains(m.name())) {
        std::set<std::string> avoid = fv_n;
        for (const auto& v : free_vars(m.body())) avoid.insert(v);
        std::string y = fresh_name(m.name(), avoid);
        Term body = subst_rec(m.body(), m.name(), Term::var(y), {y});
        return Term::abs(y, subst_rec(body, x, n, fv_n));
      }
      return Term::abs(m.name(), subst_rec(m.body(), x, n, fv_n));
    }
    case Term::Kind::App: {
      Term f = subst_rec(m.fun(), x, n, fv_n), a = subst_rec(m.arg(), x, n, fv_n);
      if (f.shares_node(m.fun()) && a.shares_node(m.arg())) return m;
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Pair: {
      Term f = subst_rec(m.first(), x, n, fv_n), s = subst_rec(m.second(), x, n, fv_n);
      if (f.shares_node(m.first()) && s.shares_node(m.second())) return m;
      return Term::pair(std::move(f), std::move(s));
    }
    case Term::Kind::Proj1:
    case Term::Kind::Proj2: {
      Term b = subst_rec(m.body(), x, n, fv_n);
      if (b.shares_node(m.body())) return m;
      return m.is(Term::Kind::Proj1) ? Term::proj1(std::move(b)) : Term::proj2(std::move(b));
    }
  }
  return m;
}

class Reducer {
 public:
  explicit Reducer(std::size_t fuel) : fuel_(fuel) {}

  Term whnf(Term t) {
    while (true) {
      if (t.is(Term::Kind::App)) {
        Term f = whnf(t.fun());
        if (!f.is(Term::Kind::Abs)) return Term::app(std::move(f), t.arg());
        burn();
        t = subst(f.body(), f.name(), t.arg());
      } else if (t.is(Term::Kind::Proj1) || t.is(Term::Kind::Proj2)) {
        Term p = whnf(t.body());
        if (!p.is(Term::Kind::Pair)) return t.is(Term::Kind::Proj1) ? Term::proj1(std::move(p)) : Term::proj2(std::move(p));
        burn();
        t = t.is(Term::Kind::Proj1) ? p.first() : p.second();
      } else {
        return t;
      }
    }
  }

  Term normal(const Term& t) {
    Term w = whnf(t);
    switch (w.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Const:
        return w;
      case Term::Kind::Abs:
        return Term::abs(w.name(), normal(w.body()));
      case Term::Kind::App:
        return Term::app(normal(w.fun()), normal(w.arg()));
      case Term::Kind::Pair:
        return Term::pair(normal(w.first()), normal(w.second()));
      case Term::Kind::Proj1:
        return Term::proj1(normal(w.body()));
      case Term::Kind::Proj2:
        return Term::proj2(normal(w.body()));
    }
    return w;
  }

  Term applicative(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Const:
        return t;
      case Term::Kind::Abs:
        return Term::abs(t.name(), applicative(t.body()));
      case Term::Kind::App: {
        Term a = applicative(t.arg());
        Term f = applicative(t.fun());
        if (!f.is(Term::Kind::Abs)) return Term::app(std::move(f), std::move(a));
        burn();
        return applicative(subst(f.body(), f.name(), a));
      }
      case Term::Kind::Pair:
        return Term::pair(applicative(t.first()), applicative(t.second()));
      case Term::Kind::Proj1:
      case Term::Kind::Proj2: {
        Term p = applicative(t.body());
        if (!p.is(Term::Kind::Pair)) return t.is(Term::Kind::Proj1) ? Term::proj1(std::move(p)) : Term::proj2(std::move(p));
        burn();
        return t.is(Term::Kind::Proj1) ? p.first() : p.second();
      }
    }
    return t;
  }

 private:
  void burn() {
    if (fuel_ == 0) throw FuelExhausted("normalization did not terminate within the step bound");
    --fuel_;
  }
  std::size_t fuel_;
};

Term constants_rec(const Term& t, const ConstEnv& env, bool require_all, const std::set<std::string>& fv_env) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const: {
      auto it = env.find(t.name());
      if (it != env.end()) return it->second;
      if (require_all) throw TermError("no interpretation for constant '" + t.name() + "'");
      return t;
    }
    case Term::Kind::Abs: {
      if (fv_env.contains(t.name())) {
        std::set<std::string> avoid = fv_env;
        for (const auto& v : free_vars(t.body())) avoid.insert(v);
        std::string y = fresh_name(t.name(), avoid);
        Term body = subst(t.body(), t.name(), Term::var(y));
        return Term::abs(y, constants_rec(body, env, require_all, fv_env));
      }
      return Term::abs(t.name(), constants_rec(t.body(), env, require_all, fv_env));
    }
    case Term::Kind::App:
      return Term::app(constants_rec(t.fun(), env, require_all, fv_env),
                       constants_rec(t.arg(), env, require_all, fv_env));
    case Term::Kind::Pair:
      return Term::pair(constants_rec(t.first(), env, require_all, fv_env),
                        constants_rec(t.second(), env, require_all, fv_env));
    case Term::Kind::Proj1:
      return Term::proj1(constants_rec(t.body(), env, require_all, fv_env));
    case Term::Kind::Proj2:
      return Term::proj2(constants_rec(t.body(), env, require_all, fv_env));
  }
  return t;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::string> ea, eb;
  return alpha_rec(a, b, ea, eb);
}

std::string alpha_key(const Term& t) {
  std::vector<std::string> env;
  std::string out;
  key_rec(t, env, out);
  return out;
}

Term subst(const Term& m, const std::string& x, const Term& n) { return subst_rec(m, x, n, free_vars(n)); }

Term beta_normalize(const Term& t, std::size_t fuel, Strategy strategy) {
  Reducer r(fuel);
  return strategy == Strategy::NormalOrder ? r.normal(t) : r.applicative(t);
}

Term eta_reduce(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t;
    case Term::Kind::Abs: {
      Term b = eta_reduce(t.body());
      if (b.is(Term::Kind::App) && b.arg().is(Term::Kind::Var) && b.arg().name() == t.name() &&
          !occurs_free(b.fun(), t.name()))
        return b.fun();
      return Term::abs(t.name(), std::move(b));
    }
    case Term::Kind::App:
      return Term::app(eta_reduce(t.fun()), eta_reduce(t.arg()));
    case Term::Kind::Pair: {
      Term a = eta_reduce(t.first()), b = eta_reduce(t.second());
      if (a.is(Term::Kind::Proj1) && b.is(Term::Kind::Proj2) && alpha_eq(a.body(), b.body())) return a.body();
      return Term::pair(std::move(a), std::move(b));
    }
    case Term::Kind::Proj1:
      return Term::proj1(eta_reduce(t.body()));
    case Term::Kind::Proj2:
      return Term::proj2(eta_reduce(t.body()));
  }
  return t;
}

Term beta_eta_normalize(const Term& t, std::size_t fuel) { return eta_reduce(beta_normalize(t, fuel)); }

Term substitute_constants(const Term& t, const ConstEnv& env, bool require_all) {
  std::set<std::string> fv_env;
  for (const auto& [name, image] : env)
    for (const auto& v : free_vars(image)) fv_env.insert(v);
  return constants_rec(t, env, require_all, fv_env);
}

}  // namespace lccsem
