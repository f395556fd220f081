#include "lccsem/semantics.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lccsem/error.hpp"

namespace lccsem {

SemType SemType::base(std::size_t rank) {
  if (rank > 4) throw ModelError("tensor types go up to rank 4");
  SemType t;
  t.rank_ = rank;
  return t;
}

SemType SemType::arrow(SemType from, SemType to) {
  SemType t;
  t.from_ = std::make_shared<const SemType>(std::move(from));
  t.to_ = std::make_shared<const SemType>(std::move(to));
  return t;
}

namespace {

constexpr std::string_view kBaseNames = "SVMCH";

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  SemType run() {
    SemType t = arrow();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return t;
  }

 private:
  SemType arrow() {
    SemType left = atom();
    skip();
    if (s_.substr(i_, 2) == "->") {
      i_ += 2;
      return SemType::arrow(std::move(left), arrow());
    }
    if (s_.substr(i_, 3) == "→") {
      i_ += 3;
      return SemType::arrow(std::move(left), arrow());
    }
    return left;
  }

  SemType atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of type");
    if (s_[i_] == '(') {
      ++i_;
      SemType t = arrow();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return t;
    }
    auto k = kBaseNames.find(s_[i_]);
    if (k == std::string_view::npos) fail("expected one of S V M C H");
    ++i_;
    return SemType::base(k);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("tensor type: " + what, i_); }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::string print_rec(const SemType& t, bool left) {
  if (!t.is_arrow()) return std::string(1, kBaseNames[t.rank()]);
  std::string s = print_rec(t.from(), true) + "->" + print_rec(t.to(), false);
  return left ? "(" + s + ")" : s;
}

constexpr std::size_t kProbeDim = 2;

TensorValue ones(std::size_t rank) {
  TensorValue t = TensorValue::zeros(Shape(rank, kProbeDim));
  for (double& x : t.data()) x = 1.0;
  return t;
}

// A closed term of type `t` built from constant tensors of ones.
Term probe(const SemType& t, TensorEnv& env) {
  if (t.is_arrow()) return Term::abs(fresh_name("probe"), probe(t.to(), env));
  std::string name = "#probe" + std::to_string(env.size());
  env.emplace(name, ones(t.rank()));
  return Term::constant(name);
}

void validate(const std::string& what, const Template& tmpl) {
  if (!free_vars(tmpl.body).empty())
    throw ModelError("template for " + what + " has free variables: " + print_term(tmpl.body));
  for (const auto& c : constants(tmpl.body))
    if (c != tmpl.placeholder && !is_operation(c))
      throw ModelError("template for " + what + " mentions unknown constant '" + c + "'");
  if (is_operation(tmpl.placeholder))
    throw ModelError("template placeholder '" + tmpl.placeholder + "' is an operation name");
  if (!tmpl.type) return;

  TensorEnv env;
  env.emplace(tmpl.placeholder, ones(tmpl.rank));
  Term program = tmpl.body;
  const SemType* t = &*tmpl.type;
  while (t->is_arrow()) {
    program = Term::app(program, probe(t->from(), env));
    t = &t->to();
  }
  Shape shape;
  try {
    shape = infer_shape(beta_normalize(program), env);
  } catch (const ShapeError& e) {
    throw ModelError("template for " + what + " does not fit type " + print_semtype(*tmpl.type) + ": " + e.what());
  } catch (const TermError& e) {
    throw ModelError("template for " + what + " does not fit type " + print_semtype(*tmpl.type) + ": " + e.what());
  }
  if (shape.size() != t->rank())
    throw ModelError("template for " + what + " yields rank " + std::to_string(shape.size()) + ", type " +
                     print_semtype(*tmpl.type) + " expects rank " + std::to_string(t->rank()));
}

}  // namespace

SemType parse_semtype(std::string_view text) { return TypeParser(text).run(); }

std::string print_semtype(const SemType& t) { return print_rec(t, false); }

void SemanticModel::set_class(const std::string& semclass, Template t) {
  validate("semclass '" + semclass + "' in model " + name_, t);
  classes_.insert_or_assign(semclass, std::move(t));
}

void SemanticModel::set_override(const std::string& constant, Template t) {
  validate("constant '" + constant + "' in model " + name_, t);
  overrides_.insert_or_assign(constant, std::move(t));
}

const Template& SemanticModel::lookup(const LexEntry& entry) const {
  if (auto it = overrides_.find(entry.constant); it != overrides_.end()) return it->second;
  auto it = classes_.find(entry.semclass);
  if (it == classes_.end())
    throw ModelError("model " + name_ + " has no template for semclass '" + entry.semclass + "'");
  return it->second;
}

namespace {

struct Row {
  const char* semclass;
  const char* body;
  std::size_t rank;
  const char* type;
};

SemanticModel make_model(const std::string& name, std::initializer_list<Row> rows) {
  SemanticModel m(name);
  for (const Row& r : rows)
    m.set_class(r.semclass, Template{parse_term(r.body), r.semclass, r.rank, parse_semtype(r.type)});
  return m;
}

std::vector<SemanticModel> make_builtins() {
  std::vector<SemanticModel> models;
  models.push_back(make_model("tensor", {
      {"cn", "cn", 1, "V"},
      {"adj", "\\v. mat_vec adj v", 2, "V->V"},
      {"adv", "\\m. hcube_mat adv m", 4, "M->M"},
      {"itv", "\\v. mat_vec itv v", 2, "V->V"},
      {"tv", "\\u v. mat_vec (cube_vec tv u) v", 3, "V->V->V"},
      {"coord", "\\P Q. mul P Q", 1, "V->V->V"},
      {"prep", "\\P Q. mul P Q", 1, "V->V->V"},
      {"poss", "\\x y. mul x y", 1, "V->V->V"},
      {"aux", "\\f. f", 1, "(V->V)->V->V"},
  }));
  models.push_back(make_model("additive", {
      {"cn", "cn", 1, "V"},
      {"adj", "\\v. add adj v", 1, "V->V"},
      {"adv", "\\m. add adv m", 1, "V->V"},
      {"itv", "\\v. add itv v", 1, "V->V"},
      {"tv", "\\u v. add (add tv u) v", 1, "V->V->V"},
      {"coord", "\\P Q. mul P Q", 1, "V->V->V"},
      {"prep", "\\P Q. mul P Q", 1, "V->V->V"},
      {"poss", "\\x y. mul x y", 1, "V->V->V"},
      {"aux", "\\f. f", 1, "(V->V)->V->V"},
  }));
  models.push_back(make_model("kronecker", {
      {"cn", "cn", 1, "V"},
      {"adj", "\\v. mul adj v", 1, "V->V"},
      {"adv", "\\m. mul adv m", 1, "V->V"},
      {"itv", "\\v. mul itv v", 1, "V->V"},
      {"tv", "\\u v. mul tv (outer v u)", 2, "V->V->M"},
      {"coord", "\\P Q. mul P Q", 1, "V->V->V"},
      {"prep", "\\P Q. mul P Q", 1, "V->V->V"},
      {"poss", "\\x y. mul x y", 1, "V->V->V"},
      {"aux", "\\f. f", 1, "(V->V)->V->V"},
  }));
  return models;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const std::vector<SemanticModel>& builtin_models() {
  static const std::vector<SemanticModel> models = make_builtins();
  return models;
}

const SemanticModel& builtin_model(std::string_view name) {
  for (const auto& m : builtin_models())
    if (m.name() == name) return m;
  throw ModelError("unknown model '" + std::string(name) + "' (builtin: tensor, additive, kronecker)");
}

SemanticModel load_model(std::istream& in, std::string name) {
  SemanticModel model(name);
  std::string line;
  std::size_t lineno = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = name + ":" + std::to_string(lineno) + ": ";
    std::string t = trim(line);
    if (t.starts_with("#base:")) {
      if (seen_row) throw ModelError(where + "#base must precede the templates");
      SemanticModel base = builtin_model(trim(std::string_view(t).substr(6)));
      for (const auto& [k, v] : base.classes()) model.set_class(k, v);
      continue;
    }
    if (t.empty() || t[0] == '#') continue;
    seen_row = true;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '\t');) fields.push_back(trim(f));
    if (fields.size() < 2 || fields.size() > 4)
      throw ModelError(where + "expected `semclass<TAB>template[<TAB>rank[<TAB>type]]`");

    bool is_override = fields[0].starts_with('@');
    std::string key = is_override ? fields[0].substr(1) : fields[0];
    if (key.empty()) throw ModelError(where + "empty semclass");
    if (!is_override && !semclass_arities().contains(key))
      throw ModelError(where + "unknown semclass '" + key + "'");

    try {
      Template tmpl{parse_term(fields[1]), key, 1, std::nullopt};
      if (fields.size() >= 3) {
        std::size_t used = 0;
        tmpl.rank = std::stoul(fields[2], &used);
        if (used != fields[2].size() || tmpl.rank > 4) throw ModelError("bad rank '" + fields[2] + "'");
      }
      if (fields.size() == 4) tmpl.type = parse_semtype(fields[3]);
      if (is_override)
        model.set_override(key, std::move(tmpl));
      else
        model.set_class(key, std::move(tmpl));
    } catch (const std::invalid_argument&) {
      throw ModelError(where + "bad rank '" + fields[2] + "'");
    } catch (const Error& e) {
      throw ModelError(where + e.what());
    }
  }
  return model;
}

SemanticModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  return load_model(in, name);
}

void check_coverage(const SemanticModel& model, const Lexicon& lexicon) {
  for (const auto& e : lexicon.entries()) model.lookup(e);
}

Term translate(const Term& t, const SemanticModel& model, const Lexicon& lexicon, bool normalize) {
  ConstEnv env;
  for (const auto& c : constants(t)) {
    if (is_operation(c)) throw ModelError("constant '" + c + "' collides with a tensor operation");
    const LexEntry* entry = lexicon.find_constant(c);
    if (!entry) throw ModelError("constant '" + c + "' has no lexicon entry");
    const Template& tmpl = model.lookup(*entry);
    env.emplace(c, substitute_constants(tmpl.body, ConstEnv{{tmpl.placeholder, Term::constant(c)}}, false));
  }
  Term out = substitute_constants(t, env);
  return normalize ? beta_normalize(out) : out;
}

TensorEnv embedding_env(const Term& t, const SemanticModel& model, const Lexicon& lexicon,
                        const EmbeddingSpace& space, const TensorEnv* store) {
  TensorEnv env;
  for (const auto& c : constants(t)) {
    if (is_operation(c)) continue;
    const LexEntry* entry = lexicon.find_constant(c);
    if (!entry) throw ModelError("constant '" + c + "' has no lexicon entry");
    std::size_t rank = model.lookup(*entry).rank;
    if (store) {
      if (auto it = store->find(c); it != store->end()) {
        if (it->second.rank() != rank)
          throw ModelError("tensor for '" + c + "' has rank " + std::to_string(it->second.rank()) + ", model " +
                           model.name() + " expects " + std::to_string(rank));
        env.emplace(c, it->second);
        continue;
      }
    }
    std::string key = space.contains(c) ? c : entry->word;
    if (!space.contains(key))
      throw EmbeddingError("no embedding for word '" + entry->word + "' (constant " + c + ")");
    if (rank == 0) throw ModelError("constant '" + c + "' needs a scalar; supply it explicitly");
    TensorValue w = space.tensor(key);
    TensorValue v = w;
    for (std::size_t r = 1; r < rank; ++r) v = outer(v, w);
    env.emplace(c, std::move(v));
  }
  return env;
}

SentenceMeaning interpret_reading(const Reading& reading, const Lexicon& lexicon, const SemanticModel& model,
                                  const EmbeddingSpace& space, const TensorEnv* store) {
  Term program = translate(reading.term, model, lexicon, true);
  TensorEnv env = embedding_env(program, model, lexicon, space, store);
  TensorValue value = evaluate(program, env);
  return SentenceMeaning{reading, program, std::move(value), model.name()};
}

std::vector<SentenceMeaning> interpret_sentence(const std::vector<std::string>& words, const Lexicon& lexicon,
                                                const Formula& goal, const SemanticModel& model,
                                                const EmbeddingSpace& space, const SearchBudget& budget,
                                                const TensorEnv* store) {
  std::vector<SentenceMeaning> out;
  for (const Reading& r : derive(words, lexicon, goal, budget))
    out.push_back(interpret_reading(r, lexicon, model, space, store));
  return out;
}

}  // namespace lccsem
