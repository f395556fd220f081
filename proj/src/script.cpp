#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "lccsem/derivation.hpp"
#include "lccsem/error.hpp"
#include "lccsem/lambda.hpp"

namespace lccsem {

namespace {

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : text_(text) {}

  ScriptNode parse() {
    skip();
    ScriptNode root = node();
    skip();
    if (pos_ != text_.size()) fail("trailing input after derivation");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("script: " + what, pos_); }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string quoted() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string bare() {
    std::size_t start = pos_;
    bool seen_eq = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';') break;
      if (c == '=' && !seen_eq) {
        seen_eq = true;
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '"') {
          quoted_value_ = quoted();
          break;
        }
        continue;
      }
      ++pos_;
    }
    if (start == pos_) fail("expected token");
    return std::string(text_.substr(start, pos_ - start));
  }

  ScriptNode node() {
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    ScriptNode n;
    n.offset = pos_;
    ++pos_;
    skip();
    n.head = bare();
    while (true) {
      skip();
      if (pos_ >= text_.size()) fail("unbalanced parentheses");
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        return n;
      }
      if (c == '(') {
        n.children.push_back(node());
      } else if (c == '"') {
        n.args.push_back(quoted());
      } else {
        quoted_value_.reset();
        std::string tok = bare();
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
          n.args.push_back(std::move(tok));
        } else {
          std::string key = tok.substr(0, eq);
          std::string value = quoted_value_ ? *quoted_value_ : tok.substr(eq + 1);
          if (key.empty() || value.empty()) fail("malformed attribute '" + tok + "'");
          if (!n.attrs.emplace(key, value).second) fail("duplicate attribute '" + key + "'");
        }
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::string> quoted_value_;
};

bool plain_token(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
  });
}

void print_node(const ScriptNode& n, bool pretty, int depth, std::string& out) {
  out += "(" + n.head;
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    const auto& a = n.args[i];
    bool quote = !plain_token(a) || (i == 1 && (n.head == "lex" || n.head == "hyp"));
    out += quote ? " \"" + a + "\"" : " " + a;
  }
  for (const auto& [k, v] : n.attrs) out += " " + k + "=" + (plain_token(v) ? v : "\"" + v + "\"");
  for (const auto& c : n.children) {
    if (pretty) {
      out += '\n';
      out.append(static_cast<std::size_t>(depth + 1) * 2, ' ');
    } else {
      out += ' ';
    }
    print_node(c, pretty, depth + 1, out);
  }
  out += ")";
}

// Per-node bookkeeping gathered by the checker.
struct Info {
  std::size_t offset = 0;
  std::size_t first = 0, last = 0;  // leaf ordinals covered, inclusive
  bool has_leaves = false;
  std::optional<std::size_t> lex_min, lex_max;
  std::set<int> discharged;  // hypotheses discharged inside the subtree
  int term_state = 0;         // 0 unvisited, 1 in progress, 2 done
};

class Checker {
 public:
  Checker(const Lexicon& lexicon, const Formula& goal) : lexicon_(lexicon), goal_(goal) {}

  Reading run(const ScriptNode& script) {
    Derivation root = build(script);
    std::size_t ordinal = 0, position = 0;
    index(root, ordinal, position);
    root_ptr_ = &root;
    resolve_formulas(root);
    check_discharge(root);
    for (auto& [index, node] : hyps_)
      if (!discharged_.contains(index))
        throw DerivationError("dangling hypothesis " + std::to_string(index) + " (" +
                              print_formula(node->formula) + ")");
    check_products();
    compute_term(root);
    fill_terms(root);
    if (root.formula != goal_)
      throw DerivationError("derivation proves " + print_formula(root.formula) + ", goal is " +
                            print_formula(goal_));
    if (auto fv = free_vars(root.term); !fv.empty())
      throw DerivationError("dangling hypothesis variable '" + *fv.begin() + "' in the conclusion");

    std::vector<Binding> bindings;
    collect_bindings(root, bindings);
    std::vector<std::string> words = words_;
    Term normal = beta_normalize(root.term);
    return Reading{normal, std::move(root), std::move(bindings), std::move(words)};
  }

 private:
  [[noreturn]] void fail(const Derivation& d, const std::string& what) const {
    auto it = info_.find(&d);
    std::string where = std::string(rule_name(d.rule)) + " node";
    if (it != info_.end()) where += " at offset " + std::to_string(it->second.offset);
    throw DerivationError(where + ": " + what);
  }

  [[noreturn]] static void fail_at(const ScriptNode& n, const std::string& what) {
    throw DerivationError(n.head + " node at offset " + std::to_string(n.offset) + ": " + what);
  }

  static Term placeholder() { return Term::constant("?"); }

  Formula parse(const ScriptNode& n, const std::string& text) const {
    try {
      return parse_formula(text, lexicon_.atoms());
    } catch (const ParseError& e) {
      fail_at(n, e.what());
    }
  }

  Derivation build(const ScriptNode& n) {
    auto label_of = [&]() {
      auto it = n.attrs.find("label");
      return it == n.attrs.end() ? std::string() : it->second;
    };
    auto expect_attrs = [&](std::initializer_list<std::string_view> allowed) {
      for (const auto& [k, v] : n.attrs)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail_at(n, "unexpected attribute '" + k + "'");
    };
    auto int_attr = [&](const std::string& key) {
      auto it = n.attrs.find(key);
      if (it == n.attrs.end()) fail_at(n, "missing attribute '" + key + "'");
      try {
        std::size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used != it->second.size() || v <= 0) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        fail_at(n, "attribute '" + key + "' must be a positive integer");
      }
    };

    if (n.head == "lex") {
      expect_attrs({"label"});
      if (n.args.empty() || n.args.size() > 2 || !n.children.empty()) fail_at(n, "expected (lex WORD [FORMULA])");
      std::vector<const LexEntry*> entries;
      try {
        entries = lexicon_.lookup(n.args[0]);
      } catch (const LexiconError& e) {
        fail_at(n, e.what());
      }
      const LexEntry* chosen = nullptr;
      if (n.args.size() == 2) {
        Formula f = parse(n, n.args[1]);
        for (const auto* e : entries)
          if (e->formula == f) chosen = e;
        if (!chosen) fail_at(n, "no lexicon entry " + n.args[0] + " : " + print_formula(f));
      } else {
        if (entries.size() != 1) fail_at(n, "word '" + n.args[0] + "' is ambiguous, give its formula");
        chosen = entries.front();
      }
      Derivation d{Rule::Lex, chosen->formula, Term::constant(chosen->constant)};
      d.word = chosen->word;
      d.label = label_of();
      register_node(d, n);
      return d;
    }
    if (n.head == "hyp") {
      expect_attrs({"label"});
      if (n.args.size() != 2 || !n.children.empty()) fail_at(n, "expected (hyp INDEX FORMULA)");
      int index = 0;
      try {
        std::size_t used = 0;
        index = std::stoi(n.args[0], &used);
        if (used != n.args[0].size() || index <= 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail_at(n, "hypothesis index must be a positive integer");
      }
      Derivation d{Rule::Hyp, parse(n, n.args[1]), hyp_var(index)};
      d.hyp = index;
      d.label = label_of();
      register_node(d, n);
      return d;
    }

    auto rule = rule_from_name(n.head);
    if (!rule || *rule == Rule::Lex || *rule == Rule::Hyp) fail_at(n, "unknown rule '" + n.head + "'");
    if (!n.args.empty()) fail_at(n, "unexpected argument '" + n.args.front() + "'");
    Derivation d{*rule, Formula::atom("?"), placeholder()};
    d.label = label_of();
    std::size_t arity = 0;
    switch (*rule) {
      case Rule::EUnder:
      case Rule::EOver:
      case Rule::IProd:
        expect_attrs({"label"});
        arity = 2;
        break;
      case Rule::IUnder:
      case Rule::IOver:
        expect_attrs({"label", "hyp"});
        d.hyp = int_attr("hyp");
        arity = 1;
        break;
      case Rule::EProd1:
        expect_attrs({"label"});
        arity = 1;
        break;
      case Rule::EProd2:
        expect_attrs({"label", "of"});
        if (!n.attrs.contains("of")) fail_at(n, "missing attribute 'of'");
        d.of = n.attrs.at("of");
        arity = 0;
        break;
      case Rule::EAnaph:
        expect_attrs({"label", "bind"});
        if (!n.attrs.contains("bind")) fail_at(n, "missing attribute 'bind'");
        d.bind = n.attrs.at("bind");
        arity = 1;
        break;
      default:
        break;
    }
    if (n.children.size() != arity)
      fail_at(n, "expects " + std::to_string(arity) + " premise(s), got " + std::to_string(n.children.size()));
    for (const auto& c : n.children) d.premises.push_back(build(c));
    offsets_.push_back(n.offset);
    return d;
  }

  static Term hyp_var(int index) { return Term::var("x" + std::to_string(index)); }

  void register_node(const Derivation&, const ScriptNode& n) { offsets_.push_back(n.offset); }

  // Post-order walk matching build(): assigns offsets, leaf ordinals, word
  // positions, label and hypothesis tables.
  void index(Derivation& d, std::size_t& ordinal, std::size_t& position) {
    Info info;
    for (auto& p : d.premises) index(p, ordinal, position);
    info.offset = offsets_[offset_cursor_++];
    if (d.rule == Rule::Lex || d.rule == Rule::Hyp || d.rule == Rule::EProd2) {
      info.first = info.last = ordinal++;
      info.has_leaves = true;
      if (d.rule == Rule::Lex) {
        d.position = position++;
        info.lex_min = info.lex_max = d.position;
        words_.push_back(d.word);
      }
      if (d.rule == Rule::Hyp && !hyps_.emplace(d.hyp, &d).second)
        fail_at_info(d, info, "hypothesis index " + std::to_string(d.hyp) + " used twice");
    } else {
      for (const auto& p : d.premises) {
        const Info& pi = info_.at(&p);
        if (!pi.has_leaves) continue;
        if (!info.has_leaves) info.first = pi.first;
        info.last = pi.last;
        info.has_leaves = true;
        if (pi.lex_min) {
          if (!info.lex_min) info.lex_min = pi.lex_min;
          info.lex_max = pi.lex_max;
        }
      }
    }
    if (!d.label.empty() && !labels_.emplace(d.label, &d).second)
      fail_at_info(d, info, "label '" + d.label + "' used twice");
    info_[&d] = std::move(info);
  }

  [[noreturn]] static void fail_at_info(const Derivation& d, const Info& info, const std::string& what) {
    throw DerivationError(std::string(rule_name(d.rule)) + " node at offset " + std::to_string(info.offset) + ": " + what);
  }

  const Derivation& labelled(const Derivation& d, const std::string& label) const {
    auto it = labels_.find(label);
    if (it == labels_.end()) fail(d, "no node labelled '" + label + "'");
    return *it->second;
  }

  const Formula& resolve_formulas(Derivation& d) {
    if (d.rule == Rule::Lex || d.rule == Rule::Hyp) return d.formula;
    for (auto& p : d.premises) resolve_formulas(p);
    auto need = [&](bool ok, const std::string& what) {
      if (!ok) fail(d, what);
    };
    switch (d.rule) {
      case Rule::EUnder: {
        const Formula& a = d.premises[0].formula;
        const Formula& f = d.premises[1].formula;
        need(f.kind() == Formula::Kind::Under, "right premise " + print_formula(f) + " is not of the form A\\B");
        need(f.argument() == a, "left premise " + print_formula(a) + " does not match argument of " + print_formula(f));
        d.formula = f.result();
        break;
      }
      case Rule::EOver: {
        const Formula& f = d.premises[0].formula;
        const Formula& a = d.premises[1].formula;
        need(f.kind() == Formula::Kind::Over, "left premise " + print_formula(f) + " is not of the form B/A");
        need(f.argument() == a, "right premise " + print_formula(a) + " does not match argument of " + print_formula(f));
        d.formula = f.result();
        break;
      }
      case Rule::IProd:
        d.formula = Formula::prod(d.premises[0].formula, d.premises[1].formula);
        break;
      case Rule::EProd1: {
        const Formula& f = d.premises[0].formula;
        need(f.kind() == Formula::Kind::Prod, "premise " + print_formula(f) + " is not a product");
        d.formula = f.left();
        break;
      }
      case Rule::EProd2: {
        const Derivation& p = labelled(d, d.of);
        need(p.rule == Rule::EProd1, "'" + d.of + "' does not label an EProd1 node");
        const Formula& f = resolve_formulas(*labels_.at(d.of)->premises.data());
        need(f.kind() == Formula::Kind::Prod, "premise of '" + d.of + "' is not a product");
        d.formula = f.right();
        break;
      }
      case Rule::IUnder:
      case Rule::IOver: {
        auto it = hyps_.find(d.hyp);
        need(it != hyps_.end(), "no hypothesis " + std::to_string(d.hyp));
        const Formula& a = it->second->formula;
        const Formula& b = d.premises[0].formula;
        d.formula = d.rule == Rule::IUnder ? Formula::under(a, b) : Formula::over(b, a);
        break;
      }
      case Rule::EAnaph: {
        const Derivation& m = d.premises[0];
        need(m.rule == Rule::Lex, "the anaphoric premise must be a lexical item");
        need(m.formula.kind() == Formula::Kind::Anaph, "premise " + print_formula(m.formula) + " is not of the form A|B");
        d.formula = m.formula.result();
        break;
      }
      default:
        break;
    }
    return d.formula;
  }

  // Hypotheses discharged per subtree, and the side conditions of I\ and I/.
  void check_discharge(Derivation& d) {
    Info& info = info_.at(&d);
    for (auto& p : d.premises) {
      check_discharge(p);
      const auto& sub = info_.at(&p).discharged;
      info.discharged.insert(sub.begin(), sub.end());
    }
    if (d.rule != Rule::IUnder && d.rule != Rule::IOver) return;
    const Derivation& h = *hyps_.at(d.hyp);
    const Info& hi = info_.at(&h);
    const Derivation& body = d.premises[0];
    const Info& bi = info_.at(&body);
    if (!bi.has_leaves || hi.first < bi.first || hi.first > bi.last)
      fail(d, "hypothesis " + std::to_string(d.hyp) + " does not occur in its premise");
    if (discharged_.contains(d.hyp) || info.discharged.contains(d.hyp))
      fail(d, "hypothesis " + std::to_string(d.hyp) + " is discharged twice");
    // Undischarged leaves of the premise, in order.
    std::vector<std::size_t> open;
    std::set<std::size_t> closed;
    for (int k : bi.discharged) closed.insert(info_.at(hyps_.at(k)).first);
    for (std::size_t o = bi.first; o <= bi.last; ++o)
      if (!closed.contains(o)) open.push_back(o);
    if (open.size() < 2) fail(d, "discharging hypothesis " + std::to_string(d.hyp) + " would leave an empty premise");
    if (d.rule == Rule::IUnder && open.front() != hi.first)
      fail(d, "hypothesis " + std::to_string(d.hyp) + " is not the leftmost undischarged leaf");
    if (d.rule == Rule::IOver && open.back() != hi.first)
      fail(d, "hypothesis " + std::to_string(d.hyp) + " is not the rightmost undischarged leaf");
    info.discharged.insert(d.hyp);
    discharged_.insert(d.hyp);
  }

  void check_products() {
    std::map<const Derivation*, int> partners;
    std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
      for (const auto& p : d.premises) walk(p);
      if (d.rule == Rule::EProd1) partners.emplace(&d, 0);
      if (d.rule == Rule::EProd2) {
        const Derivation& p = labelled(d, d.of);
        ++partners[&p];
        if (info_.at(&d).first != info_.at(&p).last + 1)
          fail(d, "second projection does not immediately follow '" + d.of + "'");
      }
    };
    walk(*root_ptr_);
    for (const auto& [node, count] : partners)
      if (count != 1) fail(*node, "first projection needs exactly one matching EProd2, found " + std::to_string(count));
  }

  const Term& compute_term(Derivation& d) {
    Info& info = info_.at(&d);
    if (info.term_state == 2) return d.term;
    if (info.term_state == 1) fail(d, "cyclic anaphoric binding");
    info.term_state = 1;
    switch (d.rule) {
      case Rule::Lex:
      case Rule::Hyp:
        break;
      case Rule::EUnder:
        d.term = Term::app(compute_term(d.premises[1]), compute_term(d.premises[0]));
        break;
      case Rule::EOver:
        d.term = Term::app(compute_term(d.premises[0]), compute_term(d.premises[1]));
        break;
      case Rule::IProd:
        d.term = Term::pair(compute_term(d.premises[0]), compute_term(d.premises[1]));
        break;
      case Rule::EProd1:
        d.term = Term::proj1(compute_term(d.premises[0]));
        break;
      case Rule::EProd2: {
        labelled(d, d.of);
        d.term = Term::proj2(compute_term(labels_.at(d.of)->premises[0]));
        break;
      }
      case Rule::IUnder:
      case Rule::IOver:
        d.term = Term::abs(hyp_var(d.hyp).name(), compute_term(d.premises[0]));
        break;
      case Rule::EAnaph: {
        Derivation& m = d.premises[0];
        compute_term(m);
        labelled(d, d.bind);
        Derivation& a = *labels_.at(d.bind);
        const Info& ai = info_.at(&a);
        if (a.rule == Rule::EProd2) fail(d, "a second projection cannot serve as antecedent");
        if (a.formula != m.formula.argument())
          fail(d, "antecedent '" + d.bind + "' proves " + print_formula(a.formula) + ", expected " +
                      print_formula(m.formula.argument()));
        if (!ai.has_leaves || ai.last >= info_.at(&m).first)
          fail(d, "antecedent '" + d.bind + "' is not to the left of the anaphor");
        d.term = Term::app(m.term, compute_term(a));
        break;
      }
    }
    info.term_state = 2;
    return d.term;
  }

  void fill_terms(Derivation& d) {
    for (auto& p : d.premises) fill_terms(p);
    compute_term(d);
  }

  void collect_bindings(const Derivation& d, std::vector<Binding>& out) const {
    for (const auto& p : d.premises) collect_bindings(p, out);
    if (d.rule != Rule::EAnaph) return;
    const Derivation& m = d.premises[0];
    const Derivation& a = *labels_.at(d.bind);
    const Info& ai = info_.at(&a);
    std::optional<std::pair<std::size_t, std::size_t>> span;
    if (ai.lex_min) span = std::make_pair(*ai.lex_min, *ai.lex_max);
    out.push_back(Binding{m.word, m.position, d.bind, a.term, a.formula, span, a.contains_introduction()});
  }

  const Lexicon& lexicon_;
  Formula goal_;
  std::vector<std::size_t> offsets_;
  std::size_t offset_cursor_ = 0;
  std::unordered_map<const Derivation*, Info> info_;
  std::map<std::string, Derivation*> labels_;
  std::map<int, Derivation*> hyps_;
  std::set<int> discharged_;
  std::vector<std::string> words_;
  const Derivation* root_ptr_ = nullptr;
};

}  // namespace

ScriptNode parse_script(std::string_view text) { return ScriptParser(text).parse(); }

std::string print_script(const ScriptNode& node, bool pretty) {
  std::string out;
  print_node(node, pretty, 0, out);
  return out;
}

Reading check_derivation(const ScriptNode& script, const Lexicon& lexicon, const Formula& goal) {
  return Checker(lexicon, goal).run(script);
}

Reading check_derivation(std::string_view script, const Lexicon& lexicon, const Formula& goal) {
  return check_derivation(parse_script(script), lexicon, goal);
}

}  // namespace lccsem
