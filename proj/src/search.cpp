#include "lccsem/search.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lccsem/error.hpp"
#include "lccsem/lambda.hpp"

namespace lccsem {

namespace {

struct Slot {
  std::string var;  // ?N
  Formula input;
  std::size_t position;
};

struct Resolution {
  std::size_t antecedent;
  Term term;
};

struct Item {
  Item(std::size_t begin, std::size_t end, Formula formula, Term term, Rule rule,
       std::vector<std::size_t> premises = {})
      : begin(begin), end(end), formula(std::move(formula)), term(std::move(term)), rule(rule),
        premises(std::move(premises)) {}

  std::size_t begin, end;
  Formula formula;
  Term term;
  Rule rule;
  std::vector<std::size_t> premises;
  int hyp = -1;
  const LexEntry* entry = nullptr;
  int product = -1;
  std::vector<int> open;
  std::vector<int> used;  // sorted
  std::vector<Slot> pending;
  std::map<std::string, Resolution> resolved;
  std::map<int, int> obligations;  // product id -> projections present (bit 1: first, bit 2: second)
};

struct Hyp {
  std::size_t position;
  Formula formula;
};

Term plug(const Term& t, const std::map<std::string, Resolution>& res) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = res.find(t.name());
      return it == res.end() ? t : plug(it->second.term, res);
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::Abs:
      return Term::abs(t.name(), plug(t.body(), res));
    case Term::Kind::App:
      return Term::app(plug(t.fun(), res), plug(t.arg(), res));
    case Term::Kind::Pair:
      return Term::pair(plug(t.first(), res), plug(t.second(), res));
    case Term::Kind::Proj1:
      return Term::proj1(plug(t.body(), res));
    case Term::Kind::Proj2:
      return Term::proj2(plug(t.body(), res));
  }
  return t;
}

std::string hyp_name(int id) { return "h" + std::to_string(id); }

class Chart {
 public:
  Chart(const std::vector<std::string>& words, const Lexicon& lexicon, const Formula& goal,
        const SearchBudget& budget)
      : words_(words), lexicon_(lexicon), goal_(goal), budget_(budget) {
    begins_.resize(words.size() + 1);
    ends_.resize(words.size() + 1);
    for (const auto& w : words_) entries_.push_back(lexicon_.lookup(w));
    analyse();
  }

  void run() {
    for (std::size_t p = 0; p < words_.size(); ++p)
      for (const LexEntry* e : entries_[p]) {
        Item it{p, p + 1, e->formula, Term::constant(e->constant), Rule::Lex};
        it.entry = e;
        add(std::move(it));
      }
    for (std::size_t p = 0; p <= words_.size(); ++p)
      for (const Formula& f : hyp_formulas_)
        for (std::size_t k = 0; k < budget_.max_hyps; ++k) {
          int id = static_cast<int>(hyps_.size());
          hyps_.push_back(Hyp{p, f});
          Item it{p, p, f, Term::var(hyp_name(id)), Rule::Hyp};
          it.hyp = id;
          it.open = {id};
          it.used = {id};
          add(std::move(it));
        }
    while (!agenda_.empty() && !stats.exhausted) {
      std::size_t id = agenda_.front();
      agenda_.pop_front();
      begins_[items_[id].begin].push_back(id);
      ends_[items_[id].end].push_back(id);
      unary(id);
      std::vector<std::size_t> left = ends_[items_[id].begin];
      for (std::size_t l : left) combine(l, id);
      std::vector<std::size_t> right = begins_[items_[id].end];
      for (std::size_t r : right) combine(id, r);
    }
    stats.items = items_.size();
  }

  std::vector<std::size_t> complete() const {
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < items_.size(); ++id) {
      const Item& it = items_[id];
      if (it.begin == 0 && it.end == words_.size() && it.formula == goal_ && it.open.empty() &&
          it.pending.empty() && it.obligations.empty())
        out.push_back(id);
    }
    return out;
  }

  ScriptNode export_script(std::size_t root) const {
    const Item& top = items_[root];
    std::set<std::size_t> antecedents;
    for (const auto& [var, r] : top.resolved) antecedents.insert(r.antecedent);
    std::map<int, int> hyp_numbers;
    std::map<std::size_t, std::string> labels;
    std::map<int, std::string> product_labels;
    std::function<void(std::size_t)> number = [&](std::size_t id) {
      const Item& it = items_[id];
      for (std::size_t p : it.premises) number(p);
      if (it.rule == Rule::Hyp) hyp_numbers.emplace(it.hyp, static_cast<int>(hyp_numbers.size()) + 1);
      if (antecedents.contains(id)) labels.emplace(id, "a" + std::to_string(labels.size() + 1));
      if (it.rule == Rule::EProd1) product_labels.emplace(it.product, "p" + std::to_string(product_labels.size() + 1));
    };
    // Leaves are numbered in surface order: premises are stored left to right.
    number(root);
    std::function<ScriptNode(std::size_t)> build = [&](std::size_t id) {
      const Item& it = items_[id];
      ScriptNode n;
      if (auto l = labels.find(id); l != labels.end()) n.attrs["label"] = l->second;
      switch (it.rule) {
        case Rule::Lex:
          n.head = "lex";
          n.args = {it.entry->word, print_formula(it.formula)};
          return n;
        case Rule::Hyp:
          n.head = "hyp";
          n.args = {std::to_string(hyp_numbers.at(it.hyp)), print_formula(it.formula)};
          return n;
        case Rule::IUnder:
        case Rule::IOver:
          n.attrs["hyp"] = std::to_string(hyp_numbers.at(it.hyp));
          break;
        case Rule::EAnaph:
          n.attrs["bind"] = labels.at(top.resolved.at(it.pending.front().var).antecedent);
          break;
        case Rule::EProd1:
          n.attrs["label"] = product_labels.at(it.product);
          break;
        case Rule::EProd2:
          n.attrs["of"] = product_labels.at(it.product);
          break;
        default:
          break;
      }
      n.head = std::string(rule_name(it.rule));
      for (std::size_t p : it.premises) n.children.push_back(build(p));
      return n;
    };
    return build(root);
  }

  std::size_t hyp_count(std::size_t id) const { return items_[id].used.size(); }

  struct Event {
    std::size_t anaphor_position;
    std::size_t antecedent;
    Term term;
  };
  const std::vector<Event>& events() const { return events_; }
  const Item& item(std::size_t id) const { return items_[id]; }

  SearchStats stats;

 private:
  void analyse() {
    std::function<void(const Formula&)> positive, must;
    positive = [&](const Formula& f) {
      switch (f.kind()) {
        case Formula::Kind::Under:
        case Formula::Kind::Over:
        case Formula::Kind::Anaph:
          must(f.argument());
          positive(f.result());
          break;
        case Formula::Kind::Prod:
          positive(f.left());
          positive(f.right());
          break;
        case Formula::Kind::Atom:
          break;
      }
    };
    must = [&](const Formula& f) {
      if (!must_.insert(f).second) return;
      switch (f.kind()) {
        case Formula::Kind::Under:
        case Formula::Kind::Over:
          if (std::find(hyp_formulas_.begin(), hyp_formulas_.end(), f.argument()) == hyp_formulas_.end())
            hyp_formulas_.push_back(f.argument());
          positive(f.argument());
          must(f.result());
          break;
        case Formula::Kind::Prod:
          must(f.left());
          must(f.right());
          break;
        default:
          break;
      }
    };
    for (const auto& list : entries_)
      for (const LexEntry* e : list) positive(e->formula);
    must(goal_);
  }

  static bool edges_only(const Item& it, const std::vector<Hyp>& hyps) {
    for (int h : it.open)
      if (hyps[static_cast<std::size_t>(h)].position != it.begin && hyps[static_cast<std::size_t>(h)].position != it.end)
        return false;
    return true;
  }

  std::string key(const Item& it) const {
    std::string k = std::to_string(it.begin) + ":" + std::to_string(it.end) + ":" + print_formula(it.formula) + ":" +
                    print_term(plug(it.term, it.resolved)) + ":";
    for (int h : it.open) k += std::to_string(h) + ",";
    k += ":";
    for (int h : it.used) k += std::to_string(h) + ",";
    k += ":";
    for (const auto& s : it.pending) k += s.var + ",";
    k += ":";
    for (const auto& [p, bits] : it.obligations) k += std::to_string(p) + "/" + std::to_string(bits) + ",";
    return k;
  }

  void add(Item it) {
    if (stats.exhausted) return;
    if (!edges_only(it, hyps_)) return;
    if (!keys_.emplace(key(it), items_.size()).second) return;
    if (items_.size() >= budget_.max_items) {
      stats.exhausted = true;
      return;
    }
    items_.push_back(std::move(it));
    agenda_.push_back(items_.size() - 1);
  }

  void unary(std::size_t id) {
    const Item& x = items_[id];
    if (x.rule == Rule::Lex && x.formula.kind() == Formula::Kind::Anaph) {
      std::string var = "?" + std::to_string(id);
      Item it{x.begin, x.end, x.formula.result(), Term::app(x.term, Term::var(var)), Rule::EAnaph, {id}};
      it.pending = {Slot{var, x.formula.argument(), x.begin}};
      add(std::move(it));
    }
    if (x.end > x.begin && !x.open.empty()) {
      int front = x.open.front(), back = x.open.back();
      const Hyp& hf = hyps_[static_cast<std::size_t>(front)];
      if (hf.position == x.begin) {
        Formula f = Formula::under(hf.formula, x.formula);
        if (must_.contains(f)) {
          Item it{x.begin, x.end, f, Term::abs(hyp_name(front), x.term), Rule::IUnder, {id}};
          it.hyp = front;
          inherit(it, x);
          it.open.erase(it.open.begin());
          add(std::move(it));
        }
      }
      const Item& y = items_[id];
      const Hyp& hb = hyps_[static_cast<std::size_t>(back)];
      if (hb.position == y.end) {
        Formula f = Formula::over(y.formula, hb.formula);
        if (must_.contains(f)) {
          Item it{y.begin, y.end, f, Term::abs(hyp_name(back), y.term), Rule::IOver, {id}};
          it.hyp = back;
          inherit(it, y);
          it.open.pop_back();
          add(std::move(it));
        }
      }
    }
    const Item& z = items_[id];
    if (z.formula.kind() == Formula::Kind::Prod && z.rule != Rule::IProd && z.used.empty() && z.pending.empty() &&
        z.obligations.empty()) {
      int pid = static_cast<int>(id);
      Item first{z.begin, z.end, z.formula.left(), Term::proj1(z.term), Rule::EProd1, {id}};
      first.product = pid;
      first.resolved = z.resolved;
      first.obligations[pid] = 1;
      Item second{z.end, z.end, z.formula.right(), Term::proj2(z.term), Rule::EProd2};
      second.product = pid;
      second.resolved = z.resolved;
      second.obligations[pid] = 2;
      add(std::move(first));
      add(std::move(second));
    }
  }

  static void inherit(Item& it, const Item& x) {
    it.open = x.open;
    it.used = x.used;
    it.pending = x.pending;
    it.resolved = x.resolved;
    it.obligations = x.obligations;
  }

  const std::vector<std::size_t>& nodes(std::size_t id) {
    auto it = nodes_.find(id);
    if (it != nodes_.end()) return it->second;
    std::vector<std::size_t> out{id};
    for (std::size_t p : items_[id].premises) {
      const auto& sub = nodes(p);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return nodes_.emplace(id, std::move(out)).first->second;
  }

  void combine(std::size_t lid, std::size_t rid) {
    const Item& l = items_[lid];
    const Item& r = items_[rid];
    std::vector<int> used;
    std::set_union(l.used.begin(), l.used.end(), r.used.begin(), r.used.end(), std::back_inserter(used));
    if (used.size() != l.used.size() + r.used.size() || used.size() > budget_.max_hyps) return;
    std::map<int, int> obligations = l.obligations;
    for (const auto& [p, bits] : r.obligations) {
      int& b = obligations[p];
      if (b & bits) return;
      b |= bits;
      if (b == 3) obligations.erase(p);
    }
    std::vector<int> open = l.open;
    open.insert(open.end(), r.open.begin(), r.open.end());
    for (int h : open) {
      auto pos = hyps_[static_cast<std::size_t>(h)].position;
      if (pos != l.begin && pos != r.end) return;
    }

    struct Result {
      Rule rule;
      Formula formula;
      Term term;
    };
    std::vector<Result> results;
    if (r.formula.kind() == Formula::Kind::Under && r.formula.argument() == l.formula)
      results.push_back({Rule::EUnder, r.formula.result(), Term::app(r.term, l.term)});
    if (l.formula.kind() == Formula::Kind::Over && l.formula.argument() == r.formula)
      results.push_back({Rule::EOver, l.formula.result(), Term::app(l.term, r.term)});
    Formula product = Formula::prod(l.formula, r.formula);
    if (must_.contains(product)) results.push_back({Rule::IProd, product, Term::pair(l.term, r.term)});
    if (results.empty()) return;

    // Each pending anaphor of the right item may be bound to a node of the
    // left item, or stay pending.
    std::set<std::string> open_names;
    for (int h : l.open) open_names.insert(hyp_name(h));
    std::vector<std::vector<std::optional<Resolution>>> options;
    for (const Slot& s : r.pending) {
      std::vector<std::optional<Resolution>> opts{std::nullopt};
      std::set<std::string> seen;
      for (std::size_t n : nodes(lid)) {
        const Item& cand = items_[n];
        if (cand.formula != s.input || cand.rule == Rule::EProd2) continue;
        Term t = plug(cand.term, items_[lid].resolved);
        bool ok = true;
        for (const auto& v : free_vars(t))
          if (v[0] == 'h' && !open_names.contains(v)) ok = false;
        if (!ok || !seen.insert(std::to_string(n)).second) continue;
        events_.push_back(Event{s.position, n, t});
        opts.push_back(Resolution{n, t});
      }
      options.push_back(std::move(opts));
    }

    std::vector<std::size_t> choice(options.size(), 0);
    while (true) {
      for (const auto& res : results) {
        const Item& L = items_[lid];
        const Item& R = items_[rid];
        Item it{L.begin, R.end, res.formula, res.term, res.rule, {lid, rid}};
        it.open = open;
        it.used = used;
        it.obligations = obligations;
        it.resolved = L.resolved;
        it.resolved.insert(R.resolved.begin(), R.resolved.end());
        it.pending = L.pending;
        for (std::size_t k = 0; k < R.pending.size(); ++k) {
          const auto& opt = options[k][choice[k]];
          if (opt)
            it.resolved.emplace(R.pending[k].var, *opt);
          else
            it.pending.push_back(R.pending[k]);
        }
        add(std::move(it));
      }
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }

  const std::vector<std::string>& words_;
  const Lexicon& lexicon_;
  Formula goal_;
  SearchBudget budget_;
  std::vector<std::vector<const LexEntry*>> entries_;
  std::vector<Formula> hyp_formulas_;
  std::set<Formula> must_;
  std::vector<Hyp> hyps_;
  std::deque<Item> items_;
  std::deque<std::size_t> agenda_;
  std::unordered_map<std::string, std::size_t> keys_;
  std::vector<std::vector<std::size_t>> begins_, ends_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> nodes_;
  std::vector<Event> events_;
};

}  // namespace

std::vector<Reading> derive(const std::vector<std::string>& words, const Lexicon& lexicon, const Formula& goal,
                            const SearchBudget& budget, SearchStats* stats) {
  if (words.empty()) throw NoDerivation("no derivation: empty sentence", false);
  Chart chart(words, lexicon, goal, budget);
  chart.run();

  struct Candidate {
    std::size_t hyps, size;
    std::string printed, key;
    Reading reading;
  };
  std::vector<Candidate> candidates;
  for (std::size_t id : chart.complete()) {
    ++chart.stats.complete;
    try {
      Reading r = check_derivation(chart.export_script(id), lexicon, goal);
      std::string key = alpha_key(eta_reduce(r.term));
      std::size_t size = r.derivation.size();
      candidates.push_back({chart.hyp_count(id), size, print_term(r.term), std::move(key), std::move(r)});
    } catch (const DerivationError&) {
      ++chart.stats.rejected;
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.hyps, a.size, a.printed) < std::tie(b.hyps, b.size, b.printed);
  });
  std::vector<Reading> out;
  std::unordered_set<std::string> seen;
  for (auto& c : candidates)
    if (seen.insert(c.key).second) out.push_back(std::move(c.reading));
  if (stats) *stats = chart.stats;
  if (out.empty()) {
    if (chart.stats.exhausted)
      throw NoDerivation("no derivation within budget (item limit " + std::to_string(budget.max_items) + " reached)", true);
    throw NoDerivation("no derivation: the search space is exhausted", false);
  }
  return out;
}

std::vector<AnaphorBindings> enumerate_bindings(const std::vector<std::string>& words, const Lexicon& lexicon,
                                                const SearchBudget& budget) {
  std::vector<AnaphorBindings> out;
  for (std::size_t p = 0; p < words.size(); ++p)
    for (const LexEntry* e : lexicon.lookup(words[p]))
      if (e->formula.kind() == Formula::Kind::Anaph)
        out.push_back(AnaphorBindings{p, e->word, e->formula.argument(), {}});
  if (out.empty()) return out;

  Chart chart(words, lexicon, Formula::atom("s"), budget);
  chart.run();
  std::set<std::string> seen;
  for (const auto& ev : chart.events()) {
    const auto& ante = chart.item(ev.antecedent);
    std::optional<std::pair<std::size_t, std::size_t>> span;
    if (ante.end > ante.begin) span = std::make_pair(ante.begin, ante.end - 1);
    for (auto& a : out) {
      if (a.position != ev.anaphor_position || a.input != ante.formula) continue;
      std::string k = std::to_string(a.position) + "|" + std::to_string(ante.begin) + "|" +
                      std::to_string(ante.end) + "|" + alpha_key(ev.term);
      if (seen.insert(k).second) a.candidates.push_back(AntecedentCandidate{span, ante.formula, ev.term});
    }
  }
  return out;
}

}  // namespace lccsem
