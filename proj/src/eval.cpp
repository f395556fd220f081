#include "lccsem/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "lccsem/error.hpp"

namespace lccsem {

double cosine(const TensorValue& a, const TensorValue& b) {
  if (a.shape() != b.shape())
    throw ShapeError("cosine of shapes " + shape_string(a.shape()) + " and " + shape_string(b.shape()));
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a.data()[i] * b.data()[i];
    na += a.data()[i] * a.data()[i];
    nb += b.data()[i] * b.data()[i];
  }
  if (na == 0 || nb == 0) throw EmbeddingError("cosine of a zero-magnitude tensor");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

const std::vector<std::string>& composition_model_names() {
  static const std::vector<std::string> names{
      "verb_only_vector", "additive", "multiplicative", "kronecker", "mult_mult",
      "mult_add",         "add_mult", "add_add",        "kron_add",  "kron_mult",
  };
  return names;
}

bool is_resolved_model(std::string_view model) {
  return model == "mult_mult" || model == "mult_add" || model == "add_mult" || model == "add_add" ||
         model == "kron_add" || model == "kron_mult";
}

std::string clause_model(std::string_view model) {
  if (model.starts_with("mult_")) return "multiplicative";
  if (model.starts_with("add_")) return "additive";
  if (model.starts_with("kron_")) return "kronecker";
  return std::string(model);
}

namespace {

void check_model(std::string_view model) {
  const auto& names = composition_model_names();
  if (std::find(names.begin(), names.end(), model) == names.end())
    throw ModelError("unknown composition model '" + std::string(model) + "'");
}

TensorValue clause(std::string_view model, const std::string& subj, const Phrase& p,
                   const EmbeddingSpace& space) {
  TensorValue s = space.tensor(subj), v = space.tensor(p.verb);
  if (model == "kronecker") {
    if (!p.object) throw ModelError("the kronecker model needs a transitive sentence");
    return elem_mul(outer(v, v), outer(s, space.tensor(*p.object)));
  }
  bool mult = model == "multiplicative";
  TensorValue r = mult ? elem_mul(s, v) : add(s, v);
  if (p.object) r = mult ? elem_mul(r, space.tensor(*p.object)) : add(r, space.tensor(*p.object));
  return r;
}

}  // namespace

TensorValue compose(std::string_view model, const Phrase& p, const EmbeddingSpace& space) {
  check_model(model);
  if (model == "verb_only_vector") return space.tensor(p.verb);

  if (is_resolved_model(model)) {
    if (!p.second_subject) throw ModelError(std::string(model) + " needs a second subject");
    std::string inner = clause_model(model);
    TensorValue a = clause(inner, p.subject, p, space);
    TensorValue b = clause(inner, *p.second_subject, p, space);
    return model.ends_with("_mult") ? elem_mul(a, b) : add(a, b);
  }

  TensorValue r = clause(model, p.subject, p, space);
  if (!p.second_subject) return r;
  if (model == "kronecker") throw ModelError("kronecker has no unresolved elliptical form; use kron_add or kron_mult");
  bool mult = model == "multiplicative";
  for (const std::string& w : {std::string("and"), *p.second_subject, std::string("does"), std::string("too")})
    r = mult ? elem_mul(r, space.tensor(w)) : add(r, space.tensor(w));
  return r;
}

SentenceKind parse_sentence_kind(std::string_view s) {
  if (s == "intransitive") return SentenceKind::Intransitive;
  if (s == "transitive") return SentenceKind::Transitive;
  throw ModelError("unknown sentence kind '" + std::string(s) + "' (intransitive or transitive)");
}

ToyTable toy_experiment(SentenceKind kind) {
  ToyTable t{kind, {}, {}, {}};
  std::vector<Phrase> phrases;
  if (kind == SentenceKind::Intransitive) {
    t.models = {"mult_mult", "mult_add", "add_mult", "add_add"};
    t.landmarks = {"race", "stand"};
    for (const char* second : {"", "governor", "athlete"}) {
      Phrase p{"man", "run", std::nullopt, std::nullopt};
      if (*second) p.second_subject = second;
      phrases.push_back(p);
    }
  } else {
    t.models = {"kron_mult", "kron_add", "add_mult", "add_add"};
    t.landmarks = {"pull", "depict"};
    for (const char* obj : {"sword", "picture"})
      for (const char* second : {"", "warrior", "painter"}) {
        Phrase p{"man", "draw", obj, std::nullopt};
        if (*second) p.second_subject = second;
        phrases.push_back(p);
      }
  }

  const EmbeddingSpace& space = toy_space();
  for (const Phrase& p : phrases) {
    ToyRow row{p.subject + " " + p.verb + (p.object ? " " + *p.object : ""), p, {}};
    if (p.second_subject) row.label += ", " + *p.second_subject + " does too";
    for (const std::string& m : t.models) {
      std::string model = p.second_subject ? m : clause_model(m);
      TensorValue base = compose(model, p, space);
      for (const std::string& lm : t.landmarks) {
        Phrase q = p;
        q.verb = lm;
        row.scores.push_back(cosine(base, compose(model, q, space)));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_toy_table(const ToyTable& t, bool tsv) {
  std::ostringstream out;
  std::size_t nl = t.landmarks.size();
  if (tsv) {
    out << "sentence\tmodel\tlandmark\tcosine\trounded\n";
    for (const ToyRow& r : t.rows)
      for (std::size_t m = 0; m < t.models.size(); ++m)
        for (std::size_t l = 0; l < nl; ++l) {
          double c = r.scores[m * nl + l];
          out << r.label << '\t' << t.models[m] << '\t' << t.landmarks[l] << '\t' << fmt("%.17g", c) << '\t'
              << fmt("%.2f", round2(c)) << '\n';
        }
    return out.str();
  }
  std::size_t w = 0;
  for (const ToyRow& r : t.rows) w = std::max(w, r.label.size());
  w += 2;
  std::size_t cell = 8;
  out << pad("", w);
  for (const std::string& m : t.models) out << pad(m, cell * nl);
  out << '\n' << pad("", w);
  for (std::size_t m = 0; m < t.models.size(); ++m)
    for (const std::string& l : t.landmarks) out << pad(l, cell);
  out << '\n';
  for (const ToyRow& r : t.rows) {
    out << pad(r.label, w);
    for (double c : r.scores) out << pad(fmt("%.2f", round2(c)), cell);
    out << '\n';
  }
  std::string s = out.str();
  std::string trimmed;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + '\n';
  }
  return trimmed;
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    double r = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman_rho(const std::vector<double>& predicted, const std::vector<double>& human) {
  if (predicted.size() != human.size())
    throw std::invalid_argument("spearman_rho: " + std::to_string(predicted.size()) + " predictions but " +
                                std::to_string(human.size()) + " judgments");
  if (predicted.size() < 2) throw std::invalid_argument("spearman_rho needs at least 2 values");
  std::vector<double> x = average_ranks(predicted), y = average_ranks(human);
  double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mean, dy = y[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

namespace {

std::optional<std::string> optional_field(const std::string& s) {
  if (s.empty() || s == "-") return std::nullopt;
  return s;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<DatasetEntry> load_dataset(std::istream& in, const std::string& name) {
  static const std::vector<std::string> required{"subject", "verb", "landmark", "second_subject", "label", "score"};
  std::map<std::string, std::size_t> column;
  std::vector<DatasetEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '\t');) {
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      fields.push_back(f);
    }
    if (line.back() == '\t') fields.emplace_back();
    std::string where = name + ":" + std::to_string(lineno) + ": ";
    if (!header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string col = lower(fields[i]);
        if (col != "object" && std::find(required.begin(), required.end(), col) == required.end())
          throw DatasetError(where + "unknown column '" + fields[i] + "'");
        if (!column.emplace(col, i).second) throw DatasetError(where + "duplicate column '" + fields[i] + "'");
      }
      for (const auto& r : required)
        if (!column.contains(r)) throw DatasetError(where + "header lacks column '" + r + "'");
      header = true;
      continue;
    }
    if (fields.size() != column.size())
      throw DatasetError(where + "expected " + std::to_string(column.size()) + " fields, found " +
                         std::to_string(fields.size()));
    auto get = [&](const char* c) { return fields[column.at(c)]; };
    DatasetEntry e;
    e.line = lineno;
    e.subject = lower(get("subject"));
    e.verb = lower(get("verb"));
    e.landmark = lower(get("landmark"));
    if (e.subject.empty() || e.subject == "-" || e.verb.empty() || e.verb == "-" || e.landmark.empty() ||
        e.landmark == "-")
      throw DatasetError(where + "subject, verb and landmark are required");
    if (column.contains("object")) e.object = optional_field(lower(get("object")));
    e.second_subject = optional_field(lower(get("second_subject")));
    std::string label = lower(get("label"));
    if (label == "high")
      e.label = GoldLabel::High;
    else if (label == "low")
      e.label = GoldLabel::Low;
    else
      throw DatasetError(where + "label must be HIGH or LOW, not '" + get("label") + "'");
    if (auto s = optional_field(get("score"))) {
      try {
        std::size_t used = 0;
        e.score = std::stod(*s, &used);
        if (used != s->size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw DatasetError(where + "score '" + *s + "' is not a number");
      }
    }
    entries.push_back(std::move(e));
  }
  if (!header) throw DatasetError(name + ": no entries");
  return entries;
}

std::vector<DatasetEntry> load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset '" + path + "'");
  return load_dataset(in, path);
}

DatasetReport run_dataset(const std::vector<DatasetEntry>& entries, std::string_view model,
                          const EmbeddingSpace& space, bool resolve_ellipsis) {
  check_model(model);
  if (entries.empty()) throw DatasetError("no entries");
  if (resolve_ellipsis && !is_resolved_model(model) && model != "verb_only_vector")
    throw ModelError("resolving ellipsis needs one of mult_mult, mult_add, add_mult, add_add, kron_add, kron_mult");

  DatasetReport report;
  report.model = std::string(model);
  report.resolved = resolve_ellipsis;
  for (const DatasetEntry& e : entries) {
    Phrase p{e.subject, e.verb, e.object, e.second_subject};
    if (!resolve_ellipsis && p.second_subject) {
      p.second_subject.reset();
      ++report.ignored_second_subjects;
    }
    std::string m = p.second_subject ? std::string(model) : clause_model(model);
    try {
      Phrase q = p;
      q.verb = e.landmark;
      report.results.push_back({e, cosine(compose(m, p, space), compose(m, q, space))});
    } catch (const EmbeddingError& err) {
      ++report.skipped;
      report.warnings.push_back("line " + std::to_string(e.line) + ": skipped: " + err.what());
    }
  }
  if (report.ignored_second_subjects)
    report.warnings.push_back(std::to_string(report.ignored_second_subjects) +
                              " second subjects ignored (ellipsis not resolved)");

  std::vector<double> pred, human;
  for (const auto& r : report.results)
    if (r.entry.score) {
      pred.push_back(r.cosine);
      human.push_back(*r.entry.score);
    }
  report.scored = pred.size();
  if (pred.size() >= 2) report.rho = spearman_rho(pred, human);

  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : report.results) {
    Key k{r.entry.subject, r.entry.object.value_or(""), r.entry.verb, r.entry.second_subject.value_or("")};
    auto& g = groups[k];
    (r.entry.label == GoldLabel::High ? g.first : g.second).push_back(r.cosine);
  }
  std::size_t correct = 0;
  for (const auto& [k, g] : groups) {
    if (g.first.empty() || g.second.empty()) continue;
    ++report.groups;
    if (*std::min_element(g.first.begin(), g.first.end()) > *std::max_element(g.second.begin(), g.second.end()))
      ++correct;
  }
  if (report.groups) report.accuracy = static_cast<double>(correct) / static_cast<double>(report.groups);
  return report;
}

DatasetReport run_dataset(const std::string& path, std::string_view model, const EmbeddingSpace& space,
                          bool resolve_ellipsis) {
  return run_dataset(load_dataset_file(path), model, space, resolve_ellipsis);
}

std::string format_report(const DatasetReport& r, bool tsv) {
  std::ostringstream out;
  auto opt = [](const std::optional<double>& x) { return x ? fmt("%.6f", *x) : std::string("undefined"); };
  if (tsv) {
    out << "line\tsubject\tverb\tlandmark\tobject\tsecond_subject\tlabel\tscore\tcosine\n";
    for (const auto& e : r.results)
      out << e.entry.line << '\t' << e.entry.subject << '\t' << e.entry.verb << '\t' << e.entry.landmark << '\t'
          << e.entry.object.value_or("-") << '\t' << e.entry.second_subject.value_or("-") << '\t'
          << (e.entry.label == GoldLabel::High ? "HIGH" : "LOW") << '\t'
          << (e.entry.score ? fmt("%.17g", *e.entry.score) : "-") << '\t' << fmt("%.17g", e.cosine) << '\n';
    out << "# model\t" << r.model << (r.resolved ? " (resolved)" : "") << '\n';
    out << "# rho\t" << opt(r.rho) << '\n';
    out << "# accuracy\t" << opt(r.accuracy) << '\t' << r.groups << " groups\n";
    out << "# skipped\t" << r.skipped << '\n';
    out << "# ignored_second_subjects\t" << r.ignored_second_subjects << '\n';
    return out.str();
  }
  out << "model:     " << r.model << (r.resolved ? " (ellipsis resolved)" : "") << '\n';
  out << "entries:   " << r.results.size() << " scored by the model, " << r.skipped << " skipped\n";
  out << "spearman:  " << opt(r.rho) << " over " << r.scored << " judgments\n";
  out << "accuracy:  " << opt(r.accuracy) << " over " << r.groups << " HIGH/LOW groups\n";
  if (r.ignored_second_subjects) out << "ignored:   " << r.ignored_second_subjects << " second subjects\n";
  return out.str();
}

}  // namespace lccsem
