#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "lccsem/derivation.hpp"
#include "lccsem/embeddings.hpp"
#include "lccsem/error.hpp"
#include "lccsem/eval.hpp"
#include "lccsem/lexicon.hpp"
#include "lccsem/search.hpp"
#include "lccsem/semantics.hpp"

using namespace lccsem;

namespace {

struct Options {
  std::string lexicon;
  std::string goal = "s";
  std::string model = "tensor";
  std::string space;
  std::string format = "text";
  std::size_t max_hyps = SearchBudget{}.max_hyps;
  std::size_t max_items = SearchBudget{}.max_items;
  std::string output = "table";
  std::optional<std::size_t> random_dim;
  std::uint64_t seed = 1;
  bool scripts = false;
  bool bindings = false;
  bool dump = false;
  std::string sentence;
  std::string script_path;
  std::string kind = "intransitive";
  std::string data;
  std::string eval_model = "mult_mult";
  bool resolve = false;
};

Lexicon get_lexicon(const Options& o) { return o.lexicon.empty() ? builtin_lexicon() : load_lexicon_file(o.lexicon); }

SearchBudget get_budget(const Options& o) { return SearchBudget{o.max_hyps, o.max_items}; }

SpaceFormat get_format(const Options& o) { return o.format == "binary" ? SpaceFormat::Binary : SpaceFormat::Text; }

EmbeddingSpace get_space(const Options& o) {
  if (o.space.empty()) return toy_space();
  std::vector<std::string> warnings;
  EmbeddingSpace s = load_space_file(o.space, get_format(o), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return s;
}

SemanticModel get_model(const Options& o) {
  for (const auto& m : builtin_models())
    if (m.name() == o.model) return m;
  return load_model_file(o.model);
}

bool tsv(const Options& o) { return o.output == "tsv"; }

std::string label(const Reading& r) { return r.binding_map.empty() ? "" : r.kind(); }

std::string indent(const std::string& text, const std::string& prefix) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += prefix + line + '\n';
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n') c = ' ';
  return s;
}

std::string span_text(const std::optional<std::pair<std::size_t, std::size_t>>& span,
                      const std::vector<std::string>& words) {
  if (!span) return "(hypothesis)";
  std::string s;
  for (std::size_t i = span->first; i <= span->second && i < words.size(); ++i) s += (s.empty() ? "" : " ") + words[i];
  return s;
}

void print_reading(const Options& o, const Reading& r, std::size_t index) {
  if (tsv(o)) {
    std::cout << index << '\t' << (label(r).empty() ? "-" : label(r)) << '\t' << print_term(r.term);
    if (o.scripts) std::cout << '\t' << print_script(to_script(r.derivation));
    std::cout << '\n';
    return;
  }
  std::cout << "reading " << index;
  if (!label(r).empty()) std::cout << " (" << label(r) << ")";
  std::cout << "\n  term: " << print_term(r.term) << '\n';
  for (const Binding& b : r.binding_map)
    std::cout << "  bind: " << b.anaphor << " @" << b.anaphor_position << " <- " << span_text(b.span, r.words)
              << " : " << print_formula(b.formula) << (b.abstraction ? " (abstracted)" : "") << '\n';
  std::cout << indent(render_tree(r.derivation), "  ");
  if (o.scripts) std::cout << "  script:\n" << indent(print_script(to_script(r.derivation), true), "    ");
}

int cmd_derive(const Options& o) {
  Lexicon lex = get_lexicon(o);
  std::vector<std::string> words = tokenize(o.sentence);
  Formula goal = parse_formula(o.goal, lex.atoms());
  if (o.bindings) {
    for (const auto& a : enumerate_bindings(words, lex, get_budget(o))) {
      for (const auto& c : a.candidates) {
        if (tsv(o))
          std::cout << a.position << '\t' << a.word << '\t' << span_text(c.span, words) << '\t'
                    << print_formula(c.formula) << '\t' << print_term(c.term) << '\n';
        else
          std::cout << a.word << " @" << a.position << " <- " << span_text(c.span, words) << " : "
                    << print_formula(c.formula) << " = " << print_term(c.term) << '\n';
      }
    }
    return 0;
  }
  SearchStats stats;
  auto readings = derive(words, lex, goal, get_budget(o), &stats);
  if (tsv(o)) std::cout << "reading\tkind\tterm" << (o.scripts ? "\tscript" : "") << '\n';
  for (std::size_t i = 0; i < readings.size(); ++i) print_reading(o, readings[i], i + 1);
  if (!tsv(o)) std::cout << readings.size() << (readings.size() == 1 ? " reading" : " readings") << ", "
                         << stats.items << " chart items\n";
  return 0;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

int cmd_check(const Options& o) {
  Lexicon lex = get_lexicon(o);
  Reading r = check_derivation(read_input(o.script_path), lex, parse_formula(o.goal, lex.atoms()));
  if (tsv(o)) {
    std::cout << (label(r).empty() ? "-" : label(r)) << '\t' << print_term(r.term) << '\n';
    return 0;
  }
  std::cout << "valid derivation of " << o.goal;
  if (!label(r).empty()) std::cout << " (" << label(r) << ")";
  std::cout << "\n  term: " << print_term(r.term) << '\n' << indent(render_tree(r.derivation), "  ");
  return 0;
}

int cmd_interpret(const Options& o) {
  Lexicon lex = get_lexicon(o);
  SemanticModel model = get_model(o);
  EmbeddingSpace space;
  if (o.random_dim) {
    std::vector<std::string> words;
    for (const auto& e : lex.entries()) words.push_back(e.constant);
    space = random_space(words, *o.random_dim, o.seed);
  } else {
    space = get_space(o);
  }
  auto meanings = interpret_sentence(tokenize(o.sentence), lex, parse_formula(o.goal, lex.atoms()), model, space,
                                     get_budget(o));
  if (tsv(o)) std::cout << "reading\tkind\tterm\ttensor_term\tshape\tvalues\n";
  for (std::size_t i = 0; i < meanings.size(); ++i) {
    const auto& m = meanings[i];
    std::string values;
    for (double x : m.value.data()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      values += (values.empty() ? "" : " ") + std::string(buf);
    }
    if (tsv(o)) {
      std::cout << i + 1 << '\t' << (label(m.reading).empty() ? "-" : label(m.reading)) << '\t'
                << print_term(m.reading.term) << '\t' << print_term(m.tensor_term) << '\t'
                << shape_string(m.value.shape()) << '\t' << values << '\n';
      continue;
    }
    std::cout << "reading " << i + 1;
    if (!label(m.reading).empty()) std::cout << " (" << label(m.reading) << ")";
    std::cout << "\n  term:   " << print_term(m.reading.term) << "\n  " << m.model
              << ": " << print_term(m.tensor_term) << "\n  value:  " << shape_string(m.value.shape()) << " ["
              << values << "]\n";
    if (o.dump) std::cout << indent(dump(m.value), "    ");
  }
  return 0;
}

int cmd_eval_toy(const Options& o) {
  std::cout << format_toy_table(toy_experiment(parse_sentence_kind(o.kind)), tsv(o));
  return 0;
}

int cmd_eval_dataset(const Options& o) {
  DatasetReport r = run_dataset(o.data, o.eval_model, get_space(o), o.resolve);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << format_report(r, tsv(o));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambek calculus with anaphoric copying: derivations, tensor semantics and evaluation"};
  app.require_subcommand(1);
  Options o;

  auto add_lexicon = [&](CLI::App* c) {
    c->add_option("--lexicon", o.lexicon, "Lexicon TSV (default: the shipped lexicon)")->check(CLI::ExistingFile);
  };
  auto add_search = [&](CLI::App* c) {
    c->add_option("--goal", o.goal, "Goal formula")->capture_default_str();
    c->add_option("--max-hyps", o.max_hyps, "Hypotheses per derivation")->capture_default_str();
    c->add_option("--max-items", o.max_items, "Chart item budget")->capture_default_str();
  };
  auto add_space = [&](CLI::App* c) {
    c->add_option("--space", o.space, "Embedding file (default: the built-in toy space)")->check(CLI::ExistingFile);
    c->add_option("--format", o.format, "Embedding file format")
        ->check(CLI::IsMember({"text", "binary"}))
        ->capture_default_str();
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--output", o.output, "Output format")->check(CLI::IsMember({"table", "tsv"}))->capture_default_str();
  };

  auto* derive_cmd = app.add_subcommand("derive", "Find every reading of a sentence");
  derive_cmd->add_option("sentence", o.sentence, "Whitespace-separated words")->required();
  add_lexicon(derive_cmd);
  add_search(derive_cmd);
  add_output(derive_cmd);
  derive_cmd->add_flag("--script", o.scripts, "Also print each derivation as a checkable script");
  derive_cmd->add_flag("--bindings", o.bindings, "List the antecedent candidates of each anaphor instead");

  auto* check_cmd = app.add_subcommand("check", "Validate a derivation script");
  check_cmd->add_option("script", o.script_path, "Script file, or - for standard input")->required();
  add_lexicon(check_cmd);
  check_cmd->add_option("--goal", o.goal, "Goal formula")->capture_default_str();
  add_output(check_cmd);

  auto* interpret_cmd = app.add_subcommand("interpret", "Compute the tensor meaning of every reading");
  interpret_cmd->add_option("sentence", o.sentence, "Whitespace-separated words")->required();
  add_lexicon(interpret_cmd);
  add_search(interpret_cmd);
  add_space(interpret_cmd);
  add_output(interpret_cmd);
  interpret_cmd->add_option("--model", o.model, "tensor, additive, kronecker or a model file")->capture_default_str();
  interpret_cmd->add_option("--random", o.random_dim, "Use random vectors of this dimension for every word");
  interpret_cmd->add_option("--seed", o.seed, "Seed for --random")->capture_default_str();
  interpret_cmd->add_flag("--dump", o.dump, "Print the full value dump");

  auto* toy_cmd = app.add_subcommand("eval-toy", "Cosine grid of the toy disambiguation experiment");
  toy_cmd->add_option("--kind", o.kind, "Sentence kind")
      ->check(CLI::IsMember({"intransitive", "transitive"}))
      ->capture_default_str();
  add_output(toy_cmd);

  auto* data_cmd = app.add_subcommand("eval-dataset", "Score a disambiguation dataset");
  data_cmd->add_option("--data", o.data, "Dataset TSV")->required()->check(CLI::ExistingFile);
  add_space(data_cmd);
  data_cmd->add_option("--model", o.eval_model, "Composition model")
      ->check(CLI::IsMember(composition_model_names()))
      ->capture_default_str();
  data_cmd->add_flag("--resolve", o.resolve, "Use the resolved two-clause formulas for elliptical entries");
  add_output(data_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*derive_cmd) return cmd_derive(o);
    if (*check_cmd) return cmd_check(o);
    if (*interpret_cmd) return cmd_interpret(o);
    if (*toy_cmd) return cmd_eval_toy(o);
    if (*data_cmd) return cmd_eval_dataset(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
