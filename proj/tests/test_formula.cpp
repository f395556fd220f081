#include <doctest.h>

#include <random>
#include <sstream>

#include "lccsem/error.hpp"
#include "lccsem/formula.hpp"
#include "lccsem/lexicon.hpp"

using namespace lccsem;

namespace {

Formula np() { return Formula::atom("np"); }
Formula n() { return Formula::atom("n"); }
Formula s() { return Formula::atom("s"); }

Formula random_formula(std::mt19937_64& rng, int depth) {
  static const char* atoms[] = {"np", "n", "s"};
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 0 : 5);
  int k = pick(rng);
  if (k <= 1) return Formula::atom(atoms[std::uniform_int_distribution<int>(0, 2)(rng)]);
  Formula a = random_formula(rng, depth - 1), b = random_formula(rng, depth - 1);
  switch (k) {
    case 2: return Formula::prod(a, b);
    case 3: return Formula::under(a, b);
    case 4: return Formula::over(a, b);
    default: return Formula::anaph(a, b);
  }
}

int depth(const Formula& f) {
  if (f.is_atom()) return 0;
  return 1 + std::max(depth(f.left()), depth(f.right()));
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("parse") {
    CHECK(parse_formula("np") == np());
    CHECK(parse_formula("(np\\s)|(np\\s)") == Formula::anaph(Formula::under(np(), s()), Formula::under(np(), s())));
    CHECK(parse_formula("(s\\s)/s") == Formula::over(Formula::under(s(), s()), s()));
    CHECK(parse_formula(" np | ( np / n ) ") == Formula::anaph(np(), Formula::over(np(), n())));
    CHECK(parse_formula("np*(np\\s)") == Formula::prod(np(), Formula::under(np(), s())));
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_formula("vp"), ParseError);
    CHECK_THROWS_AS(parse_formula("(np\\s"), ParseError);
    CHECK_THROWS_AS(parse_formula("np\\s/np"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("np np"), ParseError);
  }

  TEST_CASE("print") {
    CHECK(print_formula(np()) == "np");
    CHECK(print_formula(Formula::anaph(np(), Formula::over(np(), n()))) == "np|(np/n)");
    CHECK(print_formula(Formula::prod(np(), Formula::under(np(), s()))) == "np*(np\\s)");
  }

  TEST_CASE("roles and arity") {
    Formula tv = parse_formula("(np\\s)/np");
    CHECK(tv.argument() == np());
    CHECK(tv.result() == parse_formula("np\\s"));
    CHECK(tv.arity() == 2);
    CHECK(parse_formula("np|(np/n)").arity() == 2);
    CHECK(np().arity() == 0);
    CHECK_FALSE(parse_formula("np\\s") == parse_formula("s/np"));
  }

  TEST_CASE("round trip up to depth 6") {
    std::mt19937_64 rng(7);
    int deep = 0;
    for (int i = 0; i < 3000; ++i) {
      Formula f = random_formula(rng, 6);
      if (depth(f) == 6) ++deep;
      REQUIRE(parse_formula(print_formula(f)) == f);
    }
    CHECK(deep > 10);
  }
}

TEST_SUITE("lexicon") {
  TEST_CASE("entries") {
    std::istringstream in(
        "does_too\t(np\\s)|(np\\s)\tdt\taux\n"
        "his\tnp|(np/n)\this\tposs\n"
        "# comment\n"
        "and\t(s\\s)/s\tand\tcoord\n");
    Lexicon lex = load_lexicon(in);
    auto dt = lex.lookup("does_too");
    REQUIRE(dt.size() == 1);
    CHECK(dt[0]->constant == "dt");
    CHECK(dt[0]->formula == parse_formula("(np\\s)|(np\\s)"));
    CHECK(lex.lookup("his")[0]->semclass == "poss");
    CHECK(lex.lookup("and")[0]->formula == parse_formula("(s\\s)/s"));
    CHECK(lex.find_constant("dt")->word == "does_too");
    CHECK(lex.find_constant("nothing") == nullptr);
  }

  TEST_CASE("load errors") {
    auto load = [](const std::string& text) {
      std::istringstream in(text);
      return load_lexicon(in);
    };
    CHECK_THROWS_AS(load("runs\tnp\\s\trun\ttv\n"), LexiconError);
    CHECK_THROWS_AS(load("runs\tnp\\s\trun\tverbish\n"), LexiconError);
    CHECK_THROWS_AS(load("runs\tnp\\s\trun\n"), LexiconError);
    CHECK_THROWS_AS(load("a\tnp\tx\tcn\nb\tnp\tx\tcn\n"), LexiconError);
    CHECK_THROWS_AS(load("runs\tvp\trun\tcn\n"), Error);
  }

  TEST_CASE("atoms header and order") {
    std::istringstream in("#atoms: np s vp\nwalk\tvp\twalk1\tcn\nwalk\tnp\\s\twalk2\titv\n");
    Lexicon lex = load_lexicon(in);
    CHECK(lex.atoms().contains("vp"));
    auto w = lex.lookup("walk");
    REQUIRE(w.size() == 2);
    CHECK(w[0]->constant == "walk1");
    CHECK(w[1]->constant == "walk2");
    CHECK_THROWS_AS(lex.lookup("fly"), LexiconError);
  }

  TEST_CASE("builtin lexicon") {
    const Lexicon& lex = builtin_lexicon();
    CHECK(lex.lookup("does_too")[0]->constant == "dt");
    CHECK(lex.lookup("runs")[0]->constant == "run");
    CHECK(lex.find_constant("before")->semclass == "prep");
    CHECK(lex.entries().size() == 27);
  }

  TEST_CASE("tokenize") {
    CHECK(tokenize("  alice\tdrinks \n") == std::vector<std::string>{"alice", "drinks"});
    CHECK(tokenize("").empty());
  }
}
