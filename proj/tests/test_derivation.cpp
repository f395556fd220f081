#include <doctest.h>

#include <functional>
#include <sstream>

#include "lccsem/derivation.hpp"
#include "lccsem/error.hpp"
#include "lccsem/lambda.hpp"
#include "support.hpp"

using namespace lccsem;
using testing::read_data;

namespace {

const Formula& S() {
  static const Formula s = parse_formula("s");
  return s;
}

Reading check(const std::string& script, const Formula& goal = S()) {
  return check_derivation(script, builtin_lexicon(), goal);
}

std::string check_error(const std::string& script, const Formula& goal = S()) {
  try {
    check(script, goal);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Lexicon product_lexicon() {
  std::istringstream in(
      "alice\tnp\talice\tcn\n"
      "bob\tnp\tbob\tcn\n"
      "both\tnp*np\tboth\tcn\n"
      "meets\tnp\\(np\\s)\tmeets\ttv\n"
      "likes\t(np\\s)/np\tlikes\ttv\n");
  return load_lexicon(in);
}

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("ellipsis figure") {
    Reading r = check(read_data("ellipsis.deriv"));
    CHECK(alpha_eq(r.term, parse_term("and ((dt drinks) bob) (drinks alice)")));
    CHECK(r.kind() == "strict");
    REQUIRE(r.binding_map.size() == 1);
    CHECK(r.binding_map[0].anaphor == "does_too");
    CHECK(r.binding_map[0].anaphor_position == 4);
    CHECK(r.binding_map[0].span == std::make_pair(std::size_t{1}, std::size_t{1}));
    CHECK(r.words == std::vector<std::string>{"alice", "drinks", "and", "bob", "does_too"});
  }

  TEST_CASE("sloppy figure") {
    Reading r = check(read_data("sloppy.deriv"));
    CHECK(r.kind() == "sloppy");
    CHECK(alpha_eq(r.term, parse_term("and (dt (\\t. loves (his t code) t) bob) (loves (his gary code) gary)")));
    bool found = false;
    for (const Binding& b : r.binding_map)
      if (b.anaphor == "does_too") {
        CHECK(b.abstraction);
        CHECK(alpha_eq(b.antecedent, parse_term("\\t. loves (his t code) t")));
        found = true;
      }
    CHECK(found);
  }

  TEST_CASE("strict figure") {
    Reading r = check(read_data("strict.deriv"));
    CHECK(r.kind() == "strict");
    CHECK(alpha_eq(r.term, parse_term("and (dt (loves (his gary code)) bob) (loves (his gary code) gary)")));
    for (const Binding& b : r.binding_map)
      if (b.anaphor == "does_too") CHECK(alpha_eq(b.antecedent, parse_term("loves (his gary code)")));
  }

  TEST_CASE("term and rule coherence") {
    Reading r = check(read_data("sloppy.deriv"));
    std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
      for (const auto& p : d.premises) walk(p);
      switch (d.rule) {
        case Rule::EUnder:
          CHECK(d.term.same(Term::app(d.premises[1].term, d.premises[0].term)));
          break;
        case Rule::EOver:
          CHECK(d.term.same(Term::app(d.premises[0].term, d.premises[1].term)));
          break;
        case Rule::IUnder:
        case Rule::IOver:
          CHECK(d.term.same(Term::abs("x" + std::to_string(d.hyp), d.premises[0].term)));
          break;
        case Rule::EAnaph:
          CHECK(d.term.is(Term::Kind::App));
          CHECK(d.term.fun().same(d.premises[0].term));
          break;
        default:
          break;
      }
    };
    walk(r.derivation);
  }

  TEST_CASE("script round trip") {
    for (const char* f : {"ellipsis.deriv", "strict.deriv", "sloppy.deriv", "cascaded_3.deriv"}) {
      Reading r = check(read_data(f));
      std::string text = print_script(to_script(r.derivation));
      Reading again = check(text);
      CHECK(alpha_eq(again.term, r.term));
      CHECK(print_script(parse_script(text)) == text);
      CHECK(print_script(parse_script(print_script(to_script(r.derivation), true))) == text);
    }
  }

  TEST_CASE("products") {
    Lexicon lex = product_lexicon();
    Reading pair = check_derivation("(IProd (lex alice) (lex bob))", lex, parse_formula("np*np"));
    CHECK(alpha_eq(pair.term, parse_term("<alice, bob>")));
    Reading split = check_derivation(
        "(EUnder (EProd1 label=p (lex both)) (EUnder (EProd2 of=p) (lex meets)))", lex, S());
    CHECK(alpha_eq(split.term, parse_term("meets (pi2(both)) (pi1(both))")));
    CHECK_THROWS_AS(check_derivation("(EUnder (EProd1 label=p (lex both)) (lex meets))", lex, S()),
                    DerivationError);
    CHECK_THROWS_AS(check_derivation("(EProd1 (lex alice))", lex, parse_formula("np")), DerivationError);
    Reading intro = check_derivation(
        "(IOver hyp=1 (EUnder (lex alice) (EOver (lex likes) (hyp 1 \"np\"))))", lex,
        parse_formula("s/np"));
    CHECK(alpha_eq(intro.term, parse_term("\\y. likes y alice")));
  }

  TEST_CASE("rejections") {
    CHECK(check_error("(EUnder (lex alice) (lex drinks))", parse_formula("np")).find("goal") != std::string::npos);
    CHECK(check_error("(EUnder (lex drinks) (lex alice))").find("EUnder") != std::string::npos);
    CHECK_THROWS_AS(check("(EUnder (lex alice \"n\") (lex drinks))"), DerivationError);
    CHECK_THROWS_AS(check("(EUnder (lex unicorn) (lex drinks))"), Error);
    CHECK(check_error("(EUnder (hyp 1 \"np\") (lex drinks))").find("dangling") != std::string::npos);
    CHECK_THROWS_AS(check("(IUnder hyp=2 (EUnder (hyp 1 \"np\") (lex drinks)))", parse_formula("np\\s")),
                    DerivationError);
    CHECK_THROWS_AS(check("(EUnder (EUnder (lex alice) (lex drinks)) (EAnaph bind=x (lex does_too)))"),
                    DerivationError);
    CHECK_THROWS_AS(check("(EUnder (lex bob label=x) (EAnaph bind=x (lex does_too)))"), DerivationError);
    CHECK_THROWS_AS(check("(EUnder (lex alice) (lex drinks) (lex bob))"), DerivationError);
    CHECK_THROWS_AS(check("(EUnder (lex alice) (lex drinks)"), ParseError);
    CHECK_THROWS_AS(check("(EUnder (lex alice) (lex drinks)) extra"), ParseError);
    CHECK_THROWS_AS(check("(Foo (lex alice))"), Error);
  }

  TEST_CASE("I\\ takes the leftmost and I/ the rightmost undischarged leaf") {
    std::string vp = "(EOver (lex loves) (hyp 1 \"np\"))";
    CHECK_NOTHROW(check_derivation("(IOver hyp=1 (EUnder (lex gary) " + vp + "))", builtin_lexicon(),
                                   parse_formula("s/np")));
    CHECK_THROWS_AS(check_derivation("(IUnder hyp=1 (EUnder (lex gary) " + vp + "))", builtin_lexicon(),
                                     parse_formula("np\\s")),
                    DerivationError);
  }

  TEST_CASE("antecedents must lie strictly to the left") {
    // does_too would bind the VP it is part of
    std::string self =
        "(EUnder (lex bob) (EAnaph bind=v label=v (lex does_too)))";
    CHECK_THROWS_AS(check(self), DerivationError);
    std::string right =
        "(EUnder (EUnder (lex bob) (EAnaph bind=v (lex does_too))) "
        "(EOver (lex and) (EUnder (lex alice) (lex drinks label=v))))";
    CHECK_THROWS_AS(check(right), DerivationError);
  }

  TEST_CASE("rendering") {
    std::string tree = render_tree(check(read_data("ellipsis.deriv")).derivation);
    CHECK(tree.find("[EAnaph vp]") != std::string::npos);
    CHECK(tree.find("drinks : np\\s  [lex drinks] #vp") != std::string::npos);
  }
}
