#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "provtop/formula.hpp"
#include "provtop/selftest.hpp"

using namespace provtop;

TEST_CASE("parse builds the expected trees") {
  Formula lob = parse("[0]([0]p -> p) -> [0]p");
  CHECK(lob.op() == Op::Imp);
  CHECK(lob.lhs().op() == Op::Box);
  CHECK(lob.lhs().index() == 0);
  CHECK(lob.lhs().child().op() == Op::Imp);
  CHECK(lob.lhs().child().lhs() == Formula::box(0, Formula::var("p")));
  CHECK(lob.rhs() == Formula::box(0, Formula::var("p")));
  CHECK(lob == formulas::lob(Formula::var("p")));

  CHECK(parse("T").op() == Op::Top);
  CHECK(parse("<1><0>T") == Formula::dia(1, Formula::dia(0, Formula::top())));
}

TEST_CASE("print") {
  CHECK(print(Formula::dia(0, Formula::top())) == "<0>T");
  CHECK(print(Formula::box(1, Formula::var("p"))) == "[1]p");
  CHECK(print(Formula::conj(Formula::top(), Formula::bot())) == "(T & F)");
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse("[0](p"), ParseError);
  CHECK_THROWS_AS(parse("p &"), ParseError);
  CHECK_THROWS_AS(parse("<x>p"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse_word("<0>p"), ParseError);
  try {
    parse("(p | q");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("implication is right associative and binds loosest") {
  CHECK(parse("p -> q -> r") == parse("p -> (q -> r)"));
  CHECK(parse("p & q -> r | s") == parse("(p & q) -> (r | s)"));
  CHECK(parse("~<0>p") == Formula::neg(Formula::dia(0, Formula::var("p"))));
}

TEST_CASE("shift_up and shift_down") {
  CHECK(shift_up(parse("<0>T")) == parse("<1>T"));
  CHECK(shift_up(parse("T")) == parse("T"));
  CHECK(shift_up(parse("<1><0>p")) == parse("<2><1>p"));
  CHECK(shift_down(parse("<2>[1]q")) == parse("<1>[0]q"));
  CHECK_THROWS_AS(shift_down(parse("<0>T")), std::domain_error);
  CHECK(shift_up(parse_word("<0><3>T")) == parse_word("<1><4>T"));
}

TEST_CASE("is_ordered") {
  CHECK(is_ordered(parse("<0><1>T")));
  CHECK_FALSE(is_ordered(parse("<1><0>T")));
  CHECK(is_ordered(parse("T")));
  CHECK_FALSE(is_ordered(parse("[2](p & <1>q)")));
  CHECK(is_ordered(parse("<1>p & <0><0>q")));
}

TEST_CASE("closure") {
  auto c = closure(parse("<0>T"));
  CHECK(c == std::set<Formula>{parse("<0>T"), parse("T")});
  CHECK(closure(parse("p & q")) == std::set<Formula>{parse("p & q"), parse("p"), parse("q")});
  CHECK(closure(parse("[0]p")) == std::set<Formula>{parse("[0]p"), parse("p")});
}

TEST_CASE("words") {
  Word w = parse_word("<1><0>T");
  CHECK(w.indices == std::vector<Modality>{1, 0});
  CHECK(print(w) == "<1><0>T");
  CHECK(as_word(w.to_formula()) == w);
  CHECK(parse_word("T").empty());
  CHECK_FALSE(as_word(parse("<0>p")).has_value());
  CHECK_FALSE(as_word(parse("[0]T")).has_value());
}

TEST_CASE("metrics") {
  Formula f = parse("[0]([0]p -> q) | <2>r");
  CHECK(modal_depth(f) == 2);
  CHECK(modality_bound(f) == 3);
  CHECK(variables(f) == std::set<std::string>{"p", "q", "r"});
  CHECK_FALSE(is_closed(f));
  CHECK(is_closed(parse("<0>T -> [1]F")));
  CHECK(modality_bound(parse("p -> q")) == 0);
}

TEST_CASE("random formulas: round trip, closure bound, shift invariants") {
  std::mt19937_64 rng(7);
  std::vector<std::string> vars{"p", "q", "r"};
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_formula(rng, vars, 3, 10);
    CHECK(parse(print(f)) == f);
    CHECK(closure(f).size() <= size(f));
    CHECK(is_ordered(shift_up(f)) == is_ordered(f));
    CHECK(shift_down(shift_up(f)) == f);
    CHECK(as_word(shift_up(f)).has_value() == as_word(f).has_value());
  }
}

TEST_CASE("round trip over random polymodal formulas") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 8);
  std::function<Formula(int)> gen = [&](int d) -> Formula {
    int k = d == 0 ? pick(rng) % 3 : pick(rng);
    switch (k) {
      case 0: return Formula::top();
      case 1: return Formula::bot();
      case 2: return Formula::var(std::string(1, char('p' + pick(rng) % 3)));
      case 3: return Formula::neg(gen(d - 1));
      case 4: return Formula::conj(gen(d - 1), gen(d - 1));
      case 5: return Formula::disj(gen(d - 1), gen(d - 1));
      case 6: return Formula::imp(gen(d - 1), gen(d - 1));
      case 7: return Formula::dia(Modality(pick(rng) % 4), gen(d - 1));
      default: return Formula::box(Modality(pick(rng) % 4), gen(d - 1));
    }
  };
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen(4);
    CHECK(parse(print(f)) == f);
    CHECK(is_ordered(shift_up(f)) == is_ordered(f));
  }
}
