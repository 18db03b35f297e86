#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "provtop/ordinal.hpp"

using namespace provtop;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
const Ordinal w = Ordinal::omega();
}  // namespace

TEST_CASE("cmp") {
  CHECK(cmp(w, 5) == std::strong_ordering::greater);
  CHECK(cmp(O("w^{w}"), O("w^{3}*5")) == std::strong_ordering::greater);
  CHECK(cmp(O("w^{2}+w"), O("w^{2}+w")) == std::strong_ordering::equal);
  CHECK(Ordinal(3) < Ordinal(4));
  CHECK(O("w*1000000") < O("w^{2}"));
}

TEST_CASE("add") {
  CHECK(add(1, w) == w);
  CHECK(add(w, 1) == O("w+1"));
  CHECK(add(O("w+1"), O("w+1")) == O("w*2+1"));
  CHECK(to_string(add(O("w+1"), O("w+1"))) == "w*2+1");
}

TEST_CASE("sub_left") {
  CHECK(sub_left(O("w*2+3"), w) == O("w+3"));
  CHECK(sub_left(O("w^{2}+5"), O("w^{2}+5")) == Ordinal());
  CHECK(sub_left(O("w^{2}"), w) == O("w^{2}"));
  CHECK_THROWS_AS(sub_left(w, O("w+1")), std::domain_error);
}

TEST_CASE("omega_pow") {
  CHECK(omega_pow(0) == Ordinal(1));
  CHECK(omega_pow(1) == w);
  CHECK(omega_pow(w) == O("w^{w}"));
}

TEST_CASE("ell") {
  CHECK(ell(O("w^{2}+w")) == Ordinal(1));
  CHECK(ell(5) == Ordinal());
  CHECK(ell(Ordinal()) == Ordinal());
  CHECK(ell_iter(O("w^{w}"), 2) == Ordinal(1));
}

TEST_CASE("in_U") {
  CHECK(in_U(w, 1, 0));
  CHECK_FALSE(in_U(O("w+1"), 1, 0));
  CHECK(in_U(3, 0, 0));
  CHECK_FALSE(in_U(0, 0, 0));
}

TEST_CASE("text form") {
  CHECK(to_string(Ordinal()) == "0");
  CHECK(to_string(O("w^{1}*1")) == "w");
  CHECK(to_string(O("w^{w^{2}*3+1}*2+w+7")) == "w^{w^{2}*3+1}*2+w+7");
  CHECK(O("1+w") == w);
  CHECK(O("123456789012345678901234567890").to_natural() ==
        Natural("123456789012345678901234567890"));
  CHECK_THROWS(O("w^{"));
  CHECK_THROWS(O("x"));
  CHECK_THROWS(O("w*0x"));
}

TEST_CASE("normal form checks") {
  using T = Ordinal::Term;
  CHECK_THROWS(Ordinal::from_terms({T{0, 1}, T{1, 1}}));
  CHECK_THROWS(Ordinal::from_terms({T{1, 0}}));
  CHECK(Ordinal::from_terms({T{1, 2}, T{0, 3}}) == O("w*2+3"));
}

TEST_CASE("predicates") {
  CHECK(O("w+1").is_successor());
  CHECK(O("w*2").is_limit());
  CHECK_FALSE(Ordinal().is_limit());
  CHECK(Ordinal(7).is_finite());
  CHECK(O("w^{w^{w}}").height() == 3);
  CHECK(Ordinal(9).height() == 0);
  CHECK(O("w*4+1").height() == 1);
  CHECK(O("w^{3}*4+w").leading_coefficient() == 4);
  CHECK(O("w^{3}*4+w").coefficient_of(1) == 1);
  CHECK_THROWS_AS(w.to_natural(), std::domain_error);
}

TEST_CASE("mul_nat and times_omega") {
  CHECK(mul_nat(O("w+1"), 3) == O("w*3+1"));
  CHECK(mul_nat(w, 0) == Ordinal());
  CHECK(times_omega(O("w*2+1")) == O("w^{2}"));
  CHECK(times_omega(5) == w);
}

TEST_CASE("order and arithmetic laws on random ordinals") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    Ordinal a = random_ordinal(rng, 3), b = random_ordinal(rng, 3), c = random_ordinal(rng, 3);
    // total order
    int lt = (a < b) + (a == b) + (a > b);
    CHECK(lt == 1);
    if (a < b && b < c) CHECK(a < c);
    // addition
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(add(a, 0) == a);
    CHECK(add(0, a) == a);
    CHECK(a <= add(a, b));
    if (b < c) CHECK(add(a, b) < add(a, c));
    // left subtraction
    if (a <= b) CHECK(add(a, sub_left(b, a)) == b);
    // ell
    CHECK(ell(add(a, omega_pow(b))) == b);
    if (!a.is_zero()) CHECK(ell(a) <= a.leading_exponent());
    if (!a.is_zero() && a < omega_pow(b)) CHECK(ell(a) < b);
    for (std::size_t m = 0; m < 3; ++m) CHECK(in_U(a, m + 1, b) == in_U(ell(a), m, b));
    // text
    CHECK(parse_ordinal(to_string(a)) == a);
  }
}

TEST_CASE("times_omega is the supremum of the multiples") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    Ordinal q = random_ordinal(rng, 2);
    if (q.is_zero()) continue;
    Ordinal t = times_omega(q);
    for (unsigned m : {1u, 2u, 17u, 1000u}) CHECK(mul_nat(q, m) < t);
    // every ordinal below t is below some multiple
    Ordinal below = random_ordinal(rng, 2);
    if (below < t) {
      Natural k = below.leading_coefficient() + 1;
      CHECK(below < mul_nat(q, k));
    }
  }
}
