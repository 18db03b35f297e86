#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "provtop/icard.hpp"
#include "provtop/kripke.hpp"

using namespace provtop;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }
Word W(const char* s) { return parse_word(s); }
const Ordinal w = Ordinal::omega();

std::vector<Word> all_words(std::size_t max_len, Modality max_index) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& base : layer)
      for (Modality i = 0; i <= max_index; ++i) {
        Word x = base;
        x.indices.push_back(i);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Word random_word(std::mt19937_64& rng, std::size_t max_len, Modality max_index) {
  Word x;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) x.indices.push_back(Modality(rng() % (max_index + 1)));
  return x;
}

Word prefixed(Modality n, const Word& v) {
  Word x;
  x.indices.push_back(n);
  x.indices.insert(x.indices.end(), v.indices.begin(), v.indices.end());
  return x;
}

}  // namespace

TEST_CASE("eval_word examples") {
  CHECK(eval_word(W("<1>T"), w));
  CHECK_FALSE(eval_word(W("<1>T"), O("w+1")));
  CHECK(eval_word(W("T"), 0));
  CHECK(eval_word(W("<1><0>T"), w));
  CHECK_FALSE(eval_word(W("<0>T"), 0));
  CHECK(eval_word(W("<0>T"), 1));
}

TEST_CASE("min_word examples") {
  CHECK(min_word(W("<0><0>T")) == Ordinal(2));
  CHECK(min_word(W("<1>T")) == w);
  CHECK(min_word(W("<2>T")) == O("w^{w}"));
  CHECK(min_word(W("<0><1>T")) == O("w+1"));
  CHECK(min_word(W("T")) == Ordinal());
}

TEST_CASE("word_entails examples") {
  CHECK(word_entails(W("<0><0>T"), W("<0>T")));
  CHECK(word_entails(W("<1>T"), W("<0>T")));
  CHECK_FALSE(word_entails(W("<0>T"), W("<1>T")));
}

TEST_CASE("decide_word_implication") {
  auto d = decide_word_implication(W("<1>T"), {W("<0>T"), W("<2>T")});
  CHECK(d.provable);
  CHECK(d.min == w);
  d = decide_word_implication(W("T"), {W("<0>T")});
  CHECK_FALSE(d.provable);
  REQUIRE(d.refuted_at.has_value());
  CHECK(*d.refuted_at == Ordinal());
  d = decide_word_implication(W("<0>T"), {});
  CHECK_FALSE(d.provable);
  CHECK(*d.refuted_at == Ordinal(1));
}

TEST_CASE("trichotomy examples") {
  CHECK(trichotomy(W("<1>T"), W("<0>T")) == Trichotomy::LeftBelow);
  CHECK(trichotomy(W("<0>T"), W("<0>T")) == Trichotomy::Equivalent);
  CHECK(trichotomy(W("<0>T"), W("<0><0>T")) == Trichotomy::RightBelow);
  CHECK(std::string(to_string(Trichotomy::Equivalent)) == "A==B");
}

TEST_CASE("eval_closed") {
  CHECK(eval_closed(parse("~<1>T & <0>T"), 5));
  CHECK_THROWS_AS(eval_closed(parse("<0>p"), 0), std::invalid_argument);
  CHECK_THROWS_AS(eval_closed(parse("[0]T"), 0), std::invalid_argument);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) CHECK(eval_closed(parse("<1>T -> <0>T"), random_ordinal(rng, 3)));
  CHECK(is_word_combination(parse("~(<0>T | <2><1>T)")));
  CHECK_FALSE(is_word_combination(parse("<0>(<1>T & <0>T)")));
}

TEST_CASE("require_word rejects conjunctions") {
  CHECK(require_word(parse("<2><0>T")) == W("<2><0>T"));
  CHECK_THROWS_AS(require_word(parse("<1>T & <0>T")), std::invalid_argument);
  try {
    require_word(parse("<1>T & <0>T"));
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("conjunction") != std::string::npos);
  }
}

TEST_CASE("shift law, P2 and transitivity pointwise") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1500; ++i) {
    Word v = random_word(rng, 4, 2);
    Ordinal a = random_ordinal(rng, 3);
    CHECK(eval_word(shift_up(v), a) == eval_word(v, ell(a)));
    for (Modality n = 1; n <= 3; ++n)
      if (eval_word(prefixed(n, v), a))
        for (Modality m = 0; m < n; ++m) CHECK(eval_word(prefixed(m, v), a));
    Modality n = Modality(rng() % 3);
    if (eval_word(prefixed(n, prefixed(n, v)), a)) CHECK(eval_word(prefixed(n, v), a));
  }
}

TEST_CASE("minimality of min_word") {
  for (const auto& x : all_words(4, 2)) {
    Ordinal m = min_word(x);
    CHECK(eval_word(x, m));
    for (const auto& b : below_candidates(m)) {
      CHECK(b < m);
      CHECK_FALSE(eval_word(x, b));
    }
  }
}

TEST_CASE("trichotomy is exhaustive and exclusive") {
  auto words = all_words(4, 2);
  for (const auto& a : words)
    for (const auto& b : words) {
      Word zb = prefixed(0, b), za = prefixed(0, a);
      bool left = word_entails(a, zb), right = word_entails(b, za);
      bool eq = word_entails(a, b) && word_entails(b, a);
      CHECK(int(left) + int(right) + int(eq) == 1);
      auto t = trichotomy(a, b);
      CHECK((t == Trichotomy::LeftBelow) == left);
      CHECK((t == Trichotomy::RightBelow) == right);
    }
}

TEST_CASE("single-index words agree with the GL decision procedure") {
  auto words = all_words(6, 0);
  for (const auto& a : words)
    for (const auto& b : words)
      CHECK(word_entails(a, b) == gl_decide(Formula::imp(a.to_formula(), b.to_formula())).provable);
}

TEST_CASE("min is monotone under entailment") {
  auto words = all_words(3, 2);
  for (const auto& a : words)
    for (const auto& b : words)
      if (word_entails(a, b)) CHECK(min_word(a) >= min_word(b));
}

TEST_CASE("min_word memo is safe under concurrent use") {
  auto words = all_words(5, 3);
  // cold memo: the threads race to fill it
  std::vector<std::vector<Ordinal>> results(4);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < results.size(); ++t)
    pool.emplace_back([&, t] {
      // each thread walks the list from a different start
      for (std::size_t i = 0; i < words.size(); ++i) {
        std::size_t k = (i + t * 97) % words.size();
        results[t].push_back(min_word(words[k]));
      }
    });
  for (auto& th : pool) th.join();
  std::vector<Ordinal> serial;
  for (const auto& x : words) serial.push_back(min_word(x));
  for (std::size_t t = 0; t < results.size(); ++t)
    for (std::size_t i = 0; i < words.size(); ++i)
      CHECK(results[t][i] == serial[(i + t * 97) % words.size()]);
}
