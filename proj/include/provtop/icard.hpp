#pragma once

#include <optional>
#include <vector>

#include "provtop/formula.hpp"
#include "provtop/ordinal.hpp"

namespace provtop {

// Truth of a word at an ordinal point of the Icard space.
bool eval_word(const Word& w, const Ordinal& alpha);
// Least ordinal where the word holds; memoized, re-verified with eval_word.
Ordinal min_word(const Word& w);
// GLP proves a -> b.
bool word_entails(const Word& a, const Word& b);

struct WordDecision {
  bool provable = false;
  Ordinal min;  // min_word(antecedent)
  std::optional<Ordinal> refuted_at;
};

// GLP proves a -> (b_1 | ... | b_k); the empty disjunction is F.
WordDecision decide_word_implication(const Word& a, const std::vector<Word>& bs);

enum class Trichotomy { LeftBelow, RightBelow, Equivalent };  // A |- <0>B, B |- <0>A, A == B
Trichotomy trichotomy(const Word& a, const Word& b);
const char* to_string(Trichotomy t);

// phi must be a boolean combination of words.
bool eval_closed(const Formula& phi, const Ordinal& alpha);
bool is_word_combination(const Formula& phi);

// The word denoted by phi; throws std::invalid_argument for anything else, conjunctions
// of words included.
Word require_word(const Formula& phi);

// Ordinals below alpha obtained by lowering one coefficient or deleting one term, and 0.
std::vector<Ordinal> below_candidates(const Ordinal& alpha);

}  // namespace provtop
