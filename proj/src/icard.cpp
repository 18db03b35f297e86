#include "provtop/icard.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace provtop {

namespace {

std::shared_mutex memo_mutex;
std::map<Word, Ordinal> memo;

// W = C<0>B with every index of C positive.
std::pair<Word, Word> split_at_zero(const Word& w) {
  const auto it = std::find(w.indices.begin(), w.indices.end(), Modality{0});
  Word c{{w.indices.begin(), it}};
  Word b{{it + 1, w.indices.end()}};
  return {std::move(c), std::move(b)};
}

bool has_zero(const Word& w) {
  return std::find(w.indices.begin(), w.indices.end(), Modality{0}) != w.indices.end();
}

Ordinal compute_min(const Word& w) {
  if (w.empty()) return Ordinal();
  if (!has_zero(w)) return Ordinal::omega_pow(min_word(shift_down(w)));
  const auto [c, b] = split_at_zero(w);
  return add(min_word(b), Ordinal::omega_pow(min_word(shift_down(c))));
}

}  // namespace

bool eval_word(const Word& w, const Ordinal& alpha) {
  if (w.empty()) return true;
  if (!has_zero(w)) return eval_word(shift_down(w), ell(alpha));
  const auto [c, b] = split_at_zero(w);
  if (!c.empty() && !eval_word(shift_down(c), ell(alpha))) return false;
  return min_word(b) < alpha;
}

Ordinal min_word(const Word& w) {
  {
    std::shared_lock lock(memo_mutex);
    if (auto it = memo.find(w); it != memo.end()) return it->second;
  }
  Ordinal m = compute_min(w);
  if (!eval_word(w, m))
    throw std::logic_error("word " + print(w) + " fails at its computed minimum " + to_string(m));
  std::unique_lock lock(memo_mutex);
  return memo.emplace(w, std::move(m)).first->second;
}

bool word_entails(const Word& a, const Word& b) { return eval_word(b, min_word(a)); }

WordDecision decide_word_implication(const Word& a, const std::vector<Word>& bs) {
  WordDecision d;
  d.min = min_word(a);
  d.provable = std::any_of(bs.begin(), bs.end(), [&](const Word& b) { return eval_word(b, d.min); });
  if (!d.provable) d.refuted_at = d.min;
  return d;
}

Trichotomy trichotomy(const Word& a, const Word& b) {
  auto dia0 = [](const Word& w) {
    Word out{{0}};
    out.indices.insert(out.indices.end(), w.indices.begin(), w.indices.end());
    return out;
  };
  const bool left = word_entails(a, dia0(b));
  const bool right = word_entails(b, dia0(a));
  const bool same = word_entails(a, b) && word_entails(b, a);
  if (left + right + same != 1)
    throw std::logic_error("trichotomy fails for " + print(a) + " and " + print(b));
  return left ? Trichotomy::LeftBelow : right ? Trichotomy::RightBelow : Trichotomy::Equivalent;
}

const char* to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::LeftBelow: return "A|-<0>B";
    case Trichotomy::RightBelow: return "B|-<0>A";
    case Trichotomy::Equivalent: return "A==B";
  }
  return "?";
}

bool is_word_combination(const Formula& phi) {
  switch (phi.op()) {
    case Op::Top:
    case Op::Bot: return true;
    case Op::Var:
    case Op::Box: return false;
    case Op::Dia: return as_word(phi).has_value();
    case Op::Not: return is_word_combination(phi.child());
    default: return is_word_combination(phi.lhs()) && is_word_combination(phi.rhs());
  }
}

bool eval_closed(const Formula& phi, const Ordinal& alpha) {
  if (!is_closed(phi)) throw std::invalid_argument("formula is not variable-free: " + print(phi));
  if (!is_word_combination(phi))
    throw std::invalid_argument("formula is not a boolean combination of words: " + print(phi));
  auto rec = [&](const Formula& g) { return eval_closed(g, alpha); };
  switch (phi.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Dia: return eval_word(*as_word(phi), alpha);
    case Op::Not: return !rec(phi.child());
    case Op::And: return rec(phi.lhs()) && rec(phi.rhs());
    case Op::Or: return rec(phi.lhs()) || rec(phi.rhs());
    case Op::Imp: return !rec(phi.lhs()) || rec(phi.rhs());
    default: break;
  }
  throw std::logic_error("unreachable");
}

Word require_word(const Formula& phi) {
  if (auto w = as_word(phi)) return *w;
  if (phi.op() == Op::And && as_word(phi.lhs()) && as_word(phi.rhs()))
    throw std::invalid_argument("conjunctions of words are not supported as antecedents: " +
                                print(phi));
  throw std::invalid_argument("not a word: " + print(phi));
}

std::vector<Ordinal> below_candidates(const Ordinal& alpha) {
  std::vector<Ordinal> out;
  if (alpha.is_zero()) return out;
  out.push_back(Ordinal());
  const auto& terms = alpha.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto lowered = terms;
    lowered[i].coefficient -= 1;
    if (lowered[i].coefficient == 0) lowered.erase(lowered.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(Ordinal::from_terms(std::move(lowered)));
    auto deleted = terms;
    deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(Ordinal::from_terms(std::move(deleted)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace provtop
