#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace provtop {

using Modality = std::uint32_t;

enum class Op : std::uint8_t { Top, Bot, Var, Not, And, Or, Imp, Dia, Box };

// Syntax error raised by the formula and word parsers.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Immutable polymodal formula with modalities <n> and [n].
// 
// Nodes are shared, so copies are cheap and a Formula behaves as a value.
// [n]phi is kept as a primitive node; evaluators read it as ~<n>~phi.
class Formula {
 public:
  Formula();  // T

  static Formula top();
  static Formula bot();
  static Formula var(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula dia(Modality n, Formula f);
  static Formula box(Modality n, Formula f);

  Op op() const noexcept;
  const std::string& name() const;  // Var only
  Modality index() const;           // Dia/Box only
  const Formula& child() const;     // Not/Dia/Box
  const Formula& lhs() const;       // And/Or/Imp
  const Formula& rhs() const;       // And/Or/Imp

  bool is_unary() const noexcept;
  bool is_binary() const noexcept;
  bool is_modal() const noexcept { return op() == Op::Dia || op() == Op::Box; }

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A variable-free diamond-only formula <i1><i2>...<ik>T, outermost first.
struct Word {
  std::vector<Modality> indices;

  bool empty() const noexcept { return indices.empty(); }
  std::size_t length() const noexcept { return indices.size(); }
  Formula to_formula() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

Formula parse(std::string_view text);
std::string print(const Formula& f);

Word parse_word(std::string_view text);
std::string print(const Word& w);

// Returns the word denoted by f, or nothing when f is not of the form <i1>...<ik>T.
std::optional<Word> as_word(const Formula& f);

Formula shift_up(const Formula& f);
// Decrements every modality index; throws std::domain_error on an index 0.
Formula shift_down(const Formula& f);
Word shift_up(const Word& w);
Word shift_down(const Word& w);

// No modality of index m occurs in the scope of a modality of index n > m.
bool is_ordered(const Formula& f);

// All subformulas, f included.
std::set<Formula> closure(const Formula& f);

std::size_t size(const Formula& f);
std::size_t modal_depth(const Formula& f);
std::set<std::string> variables(const Formula& f);
bool is_closed(const Formula& f);
// Largest modality index plus one; 0 for modality-free formulas.
std::size_t modality_bound(const Formula& f);

namespace formulas {

// [0]([0]p -> p) -> [0]p
Formula lob(const Formula& p);
// [0](q -> r) -> ([0]q -> [0]r)
Formula k_axiom(const Formula& q, const Formula& r);
// <0><0>p -> <0>p
Formula transitivity(const Formula& p);
// [0]([0]+p | [0]+q) -> [0]p | [0]q, where [0]+x = x & [0]x
Formula lin(const Formula& p, const Formula& q);
// <0>p & <0>q -> <0>(p & q) | <0>(p & <0>q) | <0>(<0>p & q)
Formula dot3(const Formula& p, const Formula& q);

}  // namespace formulas

}  // namespace provtop
