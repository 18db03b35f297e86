#include "provtop/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace provtop {

struct Formula::Node {
  Op op;
  std::string name;
  Modality index = 0;
  Formula a;
  Formula b;
};

Formula::Formula() : node_(nullptr) {}

Formula Formula::top() { return Formula(); }

Formula Formula::bot() {
  static const auto node = std::make_shared<const Node>(Node{Op::Bot, {}, 0, {}, {}});
  return Formula(node);
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Var, std::move(name), 0, {}, {}}));
}

Formula Formula::neg(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, 0, std::move(f), {}}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Op::Or, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::imp(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Op::Imp, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::dia(Modality n, Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Dia, {}, n, std::move(f), {}}));
}

Formula Formula::box(Modality n, Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Box, {}, n, std::move(f), {}}));
}

// A null node encodes T.
Op Formula::op() const noexcept { return node_ ? node_->op : Op::Top; }

const std::string& Formula::name() const {
  if (op() != Op::Var) throw std::logic_error("Formula::name on a non-variable");
  return node_->name;
}

Modality Formula::index() const {
  if (!is_modal()) throw std::logic_error("Formula::index on a non-modal formula");
  return node_->index;
}

const Formula& Formula::child() const {
  if (!is_unary()) throw std::logic_error("Formula::child on a non-unary formula");
  return node_->a;
}

const Formula& Formula::lhs() const {
  if (!is_binary()) throw std::logic_error("Formula::lhs on a non-binary formula");
  return node_->a;
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw std::logic_error("Formula::rhs on a non-binary formula");
  return node_->b;
}

bool Formula::is_unary() const noexcept {
  const Op o = op();
  return o == Op::Not || o == Op::Dia || o == Op::Box;
}

bool Formula::is_binary() const noexcept {
  const Op o = op();
  return o == Op::And || o == Op::Or || o == Op::Imp;
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::Top:
    case Op::Bot:
      return 0;
    case Op::Var:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Op::Not:
      return compare(a.child(), b.child());
    case Op::Dia:
    case Op::Box:
      if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
      return compare(a.child(), b.child());
    case Op::And:
    case Op::Or:
    case Op::Imp:
      if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
  }
  return 0;
}

Formula Word::to_formula() const {
  Formula f = Formula::top();
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) f = Formula::dia(*it, f);
  return f;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

  Word parse_word_all() {
    Word w;
    skip_ws();
    while (peek() == '<') {
      ++pos_;
      w.indices.push_back(parse_nat());
      expect('>');
      skip_ws();
    }
    expect('T');
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Modality parse_nat() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<Modality>::max()) fail("modality index too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected modality index");
    return static_cast<Modality>(value);
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::imp(std::move(lhs), parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek() == '|') {
      ++pos_;
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek() == '&') {
      ++pos_;
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    const char c = peek();
    if (c == '~') {
      ++pos_;
      return Formula::neg(parse_unary());
    }
    if (c == '<') {
      ++pos_;
      const Modality n = parse_nat();
      expect('>');
      return Formula::dia(n, parse_unary());
    }
    if (c == '[') {
      ++pos_;
      const Modality n = parse_nat();
      expect(']');
      return Formula::box(n, parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Formula f = parse_imp();
      expect(')');
      return f;
    }
    if (c >= 'a' && c <= 'z') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Formula::var(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == 'T' || c == 'F') {
      ++pos_;
      if (pos_ < text_.size() &&
          (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        fail("identifiers must start with a lowercase letter");
      return c == 'T' ? Formula::top() : Formula::bot();
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_to(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Top: out += 'T'; return;
    case Op::Bot: out += 'F'; return;
    case Op::Var: out += f.name(); return;
    case Op::Not:
      out += '~';
      print_to(f.child(), out);
      return;
    case Op::Dia:
    case Op::Box:
      out += f.op() == Op::Dia ? '<' : '[';
      out += std::to_string(f.index());
      out += f.op() == Op::Dia ? '>' : ']';
      print_to(f.child(), out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      out += '(';
      print_to(f.lhs(), out);
      out += f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : " -> ";
      print_to(f.rhs(), out);
      out += ')';
      return;
    }
  }
}

template <typename IndexMap>
Formula map_indices(const Formula& f, IndexMap&& g) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
    case Op::Var:
      return f;
    case Op::Not:
      return Formula::neg(map_indices(f.child(), g));
    case Op::Dia:
      return Formula::dia(g(f.index()), map_indices(f.child(), g));
    case Op::Box:
      return Formula::box(g(f.index()), map_indices(f.child(), g));
    case Op::And:
      return Formula::conj(map_indices(f.lhs(), g), map_indices(f.rhs(), g));
    case Op::Or:
      return Formula::disj(map_indices(f.lhs(), g), map_indices(f.rhs(), g));
    case Op::Imp:
      return Formula::imp(map_indices(f.lhs(), g), map_indices(f.rhs(), g));
  }
  return f;
}

Modality decrement(Modality n) {
  if (n == 0) throw std::domain_error("shift_down: modality index 0 cannot be decremented");
  return n - 1;
}

// `scope` is the smallest index such that every enclosing modality has index <= scope.
bool ordered_below(const Formula& f, Modality scope) {
  if (f.is_modal()) {
    if (f.index() < scope) return false;
    return ordered_below(f.child(), f.index());
  }
  if (f.op() == Op::Not) return ordered_below(f.child(), scope);
  if (f.is_binary()) return ordered_below(f.lhs(), scope) && ordered_below(f.rhs(), scope);
  return true;
}

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_unary()) collect(f.child(), out);
  if (f.is_binary()) {
    collect(f.lhs(), out);
    collect(f.rhs(), out);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

Word parse_word(std::string_view text) { return Parser(text).parse_word_all(); }

std::string print(const Word& w) {
  std::string out;
  for (Modality i : w.indices) out += "<" + std::to_string(i) + ">";
  out += 'T';
  return out;
}

std::optional<Word> as_word(const Formula& f) {
  Word w;
  const Formula* cur = &f;
  while (cur->op() == Op::Dia) {
    w.indices.push_back(cur->index());
    cur = &cur->child();
  }
  if (cur->op() != Op::Top) return std::nullopt;
  return w;
}

Formula shift_up(const Formula& f) {
  return map_indices(f, [](Modality n) { return n + 1; });
}

Formula shift_down(const Formula& f) { return map_indices(f, decrement); }

Word shift_up(const Word& w) {
  Word out = w;
  for (auto& i : out.indices) ++i;
  return out;
}

Word shift_down(const Word& w) {
  Word out = w;
  for (auto& i : out.indices) i = decrement(i);
  return out;
}

bool is_ordered(const Formula& f) { return ordered_below(f, 0); }

std::set<Formula> closure(const Formula& f) {
  std::set<Formula> out;
  collect(f, out);
  return out;
}

std::size_t size(const Formula& f) {
  if (f.is_unary()) return 1 + size(f.child());
  if (f.is_binary()) return 1 + size(f.lhs()) + size(f.rhs());
  return 1;
}

std::size_t modal_depth(const Formula& f) {
  if (f.is_modal()) return 1 + modal_depth(f.child());
  if (f.op() == Op::Not) return modal_depth(f.child());
  if (f.is_binary()) return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  return 0;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  for (const Formula& g : closure(f))
    if (g.op() == Op::Var) out.insert(g.name());
  return out;
}

bool is_closed(const Formula& f) { return variables(f).empty(); }

std::size_t modality_bound(const Formula& f) {
  std::size_t bound = 0;
  for (const Formula& g : closure(f))
    if (g.is_modal()) bound = std::max<std::size_t>(bound, std::size_t{g.index()} + 1);
  return bound;
}

namespace formulas {

Formula lob(const Formula& p) {
  using F = Formula;
  return F::imp(F::box(0, F::imp(F::box(0, p), p)), F::box(0, p));
}

Formula k_axiom(const Formula& q, const Formula& r) {
  using F = Formula;
  return F::imp(F::box(0, F::imp(q, r)), F::imp(F::box(0, q), F::box(0, r)));
}

Formula transitivity(const Formula& p) {
  using F = Formula;
  return F::imp(F::dia(0, F::dia(0, p)), F::dia(0, p));
}

Formula lin(const Formula& p, const Formula& q) {
  using F = Formula;
  auto box_plus = [](const Formula& x) { return F::conj(x, F::box(0, x)); };
  return F::imp(F::box(0, F::disj(box_plus(p), box_plus(q))),
                F::disj(F::box(0, p), F::box(0, q)));
}

Formula dot3(const Formula& p, const Formula& q) {
  using F = Formula;
  const F dp = F::dia(0, p);
  const F dq = F::dia(0, q);
  return F::imp(F::conj(dp, dq),
                F::disj(F::disj(F::dia(0, F::conj(p, q)), F::dia(0, F::conj(p, dq))),
                        F::dia(0, F::conj(dp, q))));
}

}  // namespace formulas

}  // namespace provtop
