#include "provtop/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "provtop/formula.hpp"

namespace provtop {

Ordinal::Ordinal() = default;

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back({Ordinal(), Natural(n)});
}

const std::vector<Ordinal::Term>& Ordinal::terms() const noexcept { return terms_; }
bool Ordinal::is_zero() const noexcept { return terms_.empty(); }

Ordinal Ordinal::natural(const Natural& n) {
  if (n < 0) throw std::domain_error("negative natural");
  return monomial(Ordinal(), n);
}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e) { return monomial(e, 1); }

Ordinal Ordinal::monomial(const Ordinal& e, const Natural& c) {
  Ordinal out;
  if (c > 0) out.terms_.push_back({e, c});
  return out;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient <= 0) throw std::invalid_argument("coefficients must be positive");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw std::invalid_argument("exponents must strictly decrease");
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool Ordinal::is_finite() const { return terms_.empty() || terms_.front().exponent.is_zero(); }

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

Ordinal Ordinal::leading_exponent() const {
  return terms_.empty() ? Ordinal() : terms_.front().exponent;
}

Natural Ordinal::leading_coefficient() const {
  return terms_.empty() ? Natural(0) : terms_.front().coefficient;
}

Natural Ordinal::coefficient_of(const Ordinal& e) const {
  for (const auto& t : terms_)
    if (t.exponent == e) return t.coefficient;
  return 0;
}

Natural Ordinal::to_natural() const {
  if (!is_finite()) throw std::domain_error("ordinal " + to_string(*this) + " is infinite");
  return terms_.empty() ? Natural(0) : terms_.front().coefficient;
}

std::size_t Ordinal::height() const {
  std::size_t h = 0;
  for (const auto& t : terms_)
    if (!t.exponent.is_zero()) h = std::max(h, 1 + t.exponent.height());
  return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (a.terms_[i].coefficient != b.terms_[i].coefficient)
      return a.terms_[i].coefficient < b.terms_[i].coefficient ? std::strong_ordering::less
                                                              : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& bt = b.terms();
  const Ordinal& e = bt.front().exponent;
  std::vector<Ordinal::Term> out;
  Natural carry = 0;
  for (const auto& t : a.terms()) {
    const auto c = t.exponent <=> e;
    if (c > 0) out.push_back(t);
    else if (c == 0) carry = t.coefficient;
    else break;
  }
  out.push_back({e, carry + bt.front().coefficient});
  out.insert(out.end(), bt.begin() + 1, bt.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal sub_left(const Ordinal& b, const Ordinal& a) {
  if (a > b)
    throw std::domain_error("sub_left: " + to_string(a) + " exceeds " + to_string(b));
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::size_t i = 0;
  while (i < at.size() && i < bt.size() && at[i].exponent == bt[i].exponent &&
         at[i].coefficient == bt[i].coefficient)
    ++i;
  if (i == bt.size()) return Ordinal();  // a == b
  std::vector<Ordinal::Term> out;
  if (i < at.size() && at[i].exponent == bt[i].exponent) {
    out.push_back({bt[i].exponent, bt[i].coefficient - at[i].coefficient});
    ++i;
  }
  out.insert(out.end(), bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal omega_pow(const Ordinal& e) { return Ordinal::omega_pow(e); }

Ordinal mul_nat(const Ordinal& a, const Natural& k) {
  if (k < 0) throw std::domain_error("mul_nat: negative factor");
  if (a.is_zero() || k == 0) return Ordinal();
  auto terms = a.terms();
  terms.front().coefficient *= k;
  return Ordinal::from_terms(std::move(terms));
}

Ordinal times_omega(const Ordinal& q) {
  if (q.is_zero()) return Ordinal();
  return Ordinal::omega_pow(add(q.leading_exponent(), Ordinal(1)));
}

Ordinal ell(const Ordinal& a) { return a.is_zero() ? Ordinal() : a.terms().back().exponent; }

Ordinal ell_iter(const Ordinal& a, std::size_t k) {
  Ordinal out = a;
  for (std::size_t i = 0; i < k && !out.is_zero(); ++i) out = ell(out);
  return out;
}

bool in_U(const Ordinal& a, std::size_t m, const Ordinal& b) { return ell_iter(a, m) > b; }

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << '+';
    first = false;
    if (t.exponent.is_zero()) {
      os << t.coefficient;
      continue;
    }
    os << 'w';
    if (!(t.exponent == Ordinal(1))) os << "^{" << to_string(t.exponent) << '}';
    if (t.coefficient != 1) os << '*' << t.coefficient;
  }
  return os.str();
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal run() {
    Ordinal out = cnf();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return out;
  }

 private:
  Ordinal cnf() {
    Ordinal sum = term();
    skip();
    while (peek() == '+') {
      ++pos_;
      sum = add(sum, term());
      skip();
    }
    return sum;
  }

  Ordinal term() {
    skip();
    if (peek() == 'w') {
      ++pos_;
      Ordinal e(1);
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        if (peek() == '{') {
          ++pos_;
          e = cnf();
          skip();
          expect('}');
        } else {
          e = Ordinal::natural(nat());
        }
      }
      Natural c = 1;
      skip();
      if (peek() == '*') {
        ++pos_;
        c = nat();
        if (c == 0) fail("coefficient must be positive");
      }
      return Ordinal::monomial(e, c);
    }
    return Ordinal::natural(nat());
  }

  Natural nat() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number or 'w'");
    return Natural(std::string(text_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).run(); }

Ordinal random_ordinal(std::mt19937_64& rng, std::size_t depth, std::size_t max_terms,
                       std::uint64_t max_coefficient) {
  if (depth == 0) return Ordinal(std::uniform_int_distribution<std::uint64_t>(0, 9)(rng));
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, max_terms)(rng);
  Ordinal out;
  // exponents in descending order, so nothing gets absorbed
  std::vector<Ordinal> exps;
  for (std::size_t i = 0; i < k; ++i) exps.push_back(random_ordinal(rng, depth - 1, max_terms, max_coefficient));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  for (const auto& e : exps) {
    const auto c = std::uniform_int_distribution<std::uint64_t>(1, max_coefficient)(rng);
    out = add(out, Ordinal::monomial(e, c));
  }
  return out;
}

}  // namespace provtop
