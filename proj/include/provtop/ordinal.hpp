#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace provtop {

using Natural = boost::multiprecision::cpp_int;

// Ordinal below epsilon_0 in Cantor normal form w^{e1}*c1 + ... + w^{ek}*ck, e1 > ... > ek.
class Ordinal {
 public:
  struct Term;

  Ordinal();  // 0
  Ordinal(std::uint64_t n);  // NOLINT: finite ordinals convert implicitly
  static Ordinal natural(const Natural& n);
  static Ordinal omega();
  static Ordinal omega_pow(const Ordinal& e);
  // w^e * c; c = 0 gives 0.
  static Ordinal monomial(const Ordinal& e, const Natural& c);
  // Terms must already be in normal form (checked).
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept;
  bool is_zero() const noexcept;
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;
  // Leading exponent and coefficient; both 0 for the ordinal 0.
  Ordinal leading_exponent() const;
  Natural leading_coefficient() const;
  // Coefficient of w^e (0 when absent).
  Natural coefficient_of(const Ordinal& e) const;
  // Value of a finite ordinal; throws std::domain_error otherwise.
  Natural to_natural() const;
  std::size_t height() const;  // nesting depth of exponents, 0 for naturals

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  Natural coefficient;
};

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b);

Ordinal add(const Ordinal& a, const Ordinal& b);
// The unique g with a + g = b; throws std::domain_error when a > b.
Ordinal sub_left(const Ordinal& b, const Ordinal& a);
Ordinal omega_pow(const Ordinal& e);
// a + a + ... + a (k times).
Ordinal mul_nat(const Ordinal& a, const Natural& k);
// q * w for q > 0, i.e. w^(lead(q) + 1).
Ordinal times_omega(const Ordinal& q);

// Last exponent of the normal form; ell(0) = 0.
Ordinal ell(const Ordinal& a);
Ordinal ell_iter(const Ordinal& a, std::size_t k);
// a lies in U^m_b, i.e. ell^m(a) > b.
bool in_U(const Ordinal& a, std::size_t m, const Ordinal& b);

std::string to_string(const Ordinal& a);
// cnf := "0" | term ("+" term)*; term := "w" ("^{" cnf "}")? ("*" nat)? | nat.
// Terms are summed with ordinal addition, so "1+w" reads as w.
Ordinal parse_ordinal(std::string_view text);

// Random ordinal with exponent nesting at most `depth`, used by property tests.
Ordinal random_ordinal(std::mt19937_64& rng, std::size_t depth, std::size_t max_terms = 3,
                       std::uint64_t max_coefficient = 5);

}  // namespace provtop
