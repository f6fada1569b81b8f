#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyp3term/rational.hpp"

namespace hyp3term {

/// Indeterminates of the field Q(a, b, c, x), in monomial-order priority.
enum class Var : unsigned { a = 0, b = 1, c = 2, x = 3 };
inline constexpr unsigned kNumVars = 4;
inline constexpr std::array<Var, kNumVars> kAllVars = {Var::a, Var::b, Var::c, Var::x};

char var_name(Var v);

/// Exponent vector (e_a, e_b, e_c, e_x) packed so that integer comparison is
/// graded-lexicographic order with a > b > c > x.
class Monomial {
 public:
  using Exponents = std::array<unsigned, kNumVars>;
  static constexpr unsigned kMaxExponent = (1u << 12) - 1;

  constexpr Monomial() = default;
  explicit Monomial(const Exponents& e);
  static Monomial power(Var v, unsigned n = 1);

  unsigned exponent(Var v) const { return exponent(static_cast<unsigned>(v)); }
  unsigned exponent(unsigned i) const {
    return static_cast<unsigned>((bits_ >> (12 * (3 - i))) & kMaxExponent);
  }
  unsigned degree() const { return static_cast<unsigned>(bits_ >> 48); }
  Exponents exponents() const;
  bool is_one() const { return bits_ == 0; }
  bool divides(Monomial other) const;
  std::uint64_t bits() const { return bits_; }

  friend Monomial operator*(Monomial p, Monomial q) { return Monomial(p.bits_ + q.bits_); }
  /// Requires `q.divides(p)`.
  friend Monomial operator/(Monomial p, Monomial q) { return Monomial(p.bits_ - q.bits_); }
  friend auto operator<=>(Monomial, Monomial) = default;

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

struct Term {
  Monomial mono;
  Rational coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in Q[a, b, c, x]. Terms are kept sorted by descending
/// graded-lex monomial with no zero coefficients; the zero polynomial has no
/// terms.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(const Rational& constant);
  explicit MultiPoly(long constant) : MultiPoly(Rational(constant)) {}
  static MultiPoly variable(Var v);
  static MultiPoly monomial(Monomial m, const Rational& coef);
  /// Affine form n0 + n_a a + n_b b + n_c c + n_x x.
  static MultiPoly linear(const Rational& constant, const std::array<Rational, kNumVars>& coeffs);
  /// Accepts terms in any order; merges duplicates and drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }

  unsigned degree(Var v) const;
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  bool contains(Var v) const { return degree(v) > 0; }
  bool is_linear() const { return !is_zero() && total_degree() == 1; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);

  MultiPoly scaled(const Rational& s) const;
  MultiPoly times_monomial(Monomial m, const Rational& s = 1) const;
  MultiPoly pow(unsigned n) const;

  MultiPoly derivative(Var v) const;
  /// Coefficients with respect to `v`: result[i] multiplies v^i.
  std::vector<MultiPoly> coefficients(Var v) const;
  static MultiPoly from_coefficients(Var v, const std::vector<MultiPoly>& coeffs);

  /// Positive rational c with (this / c) integral and primitive; 1 for zero.
  Rational content() const;
  /// Integer primitive associate with positive leading coefficient.
  MultiPoly primitive() const;
  /// Exact quotient if `d` divides this polynomial, otherwise nullopt.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  Rational evaluate(const std::array<Rational, kNumVars>& point) const;
  /// Simultaneous substitution of every indeterminate by a polynomial.
  MultiPoly compose(const std::array<MultiPoly, kNumVars>& images) const;

  std::size_t hash() const;
  std::string to_string() const;
  std::string to_latex() const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// gcd over Q, normalized to an integer primitive polynomial with positive
/// leading coefficient; gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

}  // namespace hyp3term

template <>
struct std::hash<hyp3term::MultiPoly> {
  std::size_t operator()(const hyp3term::MultiPoly& p) const { return p.hash(); }
};
