#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyp3term/moebius.hpp"
#include "hyp3term/multipoly.hpp"
#include "hyp3term/rational.hpp"

namespace hyp3term {

/// Affine image of one of a, b, c: coeffs[0] a + coeffs[1] b + coeffs[2] c + constant.
struct AbcAffine {
  std::array<long, 3> coeffs{};
  long constant = 0;
  friend bool operator==(const AbcAffine&, const AbcAffine&) = default;
};

/// Simultaneous images of (a, b, c); the default is the identity map.
struct ParamSubstitution {
  std::array<AbcAffine, 3> images{AbcAffine{{1, 0, 0}, 0}, AbcAffine{{0, 1, 0}, 0}, AbcAffine{{0, 0, 1}, 0}};
  bool is_identity() const { return *this == ParamSubstitution{}; }
  friend bool operator==(const ParamSubstitution&, const ParamSubstitution&) = default;
};

/// A polynomial kept as unit * prod(atom^e) * rest. Atoms are distinct linear
/// polynomials (hence irreducible), integer primitive with positive leading
/// coefficient; rest is integer primitive with positive leading coefficient.
/// The split is a factorization hint; only the expansion is canonical.
struct Factored {
  Rational unit = 1;
  std::vector<std::pair<MultiPoly, int>> atoms;
  MultiPoly rest{1};

  static Factored from_poly(const MultiPoly& p);
  bool is_zero() const { return unit == 0; }
  bool fully_factored() const { return rest.is_constant(); }
  int exponent(const MultiPoly& atom) const;
  void add_atom(const MultiPoly& atom, int e);
  MultiPoly expand() const;
  friend Factored operator*(const Factored& p, const Factored& q);
};

/// Normalized element of Q(a, b, c, x).
///
/// Invariants: gcd(num, den) = 1; den is an integer polynomial with content 1
/// and positive graded-lex leading coefficient; zero is 0/1. Equal values
/// therefore have identical (num, den). Values are immutable.
class RatFunc {
 public:
  RatFunc() : num_f_{0, {}, MultiPoly(1)}, den_(1) {}
  RatFunc(const Rational& q);  // NOLINT(google-explicit-constructor)
  RatFunc(long q) : RatFunc(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int q) : RatFunc(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const MultiPoly& p);
  static RatFunc variable(Var v) { return RatFunc(MultiPoly::variable(v)); }
  static RatFunc from_polys(const MultiPoly& num, const MultiPoly& den);
  static RatFunc from_factored(Factored num, Factored den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const Factored& num_factored() const { return num_f_; }
  const Factored& den_factored() const { return den_f_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator-(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator*(const RatFunc& f, const RatFunc& g);
  /// Throws Error on division by the zero function.
  friend RatFunc operator/(const RatFunc& f, const RatFunc& g);
  RatFunc& operator+=(const RatFunc& g) { return *this = *this + g; }
  RatFunc& operator-=(const RatFunc& g) { return *this = *this - g; }
  RatFunc& operator*=(const RatFunc& g) { return *this = *this * g; }
  RatFunc& operator/=(const RatFunc& g) { return *this = *this / g; }
  RatFunc inverse() const;
  RatFunc pow(int n) const;

  /// d/dx by the quotient rule.
  RatFunc d_dx() const;
  /// Simultaneous a -> A, b -> B, c -> C and x -> mu(x).
  RatFunc substitute(const ParamSubstitution& params, MoebiusTag xmap) const;
  /// Exact value at a point; throws Error if the denominator vanishes there.
  Rational evaluate(const std::array<Rational, kNumVars>& point) const;

  std::string to_string() const;
  /// Factored where the hint allows it, e.g. \frac{-(c + 1)(...)}{(a + 1)(b + 1) x (x - 1)}.
  std::string to_latex() const;
  /// {"num": [[e_a, e_b, e_c, e_x, "p/q"], ...], "den": [...]}, graded-lex order.
  nlohmann::json to_json() const;
  static RatFunc from_json(const nlohmann::json& j);

  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

  friend bool operator==(const RatFunc& f, const RatFunc& g) { return f.num_ == g.num_ && f.den_ == g.den_; }

 private:
  void finish();

  Factored num_f_;
  Factored den_f_;
  MultiPoly num_;
  MultiPoly den_;
};

nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

}  // namespace hyp3term

template <>
struct std::hash<hyp3term::RatFunc> {
  std::size_t operator()(const hyp3term::RatFunc& f) const { return f.hash(); }
};
