#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyp3term/ladder.hpp"
#include "hyp3term/rational.hpp"
#include "hyp3term/symmetry.hpp"

namespace hyp3term {

/// Binary precision carrying `digits` decimal digits.
mpfr_prec_t digits_to_bits(int digits);

/// An MPFR value with its own precision. Arithmetic rounds to nearest at the
/// larger precision of the operands; nothing depends on MPFR's defaults.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t bits);
  BigReal(const Rational& q, mpfr_prec_t bits);
  BigReal(long v, mpfr_prec_t bits);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend BigReal operator+(const BigReal& x, const BigReal& y);
  friend BigReal operator-(const BigReal& x, const BigReal& y);
  friend BigReal operator*(const BigReal& x, const BigReal& y);
  friend BigReal operator/(const BigReal& x, const BigReal& y);
  BigReal operator-() const;
  BigReal& operator+=(const BigReal& y) { return *this = *this + y; }
  BigReal& operator*=(const BigReal& y) { return *this = *this * y; }

  friend bool operator<(const BigReal& x, const BigReal& y) { return mpfr_less_p(x.v_, y.v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }

  BigReal abs() const;
  /// x^y for x > 0.
  BigReal pow(const BigReal& y) const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Decimal logarithm of |x|; -inf for zero.
  double log10_abs() const;
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

/// |x - y| / |y|, or |x| when y is zero.
BigReal relative_difference(const BigReal& x, const BigReal& y);

/// Series for F(a, b, c; x) with the guarded tail bound, any |x| < 1 and at
/// most 10^6 terms; absolute error below 10^-digits. Used where the
/// argument lies outside the strict domain of hyp2f1 (1 - x, x/(x-1)).
BigReal hyp_series(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits);

/// F(a, b, c; x) for |x| < 1/2.
BigReal hyp2f1(const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits);
BigReal hyp2f1(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits);

BigReal gamma(const Rational& z, int digits);
BigReal gamma(const BigReal& z, int digits);

struct ParamSample {
  Rational a, b, c, x;
  nlohmann::json to_json() const;
};

/// a, b, c, c-a, c-b, c-a-b, a-b all non-integral and 0 < x < 1/2.
bool admissible(const ParamSample& s);

/// Deterministic admissible samples: denominators at most 64, |a|, |b|, |c| <= 4,
/// x = n/1000 with 100 <= n <= 450.
std::vector<ParamSample> sample_params(std::uint64_t seed, std::size_t count);

/// f(a, b, c; x) = Gamma(a) Gamma(b) / Gamma(c) F(a, b, c; x).
BigReal scaled_f(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits);

/// y1, y2, y5 or y6 at (a, b, c; x), 0 < x < 1.
BigReal solution_y(int i, const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits);
BigReal solution_y(int i, const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits);

struct WronskianPair {
  BigReal direct, closed;
};
WronskianPair wronskian(const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits);

/// W(a,b,c)/W(a+k,b+l,c+m) derived from the closed form as a Gamma monomial.
SymFactor wronskian_ratio_from_closed_form();
/// (-1)^{k+l-m} (c-a)_{m-k} (c-b)_{m-l} / ((a)_k (b)_l) x^m (1-x)^{k+l-m}.
SymFactor wronskian_ratio_printed();

enum class QExpr { q1, q2 };
BigReal q_via(QExpr e, ShiftTriple shift, const ParamSample& s, int digits);
/// Q = ab (c)_m / (c (a)_k (b)_l) q1.
BigReal q_from_q1(ShiftTriple shift, const ParamSample& s, int digits);
/// Ladder Q evaluated exactly at the sample, then rounded.
BigReal ladder_q(ShiftTriple shift, const ParamSample& s, int digits);

struct NumericCheck {
  std::string identity;
  ShiftTriple shift;
  ParamSample sample;
  BigReal residual;
  BigReal tolerance;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// |F(a+k, b+l, c+m) - Q F(a+1, b+1, c+1) - R F(a, b, c)| with the ladder's
/// (Q, R). With `y5_family` the same relation is checked on y5 after the
/// normalization q = c (a)_k (b)_l Q / (ab (c)_m), r = (a)_k (b)_l R / (c)_m.
NumericCheck three_term_check(ShiftTriple shift, const ParamSample& s, int digits, bool y5_family = false);

/// Pfaff, the (0,1,1) relation, the derivative relation, the argument swap and
/// the three-term relation at `shift`; tolerance 10^-(digits-10) throughout.
/// Derivatives are Richardson-extrapolated central differences at step
/// 10^-(digits/4).
std::vector<NumericCheck> identity_checks(const ParamSample& s, ShiftTriple shift, int digits);

/// L_abc y_i at the sample by the same finite differences; tolerance
/// 10^-(digits-15).
NumericCheck differential_equation_check(int i, const ParamSample& s, int digits);

}  // namespace hyp3term
