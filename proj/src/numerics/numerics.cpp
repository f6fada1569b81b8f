#include "hyp3term/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyp3term {

namespace {

constexpr long kMaxTerms = 1'000'000;
// Digits carried beyond the requested precision inside compound evaluations.
constexpr int kGuard = 20;

BigReal ten_pow(long e, mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

Rational poch(const Rational& alpha, long n) {
  Rational r = 1;
  if (n >= 0) {
    for (long i = 0; i < n; ++i) r *= alpha + i;
    return r;
  }
  for (long i = 1; i <= -n; ++i) r *= alpha - i;
  if (r == 0) throw Error("Pochhammer symbol at a pole");
  return 1 / r;
}

BigReal value_at(const RatFunc& f, const ParamSample& s, mpfr_prec_t bits) {
  return BigReal(f.evaluate({s.a, s.b, s.c, s.x}), bits);
}

void require_admissible(const ParamSample& s) {
  if (!admissible(s)) throw Error("inadmissible parameter sample " + s.to_json().dump());
}

// Richardson-extrapolated central differences of g at x with step h:
// first and second derivatives with O(h^4) truncation error.
template <class G>
std::pair<BigReal, BigReal> derivatives(const G& g, const Rational& x, const Rational& h, mpfr_prec_t bits) {
  const BigReal g0 = g(x);
  auto d1 = [&](const Rational& t) {
    return (g(x + t) - g(x - t)) / BigReal(2 * t, bits);
  };
  auto d2 = [&](const Rational& t) {
    return (g(x + t) - BigReal(2, bits) * g0 + g(x - t)) / BigReal(t * t, bits);
  };
  const Rational half = h / 2;
  const BigReal three(3, bits), four(4, bits);
  return {(four * d1(half) - d1(h)) / three, (four * d2(half) - d2(h)) / three};
}

// 10^-(digits/4).
Rational fd_step(int digits) {
  Integer p = 1;
  for (int i = 0; i < digits / 4; ++i) p *= 10;
  return Rational(1) / Rational(p);
}

NumericCheck make_check(std::string identity, ShiftTriple shift, const ParamSample& s, BigReal residual,
                        long tol_exp) {
  BigReal tol = ten_pow(-tol_exp, residual.bits());
  const bool pass = residual.abs() < tol;
  return NumericCheck{std::move(identity), shift, s, residual.abs(), std::move(tol), pass};
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) throw Error("precision must be positive");
  return static_cast<mpfr_prec_t>(std::ceil(digits * std::log2(10.0))) + 16;
}

// ---------------------------------------------------------------------------
// BigReal

BigReal::BigReal(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}
BigReal::BigReal(const Rational& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}
BigReal::BigReal(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, o.bits());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, o.bits());
  mpfr_swap(v_, o.v_);
}
BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigReal::~BigReal() { mpfr_clear(v_); }

#define HYP3TERM_BINOP(op, fn)                                   \
  BigReal operator op(const BigReal& x, const BigReal& y) {      \
    BigReal r(std::max(x.bits(), y.bits()));                     \
    fn(r.v_, x.v_, y.v_, MPFR_RNDN);                             \
    return r;                                                    \
  }
HYP3TERM_BINOP(+, mpfr_add)
HYP3TERM_BINOP(-, mpfr_sub)
HYP3TERM_BINOP(*, mpfr_mul)
HYP3TERM_BINOP(/, mpfr_div)
#undef HYP3TERM_BINOP

BigReal BigReal::operator-() const {
  BigReal r(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::abs() const {
  BigReal r(bits());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow(const BigReal& y) const {
  if (mpfr_sgn(v_) <= 0) throw Error("real power of a non-positive base");
  BigReal r(std::max(bits(), y.bits()));
  mpfr_pow(r.v_, v_, y.v_, MPFR_RNDN);
  return r;
}

double BigReal::log10_abs() const {
  if (is_zero()) return -INFINITY;
  BigReal r(64);
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  mpfr_log10(r.v_, r.v_, MPFR_RNDN);
  return mpfr_get_d(r.v_, MPFR_RNDN);
}

std::string BigReal::to_string(int digits) const {
  char* text = nullptr;
  mpfr_asprintf(&text, "%.*Re", std::max(digits - 1, 0), v_);
  std::string out(text);
  mpfr_free_str(text);
  return out;
}

BigReal relative_difference(const BigReal& x, const BigReal& y) {
  const BigReal d = (x - y).abs();
  return y.is_zero() ? d : d / y.abs();
}

// ---------------------------------------------------------------------------
// Series and Gamma

BigReal hyp_series(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits) {
  if (is_integer(c) && c <= 0) throw Error("F(a, b, c; x) undefined for c a non-positive integer");
  if (!(x.abs() < BigReal(1, 64))) throw Error("hypergeometric series needs |x| < 1");
  const double ax = std::fabs(x.to_double());
  const double A = std::fabs(a.get_d()), B = std::fabs(b.get_d()), C = std::fabs(c.get_d());
  // Extra digits absorb cancellation in the partial sums; redone if short.
  for (int extra = 10;; extra += 20) {
    const mpfr_prec_t bits = digits_to_bits(digits + extra);
    const BigReal xr = BigReal(0L, bits) + x;
    const BigReal threshold = ten_pow(-(digits + 2), bits);
    BigReal sum(1, bits), term(1, bits);
    BigReal largest(1, 64);
    bool done = false;
    for (long n = 0; n < kMaxTerms; ++n) {
      // Remainder after term n: |t_{j+1}/t_j| <= |x| (j+A)/(j-C) max(1, (j+B)/(j+1)),
      // each factor non-increasing in j once j > C.
      const double N = static_cast<double>(n);
      if (term.is_zero()) {
        done = true;
        break;
      }
      if (N > C + 1) {
        const double rho = ax * (N + A) / (N - C) * std::max(1.0, (N + B) / (N + 1)) * (1 + 1e-9);
        if (rho < 1) {
          const BigReal tail = term.abs() * BigReal(Rational(rho / (1 - rho)), 64);
          if (tail < threshold) {
            done = true;
            break;
          }
        }
      }
      const Rational ratio = (a + n) * (b + n) / ((c + n) * (n + 1));
      term = term * BigReal(ratio, bits) * xr;
      sum += term;
      const BigReal t = term.abs();
      if (largest < t) largest = BigReal(0L, 64) + t;
    }
    if (!done) throw Error("hypergeometric series did not converge within 10^6 terms");
    // Rounding error grows like (largest partial term) * 10^-(digits+extra).
    if (largest.log10_abs() < extra - 3) return sum;
    if (extra > 400) throw Error("hypergeometric series: cancellation beyond supported precision");
  }
}

BigReal hyp2f1(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits) {
  if (!(x.abs() < BigReal(Rational(1, 2), 64))) throw Error("hyp2f1 requires |x| < 1/2");
  return hyp_series(a, b, c, x, digits);
}

BigReal hyp2f1(const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits) {
  if (abs(x) >= Rational(1, 2)) throw Error("hyp2f1 requires |x| < 1/2");
  return hyp_series(a, b, c, BigReal(x, digits_to_bits(digits + 10)), digits);
}

BigReal gamma(const BigReal& z, int digits) {
  if (mpfr_integer_p(z.get()) && mpfr_sgn(z.get()) <= 0) throw Error("Gamma has a pole at non-positive integers");
  BigReal r(digits_to_bits(digits));
  mpfr_gamma(r.get(), z.get(), MPFR_RNDN);
  return r;
}

BigReal gamma(const Rational& z, int digits) {
  if (is_integer(z) && z <= 0) throw Error("Gamma has a pole at non-positive integers");
  return gamma(BigReal(z, digits_to_bits(digits + 5)), digits);
}

// ---------------------------------------------------------------------------
// Samples

nlohmann::json ParamSample::to_json() const {
  return {{"a", hyp3term::to_string(a)}, {"b", hyp3term::to_string(b)}, {"c", hyp3term::to_string(c)},
          {"x", hyp3term::to_string(x)}};
}

bool admissible(const ParamSample& s) {
  for (const Rational& q : {s.a, s.b, s.c, Rational(s.c - s.a), Rational(s.c - s.b), Rational(s.c - s.a - s.b),
                            Rational(s.a - s.b)})
    if (is_integer(q)) return false;
  return s.x > 0 && s.x < Rational(1, 2);
}

std::vector<ParamSample> sample_params(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den(1, 64), xn(100, 450);
  auto param = [&] {
    const long d = den(rng);
    return make_rational(std::uniform_int_distribution<long>(-4 * d, 4 * d)(rng), d);
  };
  std::vector<ParamSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < 10'000 && !found; ++attempt) {
      ParamSample s{param(), param(), param(), make_rational(xn(rng), 1000)};
      if (admissible(s)) {
        out.push_back(std::move(s));
        found = true;
      }
    }
    if (!found) throw Error("sample_params: no admissible sample after 10^4 tries");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solutions and the Wronskian

BigReal scaled_f(const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits) {
  return gamma(a, digits) * gamma(b, digits) / gamma(c, digits) * hyp_series(a, b, c, x, digits);
}

BigReal solution_y(int i, const Rational& a, const Rational& b, const Rational& c, const BigReal& x, int digits) {
  require_admissible({a, b, c, Rational(1, 4)});
  const mpfr_prec_t bits = digits_to_bits(digits);
  const BigReal one(1, bits);
  if (!(BigReal(0L, bits) < x) || !(x < one)) throw Error("solution_y needs 0 < x < 1");
  switch (i) {
    case 1:
      return scaled_f(a, b, c, x, digits);
    case 2:
      return scaled_f(a, b, a + b + 1 - c, one - x, digits);
    case 5:
      return x.pow(BigReal(1 - c, bits)) * scaled_f(a + 1 - c, b + 1 - c, 2 - c, x, digits);
    case 6:
      return (one - x).pow(BigReal(c - a - b, bits)) * scaled_f(c - a, c - b, c + 1 - a - b, one - x, digits);
    default:
      throw Error("solution_y: index must be 1, 2, 5 or 6");
  }
}

BigReal solution_y(int i, const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits) {
  return solution_y(i, a, b, c, BigReal(x, digits_to_bits(digits + 10)), digits);
}

WronskianPair wronskian(const Rational& a, const Rational& b, const Rational& c, const Rational& x, int digits) {
  require_admissible({a, b, c, x});
  const int wd = digits + kGuard;
  const mpfr_prec_t bits = digits_to_bits(wd);
  BigReal direct = solution_y(5, a, b, c, x, wd) * solution_y(1, a + 1, b + 1, c + 1, x, wd) -
                   solution_y(1, a, b, c, x, wd) * solution_y(5, a + 1, b + 1, c + 1, x, wd);
  const BigReal xr(x, bits), one(1, bits);
  BigReal closed = -(gamma(a, wd) * gamma(b, wd) * gamma(a + 1 - c, wd) * gamma(b + 1 - c, wd)) /
                   (gamma(c, wd) * gamma(1 - c, wd)) * xr.pow(BigReal(-c, bits)) *
                   (one - xr).pow(BigReal(c - a - b - 1, bits));
  return {std::move(direct), std::move(closed)};
}

SymFactor wronskian_ratio_from_closed_form() {
  // W = -Gamma(a) Gamma(b) Gamma(a+1-c) Gamma(b+1-c) / (Gamma(c) Gamma(1-c))
  //     x^{-c} (1-x)^{c-a-b-1}, divided by the same at (a+k, b+l, c+m).
  const std::vector<std::pair<std::string, long>> gammas = {
      {"a", 1}, {"b", 1}, {"a + 1 - c", 1}, {"b + 1 - c", 1}, {"c", -1}, {"1 - c", -1}};
  auto shifted = [](ParamForm f) {
    // a -> a + k, b -> b + l, c -> c + m.
    f[3] += f[0];
    f[4] += f[1];
    f[5] += f[2];
    return f;
  };
  std::vector<std::pair<ParamForm, long>> terms;
  for (const auto& [text, e] : gammas) {
    const ParamForm f = parse_param_form(text);
    terms.emplace_back(f, e);
    terms.emplace_back(shifted(f), -e);
  }
  SymFactor ratio = SymFactor::gamma_monomial(terms);
  auto exponent_difference = [&](const std::string& text) {
    const ParamForm f = parse_param_form(text), g = shifted(f);
    IndexForm d{};
    for (int i = 0; i < 3; ++i)
      if (f[i] != g[i]) throw Error("exponent difference depends on a, b, c");
    for (int i = 0; i < 4; ++i) d[i] = f[3 + i] - g[3 + i];
    return d;
  };
  ratio = ratio * SymFactor::x_power(exponent_difference("-c")) *
          SymFactor::one_minus_x_power(exponent_difference("c - a - b - 1"));
  return ratio;
}

SymFactor wronskian_ratio_printed() {
  return SymFactor::parse("S[k + l - m] P[c - a|m - k] P[c - b|m - l] /P[a|k] /P[b|l] X[m] Y[k + l - m]");
}

// ---------------------------------------------------------------------------
// q1, q2 and the three-term relation

BigReal q_via(QExpr e, ShiftTriple z, const ParamSample& s, int digits) {
  require_admissible(s);
  const int wd = digits + kGuard;
  const mpfr_prec_t bits = digits_to_bits(wd);
  const auto& [a, b, c, x] = s;
  const Rational ak = a + z.k, bl = b + z.l, cm = c + z.m;
  const int u = e == QExpr::q1 ? 5 : 6, v = e == QExpr::q1 ? 1 : 2;
  const BigReal yu = solution_y(u, a, b, c, x, wd), yv = solution_y(v, a, b, c, x, wd);
  const BigReal num = yu * solution_y(v, ak, bl, cm, x, wd) - yv * solution_y(u, ak, bl, cm, x, wd);
  const BigReal den = yu * solution_y(v, a + 1, b + 1, c + 1, x, wd) - yv * solution_y(u, a + 1, b + 1, c + 1, x, wd);
  if (den.is_zero()) throw Error("q: vanishing denominator at the sample");
  if (e == QExpr::q1) return num / den;
  const long sign_exp = z.m + 1 - z.k - z.l;
  const Rational pre = Rational(sign_exp % 2 == 0 ? 1 : -1) / (poch(c - a, z.m - z.k) * poch(c - b, z.m - z.l));
  return BigReal(pre, bits) * num / den;
}

BigReal q_from_q1(ShiftTriple z, const ParamSample& s, int digits) {
  const Rational pre = s.a * s.b * poch(s.c, z.m) / (s.c * poch(s.a, z.k) * poch(s.b, z.l));
  return BigReal(pre, digits_to_bits(digits + kGuard)) * q_via(QExpr::q1, z, s, digits);
}

BigReal ladder_q(ShiftTriple shift, const ParamSample& s, int digits) {
  return value_at(compute_qr(shift).Q, s, digits_to_bits(digits + kGuard));
}

nlohmann::json NumericCheck::to_json() const {
  return {{"identity", identity},
          {"shift", {shift.k, shift.l, shift.m}},
          {"sample", sample.to_json()},
          {"residual", residual.to_string(6)},
          {"tolerance", tolerance.to_string(2)},
          {"pass", pass}};
}

NumericCheck three_term_check(ShiftTriple z, const ParamSample& s, int digits, bool y5_family) {
  require_admissible(s);
  const int wd = digits + kGuard;
  const mpfr_prec_t bits = digits_to_bits(wd);
  const auto& [a, b, c, x] = s;
  const QRPair qr = compute_qr(z);
  Rational Q = qr.Q.evaluate({a, b, c, x}), R = qr.R.evaluate({a, b, c, x});
  auto fam = [&](const Rational& p, const Rational& q, const Rational& r) {
    return y5_family ? solution_y(5, p, q, r, x, wd) : hyp2f1(p, q, r, x, wd);
  };
  if (y5_family) {
    const Rational scale = poch(a, z.k) * poch(b, z.l) / poch(c, z.m);
    Q = Q * scale * c / (a * b);
    R = R * scale;
  }
  const BigReal residual = fam(a + z.k, b + z.l, c + z.m) - BigReal(Q, bits) * fam(a + 1, b + 1, c + 1) -
                           BigReal(R, bits) * fam(a, b, c);
  return make_check(y5_family ? "three_term_y5" : "three_term", z, s, residual, digits - 10);
}

std::vector<NumericCheck> identity_checks(const ParamSample& s, ShiftTriple shift, int digits) {
  require_admissible(s);
  const int wd = digits + kGuard;
  const mpfr_prec_t bits = digits_to_bits(wd);
  const auto& [a, b, c, x] = s;
  const long tol = digits - 10;
  const BigReal one(1, bits), xr(x, bits);
  const Rational X = x / (x - 1);
  const BigReal Xr(X, bits);
  std::vector<NumericCheck> out;

  const BigReal F = hyp2f1(a, b, c, x, wd);
  out.push_back(make_check("pfaff", {}, s,
                           F - (one - xr).pow(BigReal(-b, bits)) * hyp_series(c - a, b, c, Xr, wd), tol));

  const BigReal lhs = hyp_series(c - a, b + 1, c + 1, Xr, wd);
  const BigReal rhs = BigReal((a - c) / (a * (1 - x)), bits) * hyp_series(c - a + 1, b + 1, c + 1, Xr, wd) +
                      BigReal(c / a, bits) * hyp_series(c - a, b, c, Xr, wd);
  out.push_back(make_check("relation_011", {0, 1, 1}, s, lhs - rhs, tol));

  auto Fx = [&](const Rational& t) { return hyp2f1(a, b, c, t, wd); };
  const BigReal dF = derivatives(Fx, x, fd_step(digits), bits).first;
  out.push_back(make_check("derivative", {1, 1, 1}, s,
                           dF - BigReal(a * b / c, bits) * hyp2f1(a + 1, b + 1, c + 1, x, wd), tol));

  out.push_back(make_check("argument_swap", {}, s, F - hyp2f1(b, a, c, x, wd), tol));
  out.push_back(three_term_check(shift, s, digits));
  return out;
}

NumericCheck differential_equation_check(int i, const ParamSample& s, int digits) {
  require_admissible(s);
  const int wd = digits + kGuard;
  const mpfr_prec_t bits = digits_to_bits(wd);
  const auto& [a, b, c, x] = s;
  auto y = [&](const Rational& t) { return solution_y(i, a, b, c, t, wd); };
  const auto [d1, d2] = derivatives(y, x, fd_step(digits), bits);
  const Rational w = x * (1 - x);
  const BigReal residual = d2 + BigReal((c - (a + b + 1) * x) / w, bits) * d1 - BigReal(a * b / w, bits) * y(x);
  return make_check("ode_y" + std::to_string(i), {}, s, residual, digits - 15);
}

}  // namespace hyp3term
