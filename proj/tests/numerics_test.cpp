#include <gtest/gtest.h>

#include <thread>

#include "hyp3term/numerics.hpp"
#include "random_support.hpp"

namespace hyp3term {
namespace {

constexpr int P = 50;
const mpfr_prec_t kBits = digits_to_bits(P + 20);

Rational q(long n, long d = 1) { return make_rational(n, d); }
BigReal big(const Rational& v) { return BigReal(v, kBits); }

// |v| < 10^-e.
bool below(const BigReal& v, long e) { return v.log10_abs() < -static_cast<double>(e); }

const ParamSample kPrinted{q(1, 3), q(1, 5), q(9, 7), q(1, 4)};

TEST(Hyp2f1, ZeroArgument) {
  EXPECT_EQ(hyp2f1(q(1, 3), q(-5, 2), q(7, 3), Rational(0), P).to_double(), 1.0);
}

TEST(Hyp2f1, BinomialCase) {
  // F(a, b, b; x) = (1 - x)^-a against MPFR's power function.
  const Rational a = q(1, 3), b = q(7, 5), x = q(1, 4);
  BigReal oracle(kBits), base(1 - x, kBits), e(-a, kBits);
  mpfr_pow(oracle.get(), base.get(), e.get(), MPFR_RNDN);
  EXPECT_TRUE(below(hyp2f1(a, b, b, x, P) - oracle, 48));
}

TEST(Hyp2f1, Arcsine) {
  // F(1/2, 1/2, 3/2; t^2) = arcsin(t)/t at t = 1/5.
  BigReal t(q(1, 5), kBits), oracle(kBits);
  mpfr_asin(oracle.get(), t.get(), MPFR_RNDN);
  oracle = oracle / t;
  EXPECT_TRUE(below(hyp2f1(q(1, 2), q(1, 2), q(3, 2), q(1, 25), P) - oracle, 48));
}

TEST(Hyp2f1, TerminatingSeries) {
  // F(-2, b, c; x) = 1 - 2bx/c + b(b+1)x^2/(c(c+1)).
  const Rational b = q(3, 7), c = q(5, 3), x = q(2, 5);
  const Rational exact = 1 - 2 * b * x / c + b * (b + 1) * x * x / (c * (c + 1));
  EXPECT_TRUE(below(hyp2f1(q(-2), b, c, x, P) - big(exact), 60));
}

TEST(Hyp2f1, Errors) {
  EXPECT_THROW(hyp2f1(q(1, 3), q(1, 5), q(0), q(1, 4), P), Error);
  EXPECT_THROW(hyp2f1(q(1, 3), q(1, 5), q(-2), q(1, 4), P), Error);
  EXPECT_THROW(hyp2f1(q(1, 3), q(1, 5), q(9, 7), q(1, 2), P), Error);
  EXPECT_THROW(hyp2f1(q(1, 3), q(1, 5), q(9, 7), q(-3, 5), P), Error);
  EXPECT_THROW(hyp_series(q(1, 3), q(1, 5), q(9, 7), big(q(1)), P), Error);
  EXPECT_NO_THROW(hyp_series(q(1, 3), q(1, 5), q(9, 7), big(q(9, 10)), P));
}

TEST(Hyp2f1, DoublingPrecisionChangesLittle) {
  for (const auto& s : sample_params(7, 20)) {
    const BigReal lo = hyp2f1(s.a, s.b, s.c, s.x, P), hi = hyp2f1(s.a, s.b, s.c, s.x, 2 * P);
    EXPECT_TRUE(below(lo - hi, P)) << s.to_json().dump();
  }
}

TEST(Gamma, Values) {
  EXPECT_EQ(gamma(q(1), P).to_double(), 1.0);
  EXPECT_TRUE(below(gamma(q(5), P) - big(q(24)), 45));
  const Rational z = q(-7, 3);
  EXPECT_TRUE(below(relative_difference(gamma(z + 1, P), big(z) * gamma(z, P)), 48));
  const Rational alpha = q(2, 7);
  Rational product = 1;
  for (int i = 0; i < 6; ++i) product *= alpha + i;
  EXPECT_TRUE(below(relative_difference(gamma(alpha + 6, P) / gamma(alpha, P), big(product)), 48));
  EXPECT_THROW(gamma(q(0), P), Error);
  EXPECT_THROW(gamma(q(-3), P), Error);
}

TEST(Solutions, Definitions) {
  const auto& [a, b, c, x] = kPrinted;
  const BigReal ratio = solution_y(1, a, b, c, x, P) / hyp2f1(a, b, c, x, P);
  EXPECT_TRUE(below(relative_difference(ratio, gamma(a, P) * gamma(b, P) / gamma(c, P)), 45));
  const BigReal y2 = gamma(a, P) * gamma(b, P) / gamma(a + b + 1 - c, P) *
                     hyp_series(a, b, a + b + 1 - c, big(q(3, 4)), P);
  EXPECT_TRUE(below(relative_difference(solution_y(2, a, b, c, x, P), y2), 45));
  EXPECT_THROW(solution_y(3, a, b, c, x, P), Error);
  EXPECT_THROW(solution_y(1, q(1), b, c, x, P), Error);
  EXPECT_THROW(solution_y(1, a, b, c, q(1), P), Error);
}

TEST(Solutions, SatisfyTheDifferentialEquation) {
  std::vector<ParamSample> samples = sample_params(11, 4);
  samples.push_back(kPrinted);
  for (const auto& s : samples)
    for (int i : {1, 2, 5, 6}) {
      const NumericCheck r = differential_equation_check(i, s, P);
      EXPECT_TRUE(r.pass) << r.to_json().dump();
    }
}

TEST(Wronskian, DirectMatchesClosedForm) {
  for (const auto& s : sample_params(3, 10)) {
    const WronskianPair w = wronskian(s.a, s.b, s.c, s.x, P);
    EXPECT_TRUE(below(relative_difference(w.direct, w.closed), P - 15)) << s.to_json().dump();
  }
}

TEST(Wronskian, ClosedFormPowerIsRealAndPositive) {
  // At c = 1/2 the power of x is x^-1/2; the sign comes from the Gamma factor only.
  const Rational a = q(1, 3), b = q(1, 5), c = q(1, 2), x = q(1, 4);
  const WronskianPair w = wronskian(a, b, c, x, P);
  const BigReal g = -(gamma(a, P) * gamma(b, P) * gamma(a + 1 - c, P) * gamma(b + 1 - c, P)) /
                    (gamma(c, P) * gamma(1 - c, P));
  // x^-1/2 = 2 and (1-x)^{c-a-b-1} > 0.
  const BigReal rest = w.closed / (g * big(q(2)));
  EXPECT_GT(rest.to_double(), 0.0);
  EXPECT_TRUE(below(relative_difference(w.direct, w.closed), P - 15));
}

TEST(Wronskian, RatioFromClosedFormIsThePrintedExpression) {
  const SymFactor derived = wronskian_ratio_from_closed_form();
  EXPECT_EQ(derived, wronskian_ratio_printed()) << derived.to_string();
}

TEST(Wronskian, RatioNumerically) {
  const ShiftTriple z{2, -1, 1};
  for (const auto& s : sample_params(5, 4)) {
    const BigReal lhs = wronskian(s.a, s.b, s.c, s.x, P).direct /
                        wronskian(s.a + z.k, s.b + z.l, s.c + z.m, s.x, P).direct;
    const Rational rhs = wronskian_ratio_printed().expand(z).evaluate({s.a, s.b, s.c, s.x});
    EXPECT_TRUE(below(relative_difference(lhs, big(rhs)), P - 15)) << s.to_json().dump();
  }
}

TEST(QExpressions, TrivialShift) {
  EXPECT_EQ(q_via(QExpr::q1, {1, 1, 1}, kPrinted, P).to_double(), 1.0);
  EXPECT_TRUE(below(q_from_q1({1, 1, 1}, kPrinted, P) - big(q(1)), 60));
}

TEST(QExpressions, AgreeWithEachOtherAndTheLadder) {
  testing::RandomFunctions gen(17);
  for (const auto& s : sample_params(13, 10)) {
    const ShiftTriple z{gen.integer(-1, 2), gen.integer(-1, 2), gen.integer(-1, 2)};
    const BigReal q1 = q_via(QExpr::q1, z, s, P), q2 = q_via(QExpr::q2, z, s, P);
    EXPECT_TRUE(below(relative_difference(q1, q2), P - 15)) << z.to_string() << s.to_json().dump();
    EXPECT_TRUE(below(relative_difference(q_from_q1(z, s, P), ladder_q(z, s, P)), P - 15))
        << z.to_string() << s.to_json().dump();
  }
}

TEST(IdentityChecks, PrintedSample) {
  for (const auto& r : identity_checks(kPrinted, {2, 2, 2}, P)) {
    EXPECT_TRUE(r.pass) << r.to_json().dump();
    EXPECT_TRUE(below(r.residual, 40)) << r.identity;
  }
}

TEST(IdentityChecks, RandomSamples) {
  for (const auto& s : sample_params(19, 10))
    for (const auto& r : identity_checks(s, {2, 2, 2}, P)) EXPECT_TRUE(r.pass) << r.to_json().dump();
}

TEST(IdentityChecks, ReportShape) {
  const auto checks = identity_checks(kPrinted, {1, 0, 0}, P);
  ASSERT_EQ(checks.size(), 5u);
  const auto j = checks.back().to_json();
  EXPECT_EQ(j["identity"], "three_term");
  EXPECT_EQ(j["shift"], (std::vector<long>{1, 0, 0}));
  EXPECT_EQ(j["sample"]["c"], "9/7");
  for (const char* key : {"residual", "tolerance", "pass"}) EXPECT_TRUE(j.contains(key));
}

TEST(ThreeTerm, RandomShifts) {
  testing::RandomFunctions gen(23);
  for (const auto& s : sample_params(29, 6))
    for (int i = 0; i < 4; ++i) {
      const ShiftTriple z{gen.integer(-2, 3), gen.integer(-2, 3), gen.integer(-2, 3)};
      for (bool y5 : {false, true}) {
        const NumericCheck r = three_term_check(z, s, P, y5);
        EXPECT_TRUE(r.pass) << r.to_json().dump();
      }
    }
}

TEST(ThreeTerm, DetectsAWrongCoefficient) {
  // Q for (1,0,0) is bx/c; perturbing the sample point in R breaks the relation.
  const auto& [a, b, c, x] = kPrinted;
  const BigReal bad = hyp2f1(a + 1, b, c, x, P) - big(b * x / c) * hyp2f1(a + 1, b + 1, c + 1, x, P) -
                      big(q(1001, 1000)) * hyp2f1(a, b, c, x, P);
  EXPECT_FALSE(below(bad, 10));
  EXPECT_TRUE(three_term_check({1, 0, 0}, kPrinted, P).pass);
}

TEST(Samples, DeterministicAndAdmissible) {
  const auto s1 = sample_params(42, 100), s2 = sample_params(42, 100);
  ASSERT_EQ(s1.size(), 100u);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].to_json(), s2[i].to_json());
    const auto& [a, b, c, x] = s1[i];
    for (const Rational& v : {a, b, c, Rational(c - a), Rational(c - b), Rational(c - a - b), Rational(a - b)})
      EXPECT_NE(v.get_den(), 1);
    for (const Rational& v : {a, b, c}) {
      EXPECT_LE(abs(v), 4);
      EXPECT_LE(v.get_den(), 64);
    }
    EXPECT_GE(x, q(1, 10));
    EXPECT_LE(x, q(9, 20));
  }
  EXPECT_NE(sample_params(43, 1)[0].to_json(), s1[0].to_json());
  EXPECT_FALSE(admissible({q(1, 2), q(3, 2), q(7, 3), q(1, 4)}));
}

TEST(Concurrency, ParallelEvaluationsAgree) {
  const auto samples = sample_params(31, 4);
  std::vector<std::string> serial, parallel(samples.size());
  for (const auto& s : samples) serial.push_back(three_term_check({2, -1, 1}, s, P).to_json().dump());
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < samples.size(); ++i)
    threads.emplace_back([&, i] { parallel[i] = three_term_check({2, -1, 1}, samples[i], P).to_json().dump(); });
  for (auto& t : threads) t.join();
  EXPECT_EQ(serial, parallel);
}

}  // namespace
}  // namespace hyp3term
