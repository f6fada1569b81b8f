#include <gtest/gtest.h>

#include "hyp3term/ratfunc.hpp"
#include "random_support.hpp"

namespace hyp3term {
namespace {

const RatFunc a = RatFunc::variable(Var::a);
const RatFunc b = RatFunc::variable(Var::b);
const RatFunc c = RatFunc::variable(Var::c);
const RatFunc x = RatFunc::variable(Var::x);

ParamSubstitution params(AbcAffine A, AbcAffine B, AbcAffine C) { return ParamSubstitution{{A, B, C}}; }

TEST(RatFunc, AddExamples) {
  EXPECT_EQ(x + (1 - x), RatFunc(1));
  EXPECT_EQ(a / (c - a) + 0, a / (c - a));
  EXPECT_EQ(1 / x + 1 / (1 - x), 1 / (x * (1 - x)));
}

TEST(RatFunc, MulExamples) {
  EXPECT_EQ((1 - x) * (1 - x).inverse(), RatFunc(1));
  EXPECT_EQ((c - a - b * x) * x, c * x - a * x - b * x * x);
  const RatFunc q = a * b / c;
  EXPECT_EQ(q.num(), (a * b).num());
  EXPECT_EQ(q.den(), c.num());
}

TEST(RatFunc, DivisionByZeroThrows) {
  EXPECT_THROW(x / RatFunc(0), Error);
  EXPECT_THROW((x - x).inverse(), Error);
  EXPECT_THROW(RatFunc::from_polys(MultiPoly(1), MultiPoly()), Error);
}

TEST(RatFunc, DerivativeExamples) {
  EXPECT_EQ((x * x / (1 - x)).d_dx(), (2 * x - x * x) / ((1 - x) * (1 - x)));
  EXPECT_EQ((a * b).d_dx(), RatFunc(0));
  EXPECT_EQ((x / (x - 1)).d_dx(), -1 / ((x - 1) * (x - 1)));
  EXPECT_EQ(((1 + a * x) / a).d_dx(), RatFunc(1));
}

TEST(RatFunc, SubstituteExamples) {
  const ParamSubstitution id;
  EXPECT_EQ((x / (1 - x)).substitute(id, MoebiusTag(MoebiusTag::Kind::pfaff)), -x);
  const auto sigma1 = params({{-1, 0, 1}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0});
  EXPECT_EQ((a / (c - a)).substitute(sigma1, MoebiusTag()), (c - a) / a);
  const auto sigma2 = params({{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{1, 1, -1}, 1});
  EXPECT_EQ((c - a - b).substitute(sigma2, MoebiusTag(MoebiusTag::Kind::reflect)), 1 - c);
  const RatFunc f = (a * x + 1) / (b - c * x * x);
  EXPECT_EQ(f.substitute(id, MoebiusTag()), f);
}

TEST(RatFunc, ZeroIsCanonical) {
  const RatFunc z = (a + x) / (b - 1) - (x + a) / (b - 1);
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.den().is_one());
  EXPECT_EQ(z, RatFunc());
}

TEST(RatFunc, DenominatorNormalized) {
  const RatFunc f = RatFunc::from_polys((a * 2).num(), c.num().scaled(-4));
  EXPECT_EQ(f.den(), c.num());
  EXPECT_EQ(f, -a / (2 * c));
}

TEST(RatFunc, JsonRoundTrip) {
  const RatFunc f = (make_rational(3, 2) * a * x - 1) / ((c - a) * (1 - x));
  const auto j = f.to_json();
  EXPECT_EQ(RatFunc::from_json(j), f);
  EXPECT_EQ(j["num"][0][4], "3/2");
  EXPECT_EQ(RatFunc::from_json(RatFunc(0).to_json()), RatFunc(0));
}

TEST(RatFunc, LatexOfFactoredForm) {
  EXPECT_EQ((a * b / c).to_latex(), "\\frac{a b}{c}");
  EXPECT_EQ((-(c + 1) / ((a + 1) * x)).to_latex(), "-\\frac{c + 1}{(a + 1) x}");
  EXPECT_EQ(RatFunc(0).to_latex(), "0");
}

TEST(Moebius, TableMatchesSubstitution) {
  const ParamSubstitution id;
  for (MoebiusTag f : MoebiusTag::all()) {
    for (MoebiusTag g : MoebiusTag::all()) {
      // substitute(x, g) = g(x); substituting f then g into x gives f(g(x)).
      const RatFunc fx = x.substitute(id, f);
      EXPECT_EQ(fx.substitute(id, g), x.substitute(id, f.compose(g))) << f.to_string() << " o " << g.to_string();
    }
    EXPECT_EQ(x.substitute(id, f).substitute(id, f.inverse()), x) << f.to_string();
    EXPECT_EQ(MoebiusTag::parse(f.to_string()), f);
  }
}

TEST(PolyGcd, RecoversPlantedFactor) {
  testing::RandomFunctions gen(10);
  for (int i = 0; i < 200; ++i) {
    const MultiPoly h = gen.poly(3, 2), f = gen.poly(3, 2), g = gen.poly(3, 2);
    if (h.is_zero() || f.is_zero() || g.is_zero()) continue;
    const MultiPoly expected = (h * gcd(f, g)).primitive();
    ASSERT_EQ(gcd(f * h, g * h), expected) << h.to_string() << " | " << f.to_string() << " | " << g.to_string();
  }
  EXPECT_EQ(gcd(MultiPoly(), MultiPoly()), MultiPoly());
  const MultiPoly xa = (x - a).num();
  EXPECT_EQ(gcd(xa * xa * (a + 1).num(), xa * (b - 1).num()), xa.primitive());
}

TEST(RatFuncProperty, FieldAxioms) {
  testing::RandomFunctions gen(11);
  for (int i = 0; i < 1000; ++i) {
    const RatFunc f = gen.ratfunc(), g = gen.ratfunc(), h = gen.ratfunc();
    ASSERT_EQ((f + g) + h, f + (g + h));
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * (g + h), f * g + f * h);
    ASSERT_EQ(f + g, g + f);
    ASSERT_EQ(f * g, g * f);
    ASSERT_TRUE((f - f).is_zero());
    if (!f.is_zero()) ASSERT_EQ(f * (1 / f), RatFunc(1));
  }
}

TEST(RatFuncProperty, ConstructionOrderIsInvisible) {
  testing::RandomFunctions gen(12);
  for (int i = 0; i < 300; ++i) {
    const RatFunc f = gen.ratfunc(), g = gen.nonzero_ratfunc(), h = gen.ratfunc();
    const RatFunc one = (f * g + h * g) / g;
    const RatFunc two = h + f;
    ASSERT_EQ(one.to_json(), two.to_json());
    ASSERT_EQ(RatFunc::from_polys(two.num(), two.den()).to_json(), two.to_json());
  }
}

TEST(RatFuncProperty, LeibnizRule) {
  testing::RandomFunctions gen(13);
  for (int i = 0; i < 300; ++i) {
    const RatFunc f = gen.ratfunc(), g = gen.ratfunc();
    ASSERT_EQ((f * g).d_dx(), f.d_dx() * g + f * g.d_dx());
  }
}

TEST(RatFuncProperty, SubstitutionIsHomomorphism) {
  testing::RandomFunctions gen(14);
  for (int i = 0; i < 300; ++i) {
    ParamSubstitution s;
    // Random unimodular-ish map: swap and shear with constants.
    s.images[0] = {{gen.integer(-1, 1), 1, 0}, gen.integer(-2, 2)};
    s.images[1] = {{0, 1, 0}, gen.integer(-2, 2)};
    s.images[2] = {{gen.integer(-1, 1), gen.integer(-1, 1), 1}, gen.integer(-2, 2)};
    const MoebiusTag mu = MoebiusTag::all()[gen.integer(0, 5)];
    const RatFunc f = gen.ratfunc(), g = gen.ratfunc();
    ASSERT_EQ((f * g).substitute(s, mu), f.substitute(s, mu) * g.substitute(s, mu));
    ASSERT_EQ((f + g).substitute(s, mu), f.substitute(s, mu) + g.substitute(s, mu));
  }
}

}  // namespace
}  // namespace hyp3term
