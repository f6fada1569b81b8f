// Truncated-series oracle for the six unit steps. Every other ladder-derived
// suite depends on this test through a ctest fixture.

#include <gtest/gtest.h>

#include "random_support.hpp"
#include "series_support.hpp"

namespace hyp3term {
namespace {

using testing::ParamPoint;
using testing::series_identity_holds;

constexpr std::size_t kTerms = 32;

bool generic(const ParamPoint& p) {
  const std::initializer_list<Rational> diffs = {p.a, p.b, p.c, p.c - p.a, p.c - p.b, p.c - p.a - p.b, p.a - p.b};
  for (const Rational& v : diffs)
    if (is_integer(v)) return false;
  return true;
}

std::vector<ParamPoint> oracle_points() {
  testing::RandomFunctions gen(2024);
  std::vector<ParamPoint> pts;
  while (pts.size() < 5) {
    auto pick = [&] { return make_rational(gen.integer(-97, 97), gen.integer(7, 29)); };
    ParamPoint p{pick(), pick(), pick()};
    if (generic(p)) pts.push_back(p);
  }
  return pts;
}

void expect_series_valid(const BasisRep& rep, ShiftTriple shift) {
  for (const auto& p : oracle_points())
    EXPECT_TRUE(series_identity_holds(rep, shift, p, kTerms))
        << "shift " << shift.to_string() << " at a=" << p.a << " b=" << p.b << " c=" << p.c;
}

const RatFunc a = RatFunc::variable(Var::a);
const RatFunc b = RatFunc::variable(Var::b);
const RatFunc c = RatFunc::variable(Var::c);
const RatFunc x = RatFunc::variable(Var::x);

TEST(StepOracle, OracleRejectsWrongRepresentation) {
  // Guard against a vacuous oracle.
  const BasisRep wrong{1, x / b};
  for (const auto& p : oracle_points()) EXPECT_FALSE(series_identity_holds(wrong, {1, 0, 0}, p, kTerms));
}

TEST(StepOracle, EachStepFromIdentity) {
  const BasisRep id{1, 0};
  for (Step s : kAllSteps) {
    SCOPED_TRACE(step_name(s));
    expect_series_valid(step(id, {}, s), advance({}, s));
  }
}

TEST(StepOracle, EachStepFromShiftedPositions) {
  const ShiftTriple starts[] = {{2, -1, 1}, {-1, 2, -2}, {1, 1, 3}, {-2, -1, 0}};
  for (ShiftTriple at : starts) {
    const BasisRep g = rep_along(canonical_path(at));
    expect_series_valid(g, at);
    for (Step s : kAllSteps) {
      SCOPED_TRACE(step_name(s) + " from " + at.to_string());
      expect_series_valid(step(g, at, s), advance(at, s));
    }
  }
}

TEST(StepOracle, PrintedExamples) {
  const BasisRep id{1, 0};
  EXPECT_EQ(step(id, {}, Step::a_plus), (BasisRep{1, x / a}));
  EXPECT_EQ(step(id, {}, Step::c_plus),
            (BasisRep{c * (c - a - b) / ((c - a) * (c - b)), c * (1 - x) / ((c - a) * (c - b))}));
  EXPECT_EQ(step(id, {}, Step::a_minus), (BasisRep{(c - a - b * x) / (c - a), x * (1 - x) / (c - a)}));
  const BasisRep up = step(id, {}, Step::a_plus);
  EXPECT_EQ(step(up, {1, 0, 0}, Step::a_minus), id);
}

TEST(StepOracle, CanonicalPathsOnABox) {
  for (long k = -2; k <= 2; ++k)
    for (long l = -2; l <= 2; ++l)
      for (long m = -2; m <= 2; ++m) {
        const ShiftTriple s{k, l, m};
        const BasisRep rep = rep_along(canonical_path(s));
        const auto p = oracle_points().front();
        ASSERT_TRUE(series_identity_holds(rep, s, p, kTerms)) << s.to_string();
      }
}

}  // namespace
}  // namespace hyp3term
