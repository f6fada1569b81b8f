#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "hyp3term/symmetry.hpp"
#include "random_support.hpp"

namespace hyp3term {
namespace {

const RatFunc a = RatFunc::variable(Var::a);
const RatFunc b = RatFunc::variable(Var::b);
const RatFunc c = RatFunc::variable(Var::c);
const RatFunc x = RatFunc::variable(Var::x);

SymFactor sf(std::string_view tokens) { return SymFactor::parse(tokens); }

const std::vector<ShiftTriple> kFiveShifts = {{0, 0, 0}, {1, 2, 3}, {-1, 0, 2}, {2, -2, 1}, {-3, 1, -1}};

TEST(SymFactor, PochhammerRewritesAreInvisible) {
  // (alpha)_{m+n} = (alpha)_m (alpha + m)_n.
  EXPECT_EQ(sf("P[c|m + k]"), sf("P[c|m] P[c + m|k]"));
  // (alpha)_n = (-1)^n (1 - alpha - n)_n.
  EXPECT_EQ(sf("P[b - a|k]"), sf("S[k] P[a - b + 1 - k|k]"));
  EXPECT_EQ(sf("L[c - a - 1]"), sf("P[c - a - 1|1]"));
  EXPECT_EQ(sf("P[a|k] /P[a|k]"), SymFactor());
  EXPECT_TRUE(sf("P[b - a|k] /L[c]").well_formed());
}

TEST(SymFactor, ExpansionFollowsTheNegativeLengthConvention) {
  const SymFactor f = sf("P[c - a|m - k]");
  EXPECT_EQ(f.expand({2, 0, 0}), 1 / ((c - a - 1) * (c - a - 2)));
  EXPECT_EQ(f.expand({0, 0, 3}), (c - a) * (c - a + 1) * (c - a + 2));
  EXPECT_EQ(pochhammer_value(c, -2), 1 / ((c - 1) * (c - 2)));
  EXPECT_EQ(pochhammer_value(c, 0), RatFunc(1));
  testing::RandomFunctions gen(51);
  for (int i = 0; i < 30; ++i) {
    const long m = gen.integer(-4, 4), n = gen.integer(-4, 4);
    EXPECT_EQ(pochhammer_value(a, m + n), pochhammer_value(a, m) * pochhammer_value(a + m, n));
  }
}

TEST(SymFactor, ExpansionMatchesDirectProducts) {
  testing::RandomFunctions gen(52);
  const SymFactor f = sf("S[k + l] P[c + 1|m - 1] /P[b - a - 1|l + 1 - k] X[-m] Y[m - k]");
  for (int i = 0; i < 20; ++i) {
    const ShiftTriple s{gen.integer(-3, 3), gen.integer(-3, 3), gen.integer(-3, 3)};
    RatFunc want = pochhammer_value(c + 1, s.m - 1) / pochhammer_value(b - a - 1, s.l + 1 - s.k) *
                   x.pow(static_cast<int>(-s.m)) * (1 - x).pow(static_cast<int>(s.m - s.k));
    if ((s.k + s.l) % 2 != 0) want = -want;
    EXPECT_EQ(f.expand(s), want) << s.to_string();
  }
}

TEST(SymFactor, MoebiusTransport) {
  // x -> x/(x-1) sends x to -x (1-x)^{-1}.
  GroupElement pfaff = GroupElement::identity();
  pfaff.xmap = MoebiusTag(MoebiusTag::Kind::pfaff);
  EXPECT_EQ(sf("X[1]").transported(pfaff), sf("- X[1] Y[-1]"));
  // Every table entry agrees with direct substitution.
  const SymFactor f = sf("X[k + 1] Y[l - 2]");
  for (const auto& t : MoebiusTag::all()) {
    GroupElement g = GroupElement::identity();
    g.xmap = t;
    const ShiftTriple s{2, -1, 0};
    EXPECT_EQ(f.transported(g).expand(s), f.expand(s).substitute({}, t)) << t.to_string();
  }
}

TEST(SymFactor, Printing) {
  EXPECT_EQ(base_lambda(Coef::Q, 1).to_string(), "-(a) (1-x)^{2 - l} / ((c - a))");
  EXPECT_EQ(base_lambda(Coef::R, 1).to_latex(), "(1 - x)^{-l}");
  EXPECT_EQ(SymFactor().to_string(), "1");
  const auto j = base_lambda(Coef::R, 2).to_json();
  EXPECT_EQ(j["poch"].size(), 4u);
}

TEST(BaseLambda, PrintedFactors) {
  EXPECT_EQ(base_lambda(Coef::Q, 1), sf("S[1] L[a] /L[c - a] Y[2 - l]"));
  EXPECT_EQ(base_lambda(Coef::Q, 1).expand({0, 1, 0}), -a / (c - a) * (1 - x));
  EXPECT_TRUE(base_lambda(Coef::Q, 3).is_one());
  EXPECT_EQ(base_lambda(Coef::R, 2).expand({0, 0, 1}), c / (c - a) / (c - b) * (c - a - b) / 1);
  EXPECT_THROW(base_lambda(Coef::Q, 4), Error);
}

TEST(Cocycle, Examples) {
  const GroupElement s1 = generator("s1");
  EXPECT_TRUE(cocycle_compose(base_lambda(Coef::Q, 1), s1, base_lambda(Coef::Q, 1)).is_one());
  EXPECT_EQ(lambda_along_word(Coef::Q, parse_word("s1s3s1s3")), sf("L[a] L[b] /L[c - a] /L[c - b] Y[m - k - l]"));
  EXPECT_EQ(lambda_along_word(Coef::Q, {"s4"}), lambda_along_word(Coef::Q, parse_word("s1s3s1s3")));
  EXPECT_THROW(lambda_along_word(Coef::Q, {"s~1"}), Error);
}

TEST(LambdaFor, Examples) {
  EXPECT_EQ(lambda_for(Coef::Q, generator("s3"), {1, 2, 0}).second, RatFunc(1));
  EXPECT_EQ(lambda_for(Coef::Q, generator("s0"), {0, 0, 0}).second, RatFunc(-1));
  EXPECT_EQ(lambda_for(Coef::R, generator("s~0"), {1, 1, 1}).second, RatFunc(-1));
  EXPECT_EQ(lambda_for(Coef::R, generator("s~1"), {0, 3, 1}).second, (1 - x).pow(-3));
  EXPECT_THROW(lambda_for(Coef::Q, generator("s~0"), {0, 0, 0}), Error);
  EXPECT_THROW(lambda_for(Coef::R, generator("tau"), {0, 0, 0}), Error);
}

TEST(VerifySymmetry, Examples) {
  EXPECT_TRUE(verify_symmetry(Coef::Q, generator("s1"), {1, 1, 1}));
  EXPECT_TRUE(verify_symmetry(Coef::Q, generator("s0"), {2, 2, 2}));
  for (ShiftTriple s : kFiveShifts) EXPECT_TRUE(verify_symmetry(Coef::R, generator("s~3"), s));
}

TEST(VerifySymmetry, RejectsAWrongFactor) {
  // sigma2 and sigma~2 act alike but carry different factors.
  const ShiftTriple s{1, 2, 3};
  const RatFunc wrong = lambda_for(Coef::R, generator("s~2"), s).second;
  const RatFunc q = compute_qr(s).Q;
  const GroupElement g = generator("s2");
  const RatFunc moved = compute_qr(g.apply(s)).Q.substitute(g.params_at(s), g.xmap);
  EXPECT_FALSE(q == wrong * moved);
  EXPECT_TRUE(q == lambda_for(Coef::Q, g, s).second * moved);
}

TEST(Corollary, PrintedExamples) {
  const auto q = corollary_tables(Coef::Q);
  const auto r = corollary_tables(Coef::R);
  ASSERT_EQ(q.size(), 48u);
  ASSERT_EQ(r.size(), 48u);
  EXPECT_EQ(q[8].computed, sf("P[c + 1|m - 1] P[c - a - b - 1|m + 1 - k - l] /P[c - a|m - k] /P[c - b|m - l]"));
  EXPECT_EQ(r[1].computed, sf("Y[m + 1 - k - l]"));
  EXPECT_EQ(q[37].computed, SymFactor::parse("P[c + m - 1|2] /L[a + k] /L[b + l] /P[c - 2|2] A5 X[-m] Y[m - k - l]",
                                             corollary_constants(Coef::Q)));
  EXPECT_TRUE(q[0].computed.is_one());
}

TEST(Corollary, EveryRowMatchesItsTranscription) {
  for (Coef co : {Coef::Q, Coef::R})
    for (const auto& row : corollary_tables(co)) {
      EXPECT_TRUE(row.canonical_match) << coef_name(co) << " row " << row.index << ": " << row.printed.to_string()
                                       << " vs " << row.computed.to_string();
      EXPECT_TRUE(row.expansion_match) << coef_name(co) << " row " << row.index;
      const CorollaryRow p = partner_row(co, row);
      EXPECT_TRUE(p.canonical_match && p.expansion_match) << coef_name(co) << " partner of row " << row.index;
    }
}

TEST(Corollary, PrintedRowsHoldAgainstTheLadder) {
  // Independent of the cocycle machinery: printed factor times the ladder.
  for (Coef co : {Coef::Q, Coef::R}) {
    const auto rows = corollary_tables(co);
    for (int idx : {2, 9, 17, 25, 33, 38, 41, 48})
      EXPECT_TRUE(printed_row_holds(co, rows[idx - 1], {2, -1, 1})) << coef_name(co) << " row " << idx;
  }
}

TEST(Vidunas, Shifts) {
  for (ShiftTriple s : {ShiftTriple{0, 0, 0}, ShiftTriple{1, 1, 1}, ShiftTriple{2, 0, 1}, ShiftTriple{-1, 2, 1}})
    EXPECT_TRUE(vidunas_identity(s)) << s.to_string();
}

TEST(SymmetryProperty, WordIndependence) {
  for (Coef co : {Coef::Q, Coef::R}) {
    const std::string p = co == Coef::Q ? "s" : "s~";
    std::vector<GroupElement> reversed;
    for (int i = 3; i >= 0; --i) reversed.push_back(generator(p + std::to_string(i)));
    for (const auto& e : enumerate(reversed)) {
      auto padded = e.word;
      padded.insert(padded.begin() + static_cast<long>(padded.size() / 2), {p + "2", p + "0", p + "0", p + "2"});
      const SymFactor f = lambda_along_word(co, e.word);
      EXPECT_TRUE(f.well_formed());
      EXPECT_EQ(f, lambda_along_word(co, padded)) << e.word_string();
      EXPECT_EQ(f, lambda_for(co, e, {}).first) << e.word_string();
      for (ShiftTriple s : kFiveShifts) EXPECT_EQ(f.expand(s), lambda_by_substitution(co, padded, s));
    }
  }
}

TEST(SymmetryProperty, CocycleLaw) {
  testing::RandomFunctions gen(53);
  for (Coef co : {Coef::Q, Coef::R}) {
    const auto& els = group_elements(group_of(co));
    for (int i = 0; i < 50; ++i) {
      const GroupElement& s = els[gen.integer(0, 95)];
      const GroupElement& t = els[gen.integer(0, 95)];
      const GroupElement st = compose(s, t);
      const ShiftTriple z{gen.integer(-2, 3), gen.integer(-2, 3), gen.integer(-2, 3)};
      const GroupElement si = inverse(s);
      const RatFunc lhs = lambda_for(co, st, z).second;
      const RatFunc rhs = lambda_for(co, s, z).second *
                          lambda_for(co, t, si.apply(z)).second.substitute(si.params_at(z), si.xmap);
      EXPECT_EQ(lhs, rhs) << s.word_string() << " | " << t.word_string();
    }
  }
}

TEST(SymmetryProperty, TildeFactorsFollowFromConjugation) {
  // lambda~_{tau s tau^-1} = lambda_tau (tau lambda_s) / ((tau s tau^-1) lambda_tau).
  const GroupElement tau = generator("tau"), tau_inv = inverse(tau);
  for (const auto& e : group_elements(Which::G)) {
    const GroupElement conj = compose(compose(tau, e), tau_inv);
    const SymFactor want = lambda_tau() * lambda_for(Coef::Q, e, {}).first.transported(tau_inv) *
                           lambda_tau().transported(inverse(conj)).inverse();
    EXPECT_EQ(lambda_for(Coef::R, conj, {}).first, want) << e.word_string();
  }
}

TEST(SymmetryProperty, FullSweepConcurrently) {
  struct Case {
    Coef co;
    const GroupElement* e;
    ShiftTriple s;
  };
  std::vector<Case> cases;
  for (Coef co : {Coef::Q, Coef::R})
    for (const auto& e : group_elements(group_of(co)))
      for (ShiftTriple s : default_sweep_shifts()) cases.push_back({co, &e, s});
  std::atomic<std::size_t> next{0}, failures{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < cases.size();)
        if (!verify_symmetry(cases[i].co, *cases[i].e, cases[i].s)) ++failures;
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(cases.size(), 2u * 96 * 10);
  EXPECT_EQ(failures, 0u);
}

}  // namespace
}  // namespace hyp3term
