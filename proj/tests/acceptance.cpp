// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyp3term/group.hpp"
#include "hyp3term/ladder.hpp"
#include "hyp3term/numerics.hpp"
#include "hyp3term/symmetry.hpp"

namespace hyp3term {
namespace {

// Tolerances and budgets, as log10 and seconds.
constexpr int kPrecision = 50;
constexpr double kThreeTermLog10 = -40;
constexpr double kQCrossLog10 = -35;
constexpr double kWronskianLog10 = -35;
constexpr double kBudgetGroup = 1, kBudgetQR222 = 1, kBudgetLadder = 300, kBudgetSweep = 1800,
                 kBudgetThreeTerm = 600;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double budget, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget <= 0 || secs < budget;
  const bool pass = v.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %2d  %-28s %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", n, title, v.detail.c_str(), secs,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

template <class F>
std::size_t count_failures_parallel(std::size_t n, F f) {
  std::atomic<std::size_t> next{0}, bad{0};
  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          if (!f(i)) ++bad;
        } catch (const std::exception&) {
          ++bad;
        }
      }
    });
  for (auto& th : pool) th.join();
  return bad;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<ShiftTriple> random_shifts(std::uint64_t seed, std::size_t n, long lo, long hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<ShiftTriple> out(n);
  for (auto& s : out) s = {d(rng), d(rng), d(rng)};
  return out;
}

Verdict group_structure() {
  std::ostringstream d;
  bool ok = true;
  for (Which w : {Which::G, Which::Gt}) {
    const std::size_t order = enumerate(base_generators(w)).size();
    const StructureReport rep = verify_structure(w);
    ok = ok && order == 96 && rep.all_pass();
    d << "|" << which_name(w) << "|=" << order << " checks " << rep.checks.size() << (rep.all_pass() ? " ok; " : " FAIL; ");
  }
  return {ok, d.str()};
}

Verdict qr_222() {
  const RatFunc a = RatFunc::variable(Var::a), b = RatFunc::variable(Var::b), c = RatFunc::variable(Var::c),
                x = RatFunc::variable(Var::x);
  const RatFunc den = (a + 1) * (b + 1) * x * (1 - x);
  const QRPair printed{-(c + 1) * (c - (a + b + 1) * x) / den, c * (c + 1) / den};
  const bool ok = compute_qr({2, 2, 2}) == printed;
  return {ok, ok ? "Q, R equal the printed pair" : "mismatch"};
}

Verdict ladder_coherence() {
  std::mt19937_64 shuffler(301);
  std::size_t path_bad = 0;
  for (ShiftTriple s : random_shifts(300, 10, -3, 4)) {
    auto p1 = canonical_path(s), p2 = p1;
    std::shuffle(p1.begin(), p1.end(), shuffler);
    std::shuffle(p2.begin(), p2.end(), shuffler);
    if (!(rep_along(p1) == rep_along(p2) && rep_along(p1) == compute_rep(s))) ++path_bad;
  }
  std::vector<ShiftTriple> box;
  for (long k = -2; k <= 3; ++k)
    for (long l = -2; l <= 3; ++l)
      for (long m = -2; m <= 3; ++m) box.push_back({k, l, m});
  const std::size_t rq_bad = count_failures_parallel(box.size(), [&](std::size_t i) { return check_r_eq_qprime(box[i]); });
  return {path_bad == 0 && rq_bad == 0, "path independence 10/10 shifts: " + std::to_string(10 - path_bad) +
                                            " ok; R = Q' on " + std::to_string(box.size()) + " shifts: " +
                                            std::to_string(box.size() - rq_bad) + " ok"};
}

Verdict symmetry_sweep() {
  struct Case {
    Coef co;
    const GroupElement* e;
    ShiftTriple s;
  };
  std::vector<Case> cases;
  for (Coef co : {Coef::Q, Coef::R})
    for (const auto& e : group_elements(group_of(co)))
      for (ShiftTriple s : default_sweep_shifts()) cases.push_back({co, &e, s});
  const std::size_t bad = count_failures_parallel(
      cases.size(), [&](std::size_t i) { return verify_symmetry(cases[i].co, *cases[i].e, cases[i].s); });
  return {bad == 0 && cases.size() == 1920,
          std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) + " exact identities"};
}

Verdict golden_tables() {
  const std::vector<std::pair<Coef, std::vector<int>>> wanted = {{Coef::Q, {2, 9, 17, 25, 33, 38, 41}},
                                                                  {Coef::R, {2, 9, 25, 34, 41}}};
  std::ostringstream d;
  bool ok = true;
  for (const auto& [co, rows] : wanted) {
    const auto table = corollary_tables(co);
    int matched = 0;
    for (int r : rows) {
      const CorollaryRow& row = table[r - 1];
      if (row.canonical_match && row.expansion_match) {
        ++matched;
      } else {
        ok = false;
        // Reported only once the ladder independently confirms the printed row fails.
        const bool printed_fails = !printed_row_holds(co, row, {1, 2, 3});
        d << "row " << r << (printed_fails ? " printed-table discrepancy; " : " regeneration error; ");
      }
    }
    d << coef_name(co) << "96 " << matched << "/" << rows.size() << " rows; ";
  }
  return {ok, d.str()};
}

Verdict vidunas() {
  int good = 0;
  const std::vector<ShiftTriple> shifts = {{0, 0, 0}, {1, 1, 1}, {2, 0, 1}, {-1, 2, 1}};
  for (ShiftTriple s : shifts) good += vidunas_identity(s) ? 1 : 0;
  return {good == 4, std::to_string(good) + "/4 shifts"};
}

Verdict numeric_three_term() {
  const auto samples = sample_params(700, 100);
  const auto shifts = random_shifts(701, 40, -2, 3);
  // Cases that throw keep +inf and fail the criterion.
  std::vector<double> worst(samples.size() * shifts.size(), INFINITY);
  count_failures_parallel(worst.size(), [&](std::size_t i) {
    worst[i] = three_term_check(shifts[i % shifts.size()], samples[i / shifts.size()], kPrecision).residual.log10_abs();
    return true;
  });
  const double max_residual = *std::max_element(worst.begin(), worst.end());
  return {max_residual < kThreeTermLog10,
          "100 samples x 40 shifts, max log10 residual " + fmt("%.1f", max_residual) + " < " + fmt("%.0f", kThreeTermLog10)};
}

Verdict q_cross_check() {
  const auto samples = sample_params(800, 25);
  const auto shifts = random_shifts(801, 10, -2, 3);
  std::vector<double> d12(samples.size() * shifts.size(), INFINITY), dq(d12.size(), INFINITY);
  count_failures_parallel(d12.size(), [&](std::size_t i) {
    const ParamSample& s = samples[i / shifts.size()];
    const ShiftTriple z = shifts[i % shifts.size()];
    const BigReal q1 = q_via(QExpr::q1, z, s, kPrecision);
    d12[i] = relative_difference(q_via(QExpr::q2, z, s, kPrecision), q1).log10_abs();
    dq[i] = relative_difference(q_from_q1(z, s, kPrecision), ladder_q(z, s, kPrecision)).log10_abs();
    return true;
  });
  const double m12 = *std::max_element(d12.begin(), d12.end()), mq = *std::max_element(dq.begin(), dq.end());
  return {m12 < kQCrossLog10 && mq < kQCrossLog10, "25 samples x 10 shifts, max log10 |q1-q2|/|q1| " +
                                                       fmt("%.1f", m12) + ", Q_from_q1 vs ladder " + fmt("%.1f", mq)};
}

Verdict wronskian_check() {
  double worst = -INFINITY;
  for (const auto& s : sample_params(900, 10)) {
    const WronskianPair w = wronskian(s.a, s.b, s.c, s.x, kPrecision);
    worst = std::max(worst, relative_difference(w.direct, w.closed).log10_abs());
  }
  const bool symbolic = wronskian_ratio_from_closed_form() == wronskian_ratio_printed();
  return {worst < kWronskianLog10 && symbolic, "10 samples, max log10 relative difference " + fmt("%.1f", worst) +
                                                   "; symbolic ratio " + (symbolic ? "matches" : "differs")};
}

Verdict identity_smoke() {
  std::size_t total = 0, good = 0;
  for (const auto& s : sample_params(1000, 10))
    for (const auto& c : identity_checks(s, {2, 2, 2}, kPrecision)) {
      if (c.identity == "three_term") continue;
      ++total;
      good += c.pass ? 1 : 0;
    }
  return {total == 40 && good == total, std::to_string(good) + "/" + std::to_string(total) +
                                            " (pfaff, relation_011, derivative, argument_swap x 10 samples)"};
}

}  // namespace
}  // namespace hyp3term

int main() {
  using namespace hyp3term;
  criterion(1, "group structure", kBudgetGroup, group_structure);
  criterion(2, "shift (2,2,2) reproduction", kBudgetQR222, qr_222);
  criterion(3, "ladder coherence", kBudgetLadder, ladder_coherence);
  criterion(4, "symmetry sweep", kBudgetSweep, symmetry_sweep);
  criterion(5, "golden tables", 0, golden_tables);
  criterion(6, "Vidunas identity", 0, vidunas);
  criterion(7, "numeric three-term residuals", kBudgetThreeTerm, numeric_three_term);
  criterion(8, "q1/q2 cross-check", 0, q_cross_check);
  criterion(9, "Wronskian", 0, wronskian_check);
  criterion(10, "identity smoke tests", 0, identity_smoke);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
