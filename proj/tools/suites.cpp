#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "hyp3term/numerics.hpp"
#include "hyp3term/symmetry.hpp"

namespace hyp3term::cli {

namespace {

constexpr std::size_t kMaxCounterexamples = 10;

nlohmann::json shift_json(ShiftTriple s) { return {s.k, s.l, s.m}; }

// Runs f(i) for i in [0, n) on a small pool; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          slots[i] = f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// One check outcome; the detail goes into the counterexample list on failure.
struct Outcome {
  bool pass = false;
  nlohmann::json detail;
};

class Tally {
 public:
  void add(const std::string& group, const Outcome& o) {
    auto& g = groups_[group];
    ++g.first;
    if (!o.pass) {
      ++g.second;
      ++failures_;
      if (counterexamples_.size() < kMaxCounterexamples) {
        nlohmann::json c = o.detail;
        c["check"] = group;
        counterexamples_.push_back(std::move(c));
      }
    }
  }
  void warn(nlohmann::json w) { warnings_.push_back(std::move(w)); }

  SuiteResult finish(const std::string& suite, nlohmann::json extra = nlohmann::json::object()) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& [name, counts] : groups_)
      checks.push_back({{"name", name}, {"cases", counts.first}, {"failures", counts.second},
                        {"pass", counts.second == 0}});
    nlohmann::json r = {{"suite", suite},        {"pass", failures_ == 0}, {"checks", checks},
                        {"failures", failures_}, {"counterexamples", counterexamples_},
                        {"warnings", warnings_}};
    for (auto& [k, v] : extra.items()) r[k] = v;
    return {r, failures_ == 0};
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> groups_;
  std::size_t failures_ = 0;
  nlohmann::json counterexamples_ = nlohmann::json::array();
  nlohmann::json warnings_ = nlohmann::json::array();
};

SuiteResult ladder_suite(const RunConfig& cfg) {
  Tally t;
  const RatFunc a = RatFunc::variable(Var::a), b = RatFunc::variable(Var::b), c = RatFunc::variable(Var::c),
                x = RatFunc::variable(Var::x);
  const RatFunc den = (a + 1) * (b + 1) * x * (1 - x);
  const QRPair printed{-(c + 1) * (c - (a + b + 1) * x) / den, c * (c + 1) / den};
  t.add("qr_2_2_2_printed", {compute_qr({2, 2, 2}) == printed, {{"shift", shift_json({2, 2, 2})}}});

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> coord(-3, 4);
  for (int i = 0; i < 10; ++i) {
    const ShiftTriple s{coord(rng), coord(rng), coord(rng)};
    auto p1 = canonical_path(s), p2 = p1;
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    const bool ok = rep_along(p1) == rep_along(p2) && rep_along(p1) == compute_rep(s);
    t.add("path_independence", {ok, {{"shift", shift_json(s)}}});
  }

  std::vector<ShiftTriple> box;
  for (long k = -2; k <= 3; ++k)
    for (long l = -2; l <= 3; ++l)
      for (long m = -2; m <= 3; ++m) box.push_back({k, l, m});
  const auto ok = parallel_map<bool>(box.size(), [&](std::size_t i) { return check_r_eq_qprime(box[i]); });
  for (std::size_t i = 0; i < box.size(); ++i) t.add("r_equals_q_prime", {ok[i], {{"shift", shift_json(box[i])}}});
  return t.finish("ladder");
}

SuiteResult symmetry_suite(Coef co, const RunConfig& cfg) {
  struct Case {
    const GroupElement* e;
    ShiftTriple s;
  };
  std::vector<Case> cases;
  const auto shifts = shift_set(cfg.shift_set);
  for (const auto& e : group_elements(group_of(co)))
    for (ShiftTriple s : shifts) cases.push_back({&e, s});
  const auto ok =
      parallel_map<bool>(cases.size(), [&](std::size_t i) { return verify_symmetry(co, *cases[i].e, cases[i].s); });
  Tally t;
  for (std::size_t i = 0; i < cases.size(); ++i)
    t.add("verify_symmetry", {ok[i],
                              {{"element", cases[i].e->word_string()},
                               {"action", cases[i].e->action_string()},
                               {"shift", shift_json(cases[i].s)}}});
  return t.finish("sym" + coef_name(co), {{"elements", group_elements(group_of(co)).size()},
                                          {"shifts", shifts.size()}});
}

SuiteResult numeric_suite(const RunConfig& cfg) {
  const auto samples = sample_params(cfg.seed, static_cast<std::size_t>(cfg.samples));
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> coord(-2, 3), small(-1, 2);
  std::vector<ShiftTriple> shifts(40);
  for (auto& s : shifts) s = {coord(rng), coord(rng), coord(rng)};
  std::vector<ShiftTriple> q_shifts(2);
  for (auto& s : q_shifts) s = {small(rng), small(rng), small(rng)};
  const int P = cfg.precision;

  Tally t;
  // Three-term residuals, F family on every shift and y5 family on the first ten.
  struct Case {
    std::size_t sample;
    ShiftTriple shift;
    bool y5;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < shifts.size(); ++j) {
      cases.push_back({i, shifts[j], false});
      if (j < 10) cases.push_back({i, shifts[j], true});
    }
  const auto checks = parallel_map<NumericCheck>(
      cases.size(), [&](std::size_t i) { return three_term_check(cases[i].shift, samples[cases[i].sample], P, cases[i].y5); });
  double max_residual = -INFINITY;
  for (const auto& c : checks) {
    if (c.identity == "three_term") max_residual = std::max(max_residual, c.residual.log10_abs());
    t.add(c.identity, {c.pass, c.to_json()});
  }

  // Identities, Wronskian and the two q expressions per sample.
  const auto per_sample = parallel_map<std::vector<Outcome>>(samples.size(), [&](std::size_t i) {
    std::vector<Outcome> out;
    const ParamSample& s = samples[i];
    for (const auto& c : identity_checks(s, {2, 2, 2}, P)) out.push_back({c.pass, c.to_json()});
    const WronskianPair w = wronskian(s.a, s.b, s.c, s.x, P);
    const double wrel = relative_difference(w.direct, w.closed).log10_abs();
    out.push_back({wrel < -(P - 15), {{"identity", "wronskian"}, {"sample", s.to_json()}, {"log10_rel", wrel}}});
    for (ShiftTriple z : q_shifts) {
      const double d12 = relative_difference(q_via(QExpr::q1, z, s, P), q_via(QExpr::q2, z, s, P)).log10_abs();
      const double dq = relative_difference(q_from_q1(z, s, P), ladder_q(z, s, P)).log10_abs();
      const nlohmann::json base = {{"shift", shift_json(z)}, {"sample", s.to_json()}};
      nlohmann::json j1 = base, j2 = base;
      j1["identity"] = "q1_vs_q2";
      j1["log10_rel"] = d12;
      j2["identity"] = "q_from_q1_vs_ladder";
      j2["log10_rel"] = dq;
      out.push_back({d12 < -(P - 15), j1});
      out.push_back({dq < -(P - 15), j2});
    }
    return out;
  });
  for (const auto& list : per_sample)
    for (const auto& o : list) t.add(o.detail["identity"].get<std::string>(), o);

  nlohmann::json sj = nlohmann::json::array();
  for (ShiftTriple s : shifts) sj.push_back(shift_json(s));
  return t.finish("numeric", {{"precision", P},
                              {"samples", samples.size()},
                              {"shifts", sj},
                              {"max_three_term_log10_residual", max_residual}});
}

SuiteResult tables_suite(const RunConfig& cfg) {
  Tally t;
  for (Coef co : {Coef::Q, Coef::R}) {
    const std::string name = coef_name(co) + "96";
    for (const auto& row : corollary_tables(co)) {
      const CorollaryRow partner = partner_row(co, row);
      for (bool is_partner : {false, true}) {
        const CorollaryRow& r = is_partner ? partner : row;
        nlohmann::json d = {{"table", name},
                            {"row", r.index},
                            {"word", r.word},
                            {"printed", r.printed.to_string()},
                            {"computed", r.computed.to_string()},
                            {"canonical_match", r.canonical_match},
                            {"expansion_match", r.expansion_match}};
        t.add(name + (is_partner ? "_sigma3_rows" : "_rows"), {r.canonical_match && r.expansion_match, d});
      }
    }
  }
  for (Which w : {Which::G, Which::Gt}) {
    const TableReport rep = golden_table_check(w);
    for (const auto& d : rep.discrepancies)
      t.warn({{"group", which_name(w)}, {"row", d.row}, {"what", d.what}, {"printed", d.printed},
              {"computed", d.computed}});
    const bool ok = rep.rows == 48 && (!cfg.strict_tables || rep.discrepancies.empty());
    t.add("group_table_" + which_name(w), {ok, {{"rows", rep.rows}, {"discrepancies", rep.discrepancies.size()}}});
  }
  return t.finish("tables");
}

}  // namespace

std::vector<ShiftTriple> shift_set(std::string_view name) {
  std::vector<ShiftTriple> out = default_sweep_shifts();
  if (name == "default10") return out;
  if (name == "default20") {
    for (ShiftTriple s : {ShiftTriple{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 2, 3}, {-2, -1, 1},
                          {3, 0, 2},          {1, -2, -1}, {0, 3, 3},  {-1, 2, 0}, {2, 1, -3}})
      out.push_back(s);
    return out;
  }
  throw Error("unknown shift set: " + std::string(name));
}

SuiteResult run_suite(std::string_view suite, const RunConfig& cfg) {
  if (suite == "ladder") return ladder_suite(cfg);
  if (suite == "symQ") return symmetry_suite(Coef::Q, cfg);
  if (suite == "symR") return symmetry_suite(Coef::R, cfg);
  if (suite == "numeric") return numeric_suite(cfg);
  if (suite == "tables") return tables_suite(cfg);
  if (suite == "all") {
    nlohmann::json parts = nlohmann::json::array();
    bool pass = true;
    for (const char* s : {"ladder", "symQ", "symR", "numeric", "tables"}) {
      SuiteResult r = run_suite(s, cfg);
      pass = pass && r.pass;
      parts.push_back(std::move(r.report));
    }
    return {{{"suite", "all"}, {"pass", pass}, {"suites", parts}}, pass};
  }
  throw Error("unknown suite: " + std::string(suite));
}

}  // namespace hyp3term::cli
