#include "hyp3term/ladder.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace hyp3term {
namespace {

struct Symbols {
  RatFunc a = RatFunc::variable(Var::a);
  RatFunc b = RatFunc::variable(Var::b);
  RatFunc c = RatFunc::variable(Var::c);
  RatFunc x = RatFunc::variable(Var::x);
  RatFunc one_minus_x = 1 - x;
  RatFunc x_one_minus_x = x * one_minus_x;
  // F'' = p F + q F' on solutions of the hypergeometric equation.
  RatFunc p = a * b / x_one_minus_x;
  RatFunc q = -(c - (a + b + 1) * x) / x_one_minus_x;
};

const Symbols& sym() {
  static const Symbols s;
  return s;
}

BasisRep combine(const RatFunc& u, const BasisRep& g, const RatFunc& v, const BasisRep& dg) {
  return {u * g.r + v * dg.r, u * g.s + v * dg.s};
}

class Memo {
 public:
  std::optional<BasisRep> find(ShiftTriple s) const {
    std::shared_lock lock(mu_);
    auto it = table_.find(s);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void insert(ShiftTriple s, const BasisRep& rep) {
    std::unique_lock lock(mu_);
    table_.emplace(s, rep);
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<ShiftTriple, BasisRep> table_;
};

Memo& memo() {
  static Memo m;
  return m;
}

// Predecessor on the canonical path and the step leading from it.
std::pair<ShiftTriple, Step> predecessor(ShiftTriple s) {
  if (s.l != 0) return s.l > 0 ? std::pair{ShiftTriple{s.k, s.l - 1, s.m}, Step::b_plus}
                               : std::pair{ShiftTriple{s.k, s.l + 1, s.m}, Step::b_minus};
  if (s.k != 0) return s.k > 0 ? std::pair{ShiftTriple{s.k - 1, 0, s.m}, Step::a_plus}
                               : std::pair{ShiftTriple{s.k + 1, 0, s.m}, Step::a_minus};
  return s.m > 0 ? std::pair{ShiftTriple{0, 0, s.m - 1}, Step::c_plus}
                 : std::pair{ShiftTriple{0, 0, s.m + 1}, Step::c_minus};
}

}  // namespace

std::string ShiftTriple::to_string() const {
  return "(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ")";
}

std::string step_name(Step s) {
  switch (s) {
    case Step::a_plus: return "a+";
    case Step::a_minus: return "a-";
    case Step::b_plus: return "b+";
    case Step::b_minus: return "b-";
    case Step::c_plus: return "c+";
    case Step::c_minus: return "c-";
  }
  return "?";
}

Step opposite(Step s) {
  switch (s) {
    case Step::a_plus: return Step::a_minus;
    case Step::a_minus: return Step::a_plus;
    case Step::b_plus: return Step::b_minus;
    case Step::b_minus: return Step::b_plus;
    case Step::c_plus: return Step::c_minus;
    case Step::c_minus: return Step::c_plus;
  }
  return s;
}

ShiftTriple advance(ShiftTriple at, Step s) {
  switch (s) {
    case Step::a_plus: ++at.k; break;
    case Step::a_minus: --at.k; break;
    case Step::b_plus: ++at.l; break;
    case Step::b_minus: --at.l; break;
    case Step::c_plus: ++at.m; break;
    case Step::c_minus: --at.m; break;
  }
  return at;
}

BasisRep deriv(const BasisRep& rep) {
  const Symbols& z = sym();
  return {rep.r.d_dx() + rep.s * z.p, rep.r + rep.s.d_dx() + rep.s * z.q};
}

BasisRep step(const BasisRep& rep, ShiftTriple at, Step s) {
  const Symbols& z = sym();
  const RatFunc alpha = z.a + at.k;
  const RatFunc beta = z.b + at.l;
  const RatFunc gamma = z.c + at.m;
  const BasisRep d = deriv(rep);
  switch (s) {
    case Step::a_plus: return combine(1, rep, z.x / alpha, d);
    case Step::b_plus: return combine(1, rep, z.x / beta, d);
    case Step::c_minus: return combine(1, rep, z.x / (gamma - 1), d);
    case Step::a_minus: {
      const RatFunc inv = 1 / (gamma - alpha);
      return combine((gamma - alpha - beta * z.x) * inv, rep, z.x_one_minus_x * inv, d);
    }
    case Step::b_minus: {
      const RatFunc inv = 1 / (gamma - beta);
      return combine((gamma - beta - alpha * z.x) * inv, rep, z.x_one_minus_x * inv, d);
    }
    case Step::c_plus: {
      const RatFunc scale = gamma / ((gamma - alpha) * (gamma - beta));
      return combine((gamma - alpha - beta) * scale, rep, z.one_minus_x * scale, d);
    }
  }
  return rep;
}

std::vector<Step> canonical_path(ShiftTriple target) {
  std::vector<Step> path;
  for (long i = 0; i < std::labs(target.m); ++i) path.push_back(target.m > 0 ? Step::c_plus : Step::c_minus);
  for (long i = 0; i < std::labs(target.k); ++i) path.push_back(target.k > 0 ? Step::a_plus : Step::a_minus);
  for (long i = 0; i < std::labs(target.l); ++i) path.push_back(target.l > 0 ? Step::b_plus : Step::b_minus);
  return path;
}

BasisRep rep_along(std::span<const Step> path) {
  BasisRep rep{1, 0};
  ShiftTriple at;
  for (Step s : path) {
    rep = step(rep, at, s);
    at = advance(at, s);
  }
  return rep;
}

BasisRep compute_rep(ShiftTriple shift) {
  Memo& table = memo();
  if (auto hit = table.find(shift)) return *hit;
  // Walk back along the canonical path to the nearest memoized shift.
  std::vector<std::pair<ShiftTriple, Step>> pending;
  ShiftTriple cur = shift;
  BasisRep rep{1, 0};
  while (true) {
    if (cur == ShiftTriple{}) break;
    if (auto hit = table.find(cur)) {
      rep = *hit;
      break;
    }
    auto [prev, s] = predecessor(cur);
    pending.push_back({prev, s});
    cur = prev;
  }
  for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
    rep = step(rep, it->first, it->second);
    table.insert(advance(it->first, it->second), rep);
  }
  return rep;
}

QRPair compute_qr(ShiftTriple shift) {
  const Symbols& z = sym();
  const BasisRep rep = compute_rep(shift);
  return {rep.s * (z.a * z.b / z.c), rep.r};
}

bool check_r_eq_qprime(ShiftTriple shift) {
  const Symbols& z = sym();
  const RatFunc R = compute_qr(shift).R;
  ParamSubstitution up;
  for (auto& img : up.images) img.constant = 1;
  const RatFunc q_shifted = compute_qr({shift.k - 1, shift.l - 1, shift.m - 1}).Q.substitute(up, MoebiusTag());
  const RatFunc factor = z.c * (z.c + 1) / ((z.a + 1) * (z.b + 1) * z.x_one_minus_x);
  return R == factor * q_shifted;
}

std::size_t memo_size() { return memo().size(); }

}  // namespace hyp3term
