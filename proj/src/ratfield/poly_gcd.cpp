// Multivariate gcd over Q by recursive primitive remainder sequences, behind
// a modular test that settles the common coprime case.

#include <algorithm>
#include <cstdint>

#include "hyp3term/multipoly.hpp"

namespace hyp3term {
namespace {

constexpr std::uint64_t kPrime = 4294967291u;  // largest prime below 2^32

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) { return x * y % kPrime; }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, b = mulmod(b, b))
    if (e & 1) r = mulmod(r, b);
  return r;
}

std::uint64_t invmod(std::uint64_t v) { return powmod(v, kPrime - 2); }

std::optional<std::uint64_t> residue(const Rational& q) {
  const std::uint64_t n = mpz_fdiv_ui(q.get_num().get_mpz_t(), kPrime);
  if (q.get_den() == 1) return n;
  const std::uint64_t d = mpz_fdiv_ui(q.get_den().get_mpz_t(), kPrime);
  if (d == 0) return std::nullopt;
  return mulmod(n, invmod(d));
}

using Dense = std::vector<std::uint64_t>;

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Univariate image in v with the other variables set to pt, mod kPrime.
std::optional<Dense> image(const MultiPoly& p, Var v, const std::array<std::uint64_t, kNumVars>& pt) {
  Dense out(p.degree(v) + 1, 0);
  const unsigned iv = static_cast<unsigned>(v);
  for (const auto& t : p.terms()) {
    auto c = residue(t.coef);
    if (!c) return std::nullopt;
    std::uint64_t m = *c;
    for (unsigned w = 0; w < kNumVars; ++w)
      if (w != iv && t.mono.exponent(w)) m = mulmod(m, powmod(pt[w], t.mono.exponent(w)));
    auto& slot = out[t.mono.exponent(iv)];
    slot = (slot + m) % kPrime;
  }
  return out;
}

std::size_t univariate_gcd_degree(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + kPrime - mulmod(f, b[i])) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True only if gcd(p, q) is certainly constant. For each shared variable the
// gcd of images at a point where neither leading coefficient vanishes has
// degree at least that of the true gcd.
bool provably_coprime(const MultiPoly& p, const MultiPoly& q) {
  static constexpr std::uint64_t kPoints[3][kNumVars] = {
      {912367421u, 1836451023u, 2736510931u, 3271543675u},
      {1234567891u, 2345678917u, 3456789013u, 417283945u},
      {99991u, 3000000019u, 1500000001u, 2718281829u},
  };
  for (Var v : kAllVars) {
    if (!p.contains(v) || !q.contains(v)) continue;
    bool settled = false;
    for (const auto& raw : kPoints) {
      std::array<std::uint64_t, kNumVars> pt;
      std::copy(std::begin(raw), std::end(raw), pt.begin());
      auto ip = image(p, v, pt);
      auto iq = image(q, v, pt);
      if (!ip || !iq || ip->back() == 0 || iq->back() == 0) continue;
      if (univariate_gcd_degree(*ip, *iq) != 0) return false;
      settled = true;
      break;
    }
    if (!settled) return false;
  }
  return true;
}

MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& d) {
  auto q = p.divide_exact(d);
  if (!q) throw Error("internal: gcd produced a non-divisor");
  return *q;
}

MultiPoly content_wrt(const MultiPoly& p, Var v) {
  auto cs = p.coefficients(v);
  std::erase_if(cs, [](const MultiPoly& c) { return c.is_zero(); });
  std::sort(cs.begin(), cs.end(), [](const MultiPoly& x, const MultiPoly& y) { return x.size() < y.size(); });
  MultiPoly g;
  for (const auto& c : cs) {
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly primitive_wrt(const MultiPoly& p, Var v) {
  MultiPoly c = content_wrt(p, v);
  if (c.is_constant()) return p.primitive();
  return exact_quotient(p, c).primitive();
}

MultiPoly leading_coefficient(const MultiPoly& p, Var v) { return p.coefficients(v).back(); }

MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, Var v) {
  const unsigned m = b.degree(v);
  const MultiPoly lc = leading_coefficient(b, v);
  while (!a.is_zero() && a.degree(v) >= m) {
    const unsigned n = a.degree(v);
    MultiPoly lead = a.coefficients(v).back();
    a = lc * a - lead.times_monomial(Monomial::power(v, n - m)) * b;
    a = a.primitive();
  }
  return a;
}

}  // namespace

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero()) return q.primitive();
  if (q.is_zero()) return p.primitive();
  if (p.is_constant() || q.is_constant()) return MultiPoly(1);
  if (provably_coprime(p, q)) return MultiPoly(1);

  // Main variable: present in both and of smallest combined degree.
  std::optional<Var> main;
  unsigned best = ~0u;
  for (Var v : kAllVars) {
    if (p.contains(v) && q.contains(v) && p.degree(v) + q.degree(v) < best) {
      best = p.degree(v) + q.degree(v);
      main = v;
    }
  }
  if (!main) {
    // No shared variable: any common factor lies in the contents.
    for (Var v : kAllVars) {
      if (p.contains(v)) return gcd(content_wrt(p, v), q);
      if (q.contains(v)) return gcd(p, content_wrt(q, v));
    }
  }
  const Var v = *main;

  const MultiPoly cp = content_wrt(p, v);
  const MultiPoly cq = content_wrt(q, v);
  const MultiPoly g = gcd(cp, cq);
  MultiPoly a = (cp.is_constant() ? p : exact_quotient(p, cp)).primitive();
  MultiPoly b = (cq.is_constant() ? q : exact_quotient(q, cq)).primitive();
  if (a.degree(v) < b.degree(v)) std::swap(a, b);

  while (true) {
    MultiPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (!r.contains(v)) {
      b = MultiPoly(1);
      break;
    }
    a = std::move(b);
    b = primitive_wrt(r, v);
  }
  if (b.is_constant()) return g.primitive();
  return (g * primitive_wrt(b, v)).primitive();
}

}  // namespace hyp3term
