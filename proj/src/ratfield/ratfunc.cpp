#include "hyp3term/ratfunc.hpp"

#include <algorithm>
#include <cstdint>

namespace hyp3term {
namespace {

constexpr std::uint64_t kPrime = 2147483647u;  // 2^31 - 1

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t v) { return mod_pow(v, kPrime - 2); }

std::uint64_t mod_of(const Integer& z) {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(kPrime));
}

// Residue of q mod p, or nullopt if p divides the denominator.
std::optional<std::uint64_t> mod_of(const Rational& q) {
  const std::uint64_t n = mod_of(q.get_num());
  if (q.get_den() == 1) return n;
  const std::uint64_t d = mod_of(q.get_den());
  if (d == 0) return std::nullopt;
  return n * mod_inv(d) % kPrime;
}

std::optional<std::uint64_t> eval_mod(const MultiPoly& p, const std::array<std::uint64_t, kNumVars>& pt) {
  std::array<std::vector<std::uint64_t>, kNumVars> powers;
  for (unsigned v = 0; v < kNumVars; ++v) {
    const unsigned d = p.degree(kAllVars[v]);
    powers[v].resize(d + 1);
    powers[v][0] = 1;
    for (unsigned i = 1; i <= d; ++i) powers[v][i] = powers[v][i - 1] * pt[v] % kPrime;
  }
  std::uint64_t acc = 0;
  for (const auto& t : p.terms()) {
    auto c = mod_of(t.coef);
    if (!c) return std::nullopt;
    std::uint64_t m = *c;
    for (unsigned v = 0; v < kNumVars; ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e) m = m * powers[v][e] % kPrime;
    }
    acc += m;
    if (acc >= kPrime) acc -= kPrime;
  }
  return acc;
}

// False only if the linear polynomial t certainly does not divide p: p is
// evaluated mod a prime at points of the hyperplane t = 0.
bool may_divide(const MultiPoly& p, const MultiPoly& t) {
  std::array<std::uint64_t, kNumVars> coef{};
  std::uint64_t constant = 0;
  for (const auto& term : t.terms()) {
    auto c = mod_of(term.coef);
    if (!c) return true;
    if (term.mono.is_one()) {
      constant = *c;
      continue;
    }
    for (unsigned v = 0; v < kNumVars; ++v)
      if (term.mono.exponent(v)) coef[v] = *c;
  }
  unsigned solve = kNumVars;
  for (unsigned v = 0; v < kNumVars; ++v)
    if (coef[v] != 0) solve = v;
  if (solve == kNumVars) return true;
  const std::uint64_t inv = mod_inv(coef[solve]);
  static constexpr std::uint64_t kSeeds[2][kNumVars] = {
      {1234567, 7654321, 2718281, 3141592},
      {1618033, 1414213, 1732050, 2236067},
  };
  for (const auto& seed : kSeeds) {
    std::array<std::uint64_t, kNumVars> pt{};
    std::uint64_t s = constant;
    for (unsigned v = 0; v < kNumVars; ++v) {
      if (v == solve) continue;
      pt[v] = seed[v];
      s = (s + coef[v] * pt[v]) % kPrime;
    }
    pt[solve] = (kPrime - s) % kPrime * inv % kPrime;
    auto r = eval_mod(p, pt);
    if (r && *r != 0) return false;
  }
  return true;
}

bool poly_less(const MultiPoly& p, const MultiPoly& q) {
  const auto& a = p.terms();
  const auto& b = q.terms();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].mono != b[i].mono) return a[i].mono > b[i].mono;
    if (a[i].coef != b[i].coef) return a[i].coef < b[i].coef;
  }
  return a.size() < b.size();
}

// Moves every factor `t` of f.rest into the atom list; returns the count.
int extract(Factored& f, const MultiPoly& t) {
  int n = 0;
  while (!f.rest.is_constant() && f.rest.total_degree() >= 1 && may_divide(f.rest, t)) {
    auto q = f.rest.divide_exact(t);
    if (!q) break;
    f.rest = std::move(*q);
    ++n;
  }
  if (n) {
    f.add_atom(t, n);
    if (f.rest.is_linear()) {
      MultiPoly r = std::move(f.rest);
      f.rest = MultiPoly(1);
      f.add_atom(r, 1);
    }
  }
  return n;
}

// Makes n and d coprime and moves the unit of d into n.
void reduce(Factored& n, Factored& d) {
  if (n.is_zero()) {
    n = Factored{0, {}, MultiPoly(1)};
    d = Factored{};
    return;
  }
  if (!n.rest.is_constant())
    for (const auto& [t, e] : std::vector(d.atoms)) extract(n, t);
  if (!d.rest.is_constant())
    for (const auto& [t, e] : std::vector(n.atoms)) extract(d, t);
  for (const auto& [t, e] : std::vector(n.atoms)) {
    const int de = d.exponent(t);
    if (!de) continue;
    const int common = std::min(e, de);
    n.add_atom(t, -common);
    d.add_atom(t, -common);
  }
  if (!n.rest.is_constant() && !d.rest.is_constant()) {
    MultiPoly g = gcd(n.rest, d.rest);
    if (!g.is_constant()) {
      n.rest = *n.rest.divide_exact(g);
      d.rest = *d.rest.divide_exact(g);
    }
  }
  n.unit /= d.unit;
  d.unit = 1;
}

// Splits a nonzero polynomial into (scalar, integer primitive with positive lead).
std::pair<Rational, MultiPoly> split_unit(const MultiPoly& p) {
  MultiPoly prim = p.primitive();
  return {p.leading().coef / prim.leading().coef, std::move(prim)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Factored

Factored Factored::from_poly(const MultiPoly& p) {
  if (p.is_zero()) return Factored{0, {}, MultiPoly(1)};
  Factored f;
  if (p.is_constant()) {
    f.unit = p.constant_value();
    return f;
  }
  Monomial::Exponents low;
  low.fill(Monomial::kMaxExponent);
  for (const auto& t : p.terms())
    for (unsigned v = 0; v < kNumVars; ++v) low[v] = std::min(low[v], t.mono.exponent(v));
  const Monomial common(low);
  MultiPoly body = p;
  if (!common.is_one()) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back({t.mono / common, t.coef});
    body = MultiPoly::from_terms(std::move(terms));
    for (unsigned v = 0; v < kNumVars; ++v)
      if (low[v]) f.add_atom(MultiPoly::variable(kAllVars[v]), static_cast<int>(low[v]));
  }
  auto [u, prim] = split_unit(body);
  f.unit = u;
  if (prim.is_constant()) return f;
  if (prim.is_linear())
    f.add_atom(prim, 1);
  else
    f.rest = std::move(prim);
  return f;
}

int Factored::exponent(const MultiPoly& atom) const {
  for (const auto& [t, e] : atoms)
    if (t == atom) return e;
  return 0;
}

void Factored::add_atom(const MultiPoly& atom, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(atoms.begin(), atoms.end(), atom,
                             [](const auto& entry, const MultiPoly& t) { return poly_less(entry.first, t); });
  if (it != atoms.end() && it->first == atom) {
    it->second += e;
    if (it->second == 0) atoms.erase(it);
    return;
  }
  atoms.insert(it, {atom, e});
}

MultiPoly Factored::expand() const {
  if (unit == 0) return {};
  MultiPoly acc = rest;
  for (const auto& [t, e] : atoms) {
    if (e < 0) throw Error("internal: negative exponent in a factored polynomial");
    acc = acc * t.pow(static_cast<unsigned>(e));
  }
  return acc.scaled(unit);
}

Factored operator*(const Factored& p, const Factored& q) {
  if (p.is_zero() || q.is_zero()) return Factored{0, {}, MultiPoly(1)};
  Factored r = p;
  r.unit *= q.unit;
  for (const auto& [t, e] : q.atoms) r.add_atom(t, e);
  if (!q.rest.is_one()) r.rest = r.rest * q.rest;
  return r;
}

// ---------------------------------------------------------------------------
// RatFunc construction

RatFunc::RatFunc(const Rational& q) : num_f_{q, {}, MultiPoly(1)}, num_(q), den_(1) {}

RatFunc::RatFunc(const MultiPoly& p) : num_f_(Factored::from_poly(p)), num_(p), den_(1) {}

RatFunc RatFunc::from_polys(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  return from_factored(Factored::from_poly(num), Factored::from_poly(den));
}

RatFunc RatFunc::from_factored(Factored num, Factored den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  reduce(num, den);
  RatFunc f;
  f.num_f_ = std::move(num);
  f.den_f_ = std::move(den);
  f.finish();
  return f;
}

void RatFunc::finish() {
  if (num_f_.is_zero()) {
    num_f_ = Factored{0, {}, MultiPoly(1)};
    den_f_ = Factored{};
  }
  std::erase_if(num_f_.atoms, [](const auto& a) { return a.second == 0; });
  std::erase_if(den_f_.atoms, [](const auto& a) { return a.second == 0; });
  num_ = num_f_.expand();
  den_ = den_f_.expand();
}

// ---------------------------------------------------------------------------
// Field operations

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_f_.unit = -r.num_f_.unit;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& f, const RatFunc& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  // G = common part of the denominators known from the shared atoms.
  Factored fd = f.den_f_, gd = g.den_f_;
  if (!gd.rest.is_constant())
    for (const auto& [t, e] : std::vector(fd.atoms)) extract(gd, t);
  if (!fd.rest.is_constant())
    for (const auto& [t, e] : std::vector(gd.atoms)) extract(fd, t);
  Factored common;
  for (const auto& [t, e] : fd.atoms) {
    const int c = std::min(e, gd.exponent(t));
    if (c > 0) common.add_atom(t, c);
  }
  if (!fd.rest.is_constant() && !gd.rest.is_constant()) common.rest = gcd(fd.rest, gd.rest);
  auto cofactor = [&common](Factored d) {
    for (const auto& [t, e] : common.atoms) d.add_atom(t, -e);
    if (!common.rest.is_one()) d.rest = *d.rest.divide_exact(common.rest);
    return d;
  };
  const Factored f_co = cofactor(fd);
  const Factored g_co = cofactor(gd);
  MultiPoly n = f.num_ * g_co.expand() + g.num_ * f_co.expand();
  Factored den = fd * g_co;
  return RatFunc::from_factored(Factored::from_poly(n), std::move(den));
}

RatFunc operator-(const RatFunc& f, const RatFunc& g) { return f + (-g); }

RatFunc operator*(const RatFunc& f, const RatFunc& g) {
  if (f.is_zero() || g.is_zero()) return RatFunc();
  if (f.is_constant()) {
    RatFunc r = g;
    r.num_f_.unit *= f.num_.constant_value();
    r.num_ = r.num_.scaled(f.num_.constant_value());
    return r;
  }
  if (g.is_constant()) return g * f;
  Factored fn = f.num_f_, fd = f.den_f_, gn = g.num_f_, gd = g.den_f_;
  reduce(fn, gd);
  reduce(gn, fd);
  RatFunc r;
  r.num_f_ = fn * gn;
  r.num_f_.unit /= fd.unit * gd.unit;
  r.den_f_ = fd * gd;
  r.den_f_.unit = 1;
  r.finish();
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error("division by the zero rational function");
  RatFunc r;
  r.num_f_ = den_f_;
  r.num_f_.unit = 1 / num_f_.unit;
  r.den_f_ = num_f_;
  r.den_f_.unit = 1;
  r.finish();
  return r;
}

RatFunc operator/(const RatFunc& f, const RatFunc& g) { return f * g.inverse(); }

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Calculus and substitution

RatFunc RatFunc::d_dx() const {
  if (!num_.contains(Var::x) && !den_.contains(Var::x)) return RatFunc();
  if (den_.is_one()) return RatFunc(num_.derivative(Var::x));
  // f = n / D with D = prod t_i^e_i * rest. With T the product of the
  // x-dependent factors, f' = (n' T - n S) / (D T), S = T D'/D.
  std::vector<std::pair<MultiPoly, int>> xs;
  for (const auto& [t, e] : den_f_.atoms)
    if (t.contains(Var::x)) xs.push_back({t, e});
  const bool rest_x = den_f_.rest.contains(Var::x);
  if (rest_x) xs.push_back({den_f_.rest, 1});
  MultiPoly T(1);
  for (const auto& [t, e] : xs) T = T * t;
  MultiPoly S;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    MultiPoly others(1);
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) others = others * xs[j].first;
    S += (xs[i].first.derivative(Var::x) * others).scaled(xs[i].second);
  }
  MultiPoly m = num_.derivative(Var::x) * T - num_ * S;
  Factored den = den_f_;
  for (const auto& [t, e] : den_f_.atoms)
    if (t.contains(Var::x)) den.add_atom(t, 1);
  if (rest_x) den.rest = den.rest * den.rest;
  return from_factored(Factored::from_poly(m), std::move(den));
}

namespace {

struct SubstitutionContext {
  std::array<MultiPoly, kNumVars> abc_images;  // x maps to itself
  bool moves_x = false;
  MultiPoly p, q;  // x -> p / q
};

// Image of one polynomial, returned as (numerator, power of q in the denominator).
std::pair<MultiPoly, unsigned> substitute_poly(const MultiPoly& poly, const SubstitutionContext& ctx) {
  if (!ctx.moves_x) return {poly.compose(ctx.abc_images), 0};
  const auto cs = poly.coefficients(Var::x);
  const unsigned d = static_cast<unsigned>(cs.size()) - 1;
  std::vector<MultiPoly> qpow{MultiPoly(1)};
  for (unsigned i = 1; i <= d; ++i) qpow.push_back(qpow.back() * ctx.q);
  MultiPoly acc = cs[d].compose(ctx.abc_images);
  for (unsigned i = d; i-- > 0;) {
    acc = acc * ctx.p;
    if (!cs[i].is_zero()) acc += cs[i].compose(ctx.abc_images) * qpow[d - i];
  }
  return {acc, d};
}

// Image of a factored polynomial; the returned integer is the q power owed
// to the denominator.
std::pair<Factored, long> substitute_factored(const Factored& f, const SubstitutionContext& ctx) {
  Factored out;
  out.unit = f.unit;
  long qdeg = 0;
  for (const auto& [t, e] : f.atoms) {
    auto [img, d] = substitute_poly(t, ctx);
    if (img.is_zero()) throw Error("substitution maps a factor to zero");
    Factored fi = Factored::from_poly(img);
    for (int i = 0; i < e; ++i) out = out * fi;
    qdeg += static_cast<long>(d) * e;
  }
  if (!f.rest.is_constant()) {
    auto [img, d] = substitute_poly(f.rest, ctx);
    if (img.is_zero()) throw Error("substitution maps a factor to zero");
    out = out * Factored::from_poly(img);
    qdeg += d;
  }
  return {out, qdeg};
}

}  // namespace

RatFunc RatFunc::substitute(const ParamSubstitution& params, MoebiusTag xmap) const {
  if (params.is_identity() && xmap.is_identity()) return *this;
  if (is_zero()) return *this;
  SubstitutionContext ctx;
  for (unsigned i = 0; i < 3; ++i) {
    const auto& img = params.images[i];
    ctx.abc_images[i] = MultiPoly::linear(img.constant, {img.coeffs[0], img.coeffs[1], img.coeffs[2], 0});
  }
  ctx.abc_images[3] = MultiPoly::variable(Var::x);
  const auto fr = xmap.fraction();
  ctx.moves_x = !xmap.is_identity();
  ctx.p = MultiPoly::linear(fr.num[0], {0, 0, 0, fr.num[1]});
  ctx.q = MultiPoly::linear(fr.den[0], {0, 0, 0, fr.den[1]});

  auto [n, nq] = substitute_factored(num_f_, ctx);
  auto [d, dq] = substitute_factored(den_f_, ctx);
  if (d.is_zero()) throw Error("substitution produces a zero denominator");
  // n / q^nq over d / q^dq = n q^(dq - nq) / d.
  const long net = dq - nq;
  if (net != 0 && !ctx.q.is_constant()) {
    Factored qf = Factored::from_poly(ctx.q);
    Factored& side = net > 0 ? n : d;
    for (long i = 0; i < std::labs(net); ++i) side = side * qf;
  }
  return from_factored(std::move(n), std::move(d));
}

Rational RatFunc::evaluate(const std::array<Rational, kNumVars>& point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw Error("rational function evaluated at a pole");
  return num_.evaluate(point) / d;
}

// ---------------------------------------------------------------------------
// Output

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

std::string factor_latex(const MultiPoly& p, int e, bool alone) {
  std::string s = p.to_latex();
  if (p.size() > 1 && (!alone || e != 1)) s = "(" + s + ")";
  if (e != 1) s += "^{" + std::to_string(e) + "}";
  return s;
}

// Product of |scalar| and the factors of f; empty when everything is 1.
std::string product_latex(const Integer& scalar, const Factored& f) {
  std::vector<std::pair<MultiPoly, int>> fs = f.atoms;
  if (!f.rest.is_constant()) fs.push_back({f.rest, 1});
  const bool alone = fs.size() == 1 && scalar == 1;
  std::string s = scalar == 1 ? "" : scalar.get_str();
  for (const auto& [t, e] : fs) {
    if (!s.empty()) s += " ";
    s += factor_latex(t, e, alone);
  }
  return s;
}

}  // namespace

std::string RatFunc::to_latex() const {
  if (is_zero()) return "0";
  const Rational& u = num_f_.unit;
  const bool neg = u < 0;
  const Integer p = abs(u.get_num());
  const Integer& q = u.get_den();
  std::string top = product_latex(p, num_f_);
  if (top.empty()) top = "1";
  std::string bottom = product_latex(q, den_f_);
  std::string body = bottom.empty() ? top : "\\frac{" + top + "}{" + bottom + "}";
  if (neg) {
    // A single polynomial numerator needs brackets after the sign.
    const bool bare_sum = bottom.empty() && num_f_.atoms.empty() && p == 1 && num_f_.rest.size() > 1;
    return bare_sum ? "-(" + body + ")" : "-" + body;
  }
  return body;
}

nlohmann::json poly_to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    const auto e = t.mono.exponents();
    terms.push_back({e[0], e[1], e[2], e[3], hyp3term::to_string(t.coef)});
  }
  return terms;
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("polynomial JSON must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 5) throw Error("polynomial term must be [e_a, e_b, e_c, e_x, \"p/q\"]");
    Monomial::Exponents e{};
    for (unsigned v = 0; v < kNumVars; ++v) {
      const long x = t[v].get<long>();
      if (x < 0 || x > static_cast<long>(Monomial::kMaxExponent)) throw Error("exponent out of range");
      e[v] = static_cast<unsigned>(x);
    }
    terms.push_back({Monomial(e), parse_rational(t[4].get<std::string>())});
  }
  return MultiPoly::from_terms(std::move(terms));
}

nlohmann::json RatFunc::to_json() const { return {{"num", poly_to_json(num_)}, {"den", poly_to_json(den_)}}; }

RatFunc RatFunc::from_json(const nlohmann::json& j) {
  return from_polys(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

}  // namespace hyp3term
