#include "hyp3term/multipoly.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace hyp3term {

char var_name(Var v) {
  static constexpr char names[] = {'a', 'b', 'c', 'x'};
  return names[static_cast<unsigned>(v)];
}

Monomial::Monomial(const Exponents& e) {
  std::uint64_t deg = 0;
  for (unsigned i = 0; i < kNumVars; ++i) {
    if (e[i] > kMaxExponent) throw Error("monomial exponent overflow");
    bits_ |= static_cast<std::uint64_t>(e[i]) << (12 * (3 - i));
    deg += e[i];
  }
  bits_ |= deg << 48;
}

Monomial Monomial::power(Var v, unsigned n) {
  Exponents e{};
  e[static_cast<unsigned>(v)] = n;
  return Monomial(e);
}

Monomial::Exponents Monomial::exponents() const {
  Exponents e{};
  for (unsigned i = 0; i < kNumVars; ++i) e[i] = exponent(i);
  return e;
}

bool Monomial::divides(Monomial other) const {
  for (unsigned i = 0; i < kNumVars; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(const Rational& constant) {
  if (constant != 0) terms_.push_back({Monomial(), constant});
}

MultiPoly MultiPoly::variable(Var v) { return monomial(Monomial::power(v), 1); }

MultiPoly MultiPoly::monomial(Monomial m, const Rational& coef) {
  MultiPoly p;
  if (coef != 0) p.terms_.push_back({m, coef});
  return p;
}

MultiPoly MultiPoly::linear(const Rational& constant, const std::array<Rational, kNumVars>& coeffs) {
  std::vector<Term> t;
  for (unsigned i = 0; i < kNumVars; ++i) t.push_back({Monomial::power(kAllVars[i]), coeffs[i]});
  t.push_back({Monomial(), constant});
  return from_terms(std::move(t));
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& p, const Term& q) { return p.mono > q.mono; });
  MultiPoly out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
      out.terms_.back().coef += t.coef;
    } else {
      if (!out.terms_.empty() && out.terms_.back().coef == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coef == 0) out.terms_.pop_back();
  return out;
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

unsigned MultiPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& p, const std::vector<Term>& q, bool subtract) {
  std::vector<Term> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].mono > q[j].mono)) {
      out.push_back(p[i++]);
    } else if (i == p.size() || q[j].mono > p[i].mono) {
      out.push_back({q[j].mono, subtract ? Rational(-q[j].coef) : q[j].coef});
      ++j;
    } else {
      Rational s = subtract ? Rational(p[i].coef - q[j].coef) : Rational(p[i].coef + q[j].coef);
      if (s != 0) out.push_back({p[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

// Heap-based product: one stream per term of the shorter factor, emitted in
// descending monomial order so like terms are combined on the fly.
MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const MultiPoly& s = p.size() <= q.size() ? p : q;
  const MultiPoly& l = p.size() <= q.size() ? q : p;
  if (s.size() == 1) return l.times_monomial(s.terms_[0].mono, s.terms_[0].coef);

  struct Entry {
    Monomial mono;
    std::uint32_t i, j;
    bool operator<(const Entry& o) const { return mono < o.mono; }
  };
  std::priority_queue<Entry> heap;
  heap.push({s.terms_[0].mono * l.terms_[0].mono, 0, 0});

  MultiPoly out;
  out.terms_.reserve(l.size() + s.size());
  Rational prod;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    mpq_mul(prod.get_mpq_t(), s.terms_[e.i].coef.get_mpq_t(), l.terms_[e.j].coef.get_mpq_t());
    if (!out.terms_.empty() && out.terms_.back().mono == e.mono) {
      out.terms_.back().coef += prod;
    } else {
      if (!out.terms_.empty() && out.terms_.back().coef == 0) out.terms_.pop_back();
      out.terms_.push_back({e.mono, prod});
    }
    // Stream i starts once stream i-1 has emitted its first product.
    if (e.j == 0 && e.i + 1 < s.size())
      heap.push({s.terms_[e.i + 1].mono * l.terms_[0].mono, e.i + 1, 0});
    if (e.j + 1 < l.size()) heap.push({s.terms_[e.i].mono * l.terms_[e.j + 1].mono, e.i, e.j + 1});
  }
  if (!out.terms_.empty() && out.terms_.back().coef == 0) out.terms_.pop_back();
  return out;
}

MultiPoly MultiPoly::scaled(const Rational& s) const {
  if (s == 0) return {};
  MultiPoly r = *this;
  if (s != 1)
    for (auto& t : r.terms_) t.coef *= s;
  return r;
}

MultiPoly MultiPoly::times_monomial(Monomial m, const Rational& s) const {
  if (s == 0) return {};
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, s == 1 ? t.coef : Rational(t.coef * s)});
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(Var v) const {
  std::vector<Term> out;
  const Monomial step = Monomial::power(v);
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(v);
    if (e == 0) continue;
    out.push_back({t.mono / step, t.coef * e});
  }
  // Dividing by a fixed monomial keeps the order among surviving terms.
  MultiPoly r;
  r.terms_ = std::move(out);
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients(Var v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(v);
    buckets[e].push_back({t.mono / Monomial::power(v, e), t.coef});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(Var v, const std::vector<MultiPoly>& coeffs) {
  std::vector<Term> t;
  for (unsigned i = 0; i < coeffs.size(); ++i)
    for (const auto& term : coeffs[i].terms_) t.push_back({term.mono * Monomial::power(v, i), term.coef});
  return from_terms(std::move(t));
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return 1;
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  return make_rational(abs(g), l);
}

MultiPoly MultiPoly::primitive() const {
  if (terms_.empty()) return {};
  Rational c = content();
  if (leading().coef < 0) c = -c;
  if (c == 1) return *this;
  Rational inv = 1 / c;
  return scaled(inv);
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  if (is_zero()) return MultiPoly();
  if (d.is_constant()) return scaled(1 / d.terms_[0].coef);
  for (Var v : kAllVars)
    if (d.degree(v) > degree(v)) return std::nullopt;
  const Term& lead = d.leading();
  const Rational lead_inv = 1 / lead.coef;
  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.mono, t.coef);
  MultiPoly quotient;
  Rational prod;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lead.mono;
    Rational qc = it->second * lead_inv;
    rem.erase(it);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      Monomial m = d.terms_[k].mono * qm;
      mpq_mul(prod.get_mpq_t(), qc.get_mpq_t(), d.terms_[k].coef.get_mpq_t());
      auto [pos, inserted] = rem.try_emplace(m, -prod);
      if (!inserted) {
        pos->second -= prod;
        if (pos->second == 0) rem.erase(pos);
      }
    }
    quotient.terms_.push_back({qm, std::move(qc)});
  }
  return quotient;
}

Rational MultiPoly::evaluate(const std::array<Rational, kNumVars>& point) const {
  std::array<std::vector<Rational>, kNumVars> powers;
  for (unsigned i = 0; i < kNumVars; ++i) {
    unsigned d = degree(kAllVars[i]);
    powers[i].resize(d + 1);
    powers[i][0] = 1;
    for (unsigned e = 1; e <= d; ++e) powers[i][e] = powers[i][e - 1] * point[i];
  }
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (unsigned i = 0; i < kNumVars; ++i) {
      unsigned e = t.mono.exponent(i);
      if (e) v *= powers[i][e];
    }
    sum += v;
  }
  return sum;
}

namespace {

MultiPoly compose_from(const MultiPoly& p, const std::array<MultiPoly, kNumVars>& images, unsigned var) {
  if (p.is_constant() || var == kNumVars) return p;
  const Var v = kAllVars[var];
  if (!p.contains(v) || images[var] == MultiPoly::variable(v)) {
    if (!p.contains(v)) return compose_from(p, images, var + 1);
    // Identity image: only deeper variables change.
    auto cs = p.coefficients(v);
    std::vector<MultiPoly> mapped;
    mapped.reserve(cs.size());
    for (const auto& c : cs) mapped.push_back(compose_from(c, images, var + 1));
    return MultiPoly::from_coefficients(v, mapped);
  }
  auto cs = p.coefficients(v);
  MultiPoly acc;
  for (std::size_t i = cs.size(); i-- > 0;) {
    acc = acc * images[var];
    acc += compose_from(cs[i], images, var + 1);
  }
  return acc;
}

}  // namespace

MultiPoly MultiPoly::compose(const std::array<MultiPoly, kNumVars>& images) const {
  return compose_from(*this, images, 0);
}

std::size_t MultiPoly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h ^= std::hash<std::uint64_t>{}(t.mono.bits()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(mpz_get_ui(t.coef.get_num_mpz_t())) + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

std::string monomial_text(Monomial m, bool latex) {
  std::string s;
  for (Var v : kAllVars) {
    unsigned e = m.exponent(v);
    if (e == 0) continue;
    if (!latex && !s.empty()) s += "*";
    s += var_name(v);
    if (e > 1) s += latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
  }
  return s;
}

std::string render(const std::vector<Term>& terms, bool latex) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms) {
    Rational c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_text(t.mono, latex);
    if (mono.empty()) {
      if (latex && c.get_den() != 1)
        s += "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
      else
        s += to_string(c);
    } else {
      if (c != 1) {
        if (latex && c.get_den() != 1)
          s += "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
        else
          s += to_string(c) + (latex ? "" : "*");
      }
      s += mono;
    }
  }
  return s;
}

}  // namespace

std::string MultiPoly::to_string() const { return render(terms_, false); }
std::string MultiPoly::to_latex() const { return render(terms_, true); }

}  // namespace hyp3term
