#include "hyp3term/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "embedded.hpp"

namespace hyp3term {

namespace {

constexpr IndexForm kZero{};
constexpr IndexForm kOne{0, 0, 0, 1};

IndexForm add(IndexForm f, const IndexForm& g, long s = 1) {
  for (int i = 0; i < 4; ++i) f[i] += s * g[i];
  return f;
}

IndexForm scaled(IndexForm f, long s) {
  for (auto& v : f) v *= s;
  return f;
}

// L(I(klm)) for an index map I.
IndexForm through(const IndexForm& f, const std::array<IndexForm, 3>& index) {
  IndexForm out{0, 0, 0, f[3]};
  for (int j = 0; j < 3; ++j) out = add(out, index[j], f[j]);
  return out;
}

IndexForm mod2(IndexForm f) {
  for (auto& v : f) v = ((v % 2) + 2) % 2;
  return f;
}

// Lengths whose first nonzero coefficient in the order m, k, l, 1 is negative
// are shown through the denominator.
bool negative_leading(const IndexForm& d) {
  for (int i : {2, 0, 1, 3})
    if (d[i] != 0) return d[i] < 0;
  return false;
}

std::pair<long, long> length_cost(const IndexForm& d) {
  long nnz = 0;
  for (int i = 0; i < 3; ++i) nnz += d[i] != 0;
  return {nnz, std::labs(d[3])};
}

std::string exponent_text(const IndexForm& e) { return form_to_string(e); }

std::string poch_text(const PochFactor& p) {
  const std::string arg = form_to_string(p.arg);
  if (p.length == kOne) return "(" + arg + ")";
  return "(" + arg + ")_{" + form_to_string(p.length) + "}";
}

}  // namespace

std::string coef_name(Coef c) { return c == Coef::Q ? "Q" : "R"; }
Which group_of(Coef c) { return c == Coef::Q ? Which::G : Which::Gt; }

// ---------------------------------------------------------------------------
// SymFactor

void SymFactor::add_class(const AbcPart& beta, const std::map<IndexForm, long>& entries) {
  int lead = -1;
  for (int i : {2, 0, 1})
    if (beta[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) throw Error("Pochhammer argument without a, b or c");
  AbcPart key = beta;
  auto& cls = gamma_[key[lead] > 0 ? key : AbcPart{-beta[0], -beta[1], -beta[2]}];
  if (beta[lead] > 0) {
    for (const auto& [l, e] : entries) cls[l] += e;
  } else {
    // prod Gamma(beta + L_i)^e_i = (-1)^{sum e_i L_i} prod Gamma(-beta + 1 - L_i)^{-e_i}
    // whenever sum e_i = 0.
    for (const auto& [l, e] : entries) {
      sign_ = add(sign_, l, e);
      cls[add(kOne, l, -1)] -= e;
    }
  }
}

void SymFactor::normalize() {
  for (auto it = gamma_.begin(); it != gamma_.end();) {
    std::erase_if(it->second, [](const auto& entry) { return entry.second == 0; });
    it = it->second.empty() ? gamma_.erase(it) : std::next(it);
  }
  sign_ = mod2(sign_);
}

SymFactor SymFactor::gamma_monomial(const std::vector<std::pair<ParamForm, long>>& gammas) {
  std::map<AbcPart, std::map<IndexForm, long>> classes;
  for (const auto& [arg, e] : gammas)
    classes[{arg[0], arg[1], arg[2]}][IndexForm{arg[3], arg[4], arg[5], arg[6]}] += e;
  SymFactor g;
  for (const auto& [beta, entries] : classes) {
    long total = 0;
    for (const auto& [l, e] : entries) total += e;
    if (total != 0) throw Error("Gamma monomial is not a Pochhammer ratio");
    g.add_class(beta, entries);
  }
  g.normalize();
  return g;
}

SymFactor SymFactor::pochhammer(const ParamForm& arg, const IndexForm& length, long exponent) {
  const IndexForm base{arg[3], arg[4], arg[5], arg[6]};
  SymFactor g;
  g.add_class({arg[0], arg[1], arg[2]}, {{add(base, length), exponent}});
  g.add_class({arg[0], arg[1], arg[2]}, {{base, -exponent}});
  g.normalize();
  return g;
}

SymFactor SymFactor::linear(const ParamForm& arg, long exponent) { return pochhammer(arg, kOne, exponent); }

SymFactor SymFactor::sign(const IndexForm& e) {
  SymFactor f;
  f.sign_ = mod2(e);
  return f;
}

SymFactor SymFactor::x_power(const IndexForm& e) {
  SymFactor f;
  f.x_ = e;
  return f;
}

SymFactor SymFactor::one_minus_x_power(const IndexForm& e) {
  SymFactor f;
  f.y_ = e;
  return f;
}

SymFactor SymFactor::parse(std::string_view text, const std::map<std::string, SymFactor>& named) {
  SymFactor out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    bool den = false;
    if (text[i] == '/') {
      den = true;
      ++i;
    }
    const long e = den ? -1 : 1;
    if (text[i] == '-') {
      out = out * sign(kOne);
      ++i;
      continue;
    }
    if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
    const std::string name(text.substr(i, j - i));
    if (name.empty()) throw Error("malformed factor token at: " + std::string(text.substr(i)));
    if (j < text.size() && text[j] == '[') {
      const std::size_t close = text.find(']', j);
      if (close == std::string_view::npos) throw Error("unterminated factor token: " + std::string(text));
      const std::string_view body = text.substr(j + 1, close - j - 1);
      if (name == "P") {
        const std::size_t bar = body.find('|');
        if (bar == std::string_view::npos) throw Error("Pochhammer token needs arg|length");
        out = out * pochhammer(parse_param_form(body.substr(0, bar)), parse_index_form(body.substr(bar + 1)), e);
      } else if (name == "L") {
        out = out * linear(parse_param_form(body), e);
      } else if (name == "S") {
        out = out * sign(parse_index_form(body));
      } else if (name == "X") {
        out = out * x_power(scaled(parse_index_form(body), e));
      } else if (name == "Y") {
        out = out * one_minus_x_power(scaled(parse_index_form(body), e));
      } else {
        throw Error("unknown factor token " + name);
      }
      i = close + 1;
    } else {
      const auto it = named.find(name);
      if (it == named.end()) throw Error("unknown named factor " + name);
      out = out * (den ? it->second.inverse() : it->second);
      i = j;
    }
  }
  return out;
}

SymFactor operator*(const SymFactor& f, const SymFactor& g) {
  SymFactor r = f;
  for (const auto& [beta, cls] : g.gamma_)
    for (const auto& [l, e] : cls) r.gamma_[beta][l] += e;
  r.sign_ = add(r.sign_, g.sign_);
  r.x_ = add(r.x_, g.x_);
  r.y_ = add(r.y_, g.y_);
  r.normalize();
  return r;
}

SymFactor SymFactor::inverse() const {
  SymFactor r = *this;
  for (auto& [beta, cls] : r.gamma_)
    for (auto& [l, e] : cls) e = -e;
  r.x_ = scaled(x_, -1);
  r.y_ = scaled(y_, -1);
  return r;
}

SymFactor SymFactor::transported(const GroupElement& g) const {
  SymFactor r;
  r.sign_ = through(sign_, g.index);
  for (const auto& [beta, cls] : gamma_) {
    // beta . P(abc, klm) splits into a new (a,b,c)-part and a shift K.
    AbcPart nb{};
    IndexForm k{};
    for (int j = 0; j < 3; ++j) {
      for (int t = 0; t < 3; ++t) nb[t] += beta[j] * g.params[j][t];
      for (int t = 0; t < 4; ++t) k[t] += beta[j] * g.params[j][3 + t];
    }
    std::map<IndexForm, long> moved;
    for (const auto& [l, e] : cls) moved[add(k, through(l, g.index))] += e;
    r.add_class(nb, moved);
  }
  // x^p (1-x)^q under the Moebius map.
  const IndexForm p = through(x_, g.index), q = through(y_, g.index);
  const IndexForm pq = scaled(add(p, q), -1);
  using K = MoebiusTag::Kind;
  switch (g.xmap.kind()) {
    case K::identity:
      r.x_ = p, r.y_ = q;
      break;
    case K::pfaff:  // x/(x-1)
      r.sign_ = add(r.sign_, p), r.x_ = p, r.y_ = pq;
      break;
    case K::reflect:  // 1-x
      r.x_ = q, r.y_ = p;
      break;
    case K::pfaff_inv:  // (x-1)/x
      r.sign_ = add(r.sign_, p), r.x_ = pq, r.y_ = p;
      break;
    case K::invert:  // 1/x
      r.sign_ = add(r.sign_, q), r.x_ = pq, r.y_ = q;
      break;
    case K::invert_shift:  // 1/(1-x)
      r.sign_ = add(r.sign_, q), r.x_ = q, r.y_ = pq;
      break;
  }
  r.normalize();
  return r;
}

RatFunc SymFactor::expand(ShiftTriple s) const {
  Factored num, den;
  auto put = [&](const MultiPoly& p, long e) {
    if (e == 0) return;
    const Factored f = Factored::from_poly(p);
    Factored& side = e > 0 ? num : den;
    for (long i = 0; i < std::labs(e); ++i) side = side * f;
  };
  for (const auto& [beta, cls] : gamma_) {
    std::vector<std::pair<long, long>> pts;
    long low = 0;
    bool first = true;
    for (const auto& [l, e] : cls) {
      const long n = evaluate(l, s);
      pts.emplace_back(n, e);
      low = first ? n : std::min(low, n);
      first = false;
    }
    // Gamma(beta + n) / Gamma(beta + low) = (beta + low)_{n - low}.
    std::map<long, long> linear;
    for (const auto& [n, e] : pts)
      for (long t = low; t < n; ++t) linear[t] += e;
    for (const auto& [t, e] : linear)
      put(MultiPoly::linear(Rational(t), {Rational(beta[0]), Rational(beta[1]), Rational(beta[2]), Rational(0)}), e);
  }
  put(MultiPoly::variable(Var::x), evaluate(x_, s));
  put(MultiPoly::linear(Rational(1), {0, 0, 0, -1}), evaluate(y_, s));
  if (evaluate(sign_, s) % 2 != 0) num.unit = -num.unit;
  return RatFunc::from_factored(std::move(num), std::move(den));
}

std::vector<PochFactor> SymFactor::poch() const {
  std::vector<PochFactor> out;
  for (const auto& [beta, cls] : gamma_) {
    std::vector<IndexForm> ups, downs;
    for (const auto& [l, e] : cls)
      for (long i = 0; i < std::labs(e); ++i) (e > 0 ? ups : downs).push_back(l);
    auto arg = [&](const IndexForm& l) { return ParamForm{beta[0], beta[1], beta[2], l[0], l[1], l[2], l[3]}; };
    for (const IndexForm& up : ups) {
      auto best = std::min_element(downs.begin(), downs.end(), [&](const IndexForm& x, const IndexForm& y) {
        return length_cost(add(up, x, -1)) < length_cost(add(up, y, -1));
      });
      const IndexForm low = *best, d = add(up, low, -1);
      downs.erase(best);
      // Gamma(beta + up) / Gamma(beta + low) = (beta + low)_d = 1 / (beta + up)_{-d}.
      if (negative_leading(d))
        out.push_back({arg(up), scaled(d, -1), true});
      else
        out.push_back({arg(low), d, false});
    }
  }
  std::sort(out.begin(), out.end(), [](const PochFactor& p, const PochFactor& q) {
    return std::tie(p.denominator, p.arg, p.length) < std::tie(q.denominator, q.arg, q.length);
  });
  return out;
}

bool SymFactor::is_one() const { return gamma_.empty() && sign_ == kZero && x_ == kZero && y_ == kZero; }

bool SymFactor::well_formed() const {
  for (const auto& [beta, cls] : gamma_) {
    long lead = 0;
    for (int i : {2, 0, 1})
      if (beta[i] != 0) {
        lead = beta[i];
        break;
      }
    if (lead <= 0 || cls.empty()) return false;
    long total = 0;
    for (const auto& [l, e] : cls) {
      if (e == 0) return false;
      total += e;
    }
    if (total != 0) return false;
  }
  return mod2(sign_) == sign_;
}

std::string SymFactor::to_string() const {
  std::string num, den;
  auto join = [](std::string& s, const std::string& t) { s += (s.empty() ? "" : " ") + t; };
  bool negative = false;
  if (sign_ == IndexForm{0, 0, 0, 1})
    negative = true;
  else if (!(sign_ == kZero))
    join(num, "(-1)^{" + exponent_text(sign_) + "}");
  for (const auto& p : poch()) join(p.denominator ? den : num, poch_text(p));
  if (!(x_ == kZero)) join(num, "x^{" + exponent_text(x_) + "}");
  if (!(y_ == kZero)) join(num, "(1-x)^{" + exponent_text(y_) + "}");
  std::string s = num.empty() ? "1" : num;
  if (!den.empty()) s += " / (" + den + ")";
  return (negative ? "-" : "") + s;
}

std::string SymFactor::to_latex() const {
  auto form = [](const auto& f) { return form_to_string(f); };
  auto poch_latex = [&](const PochFactor& p) {
    const std::string arg = "(" + form(p.arg) + ")";
    if (p.length == kOne) return arg;
    return arg + "_{" + form(p.length) + "}";
  };
  std::string num, den;
  auto join = [](std::string& s, const std::string& t) { s += (s.empty() ? "" : " ") + t; };
  bool negative = false;
  if (sign_ == IndexForm{0, 0, 0, 1})
    negative = true;
  else if (!(sign_ == kZero))
    join(num, "(-1)^{" + form(sign_) + "}");
  for (const auto& p : poch()) join(p.denominator ? den : num, poch_latex(p));
  std::string tail;
  if (!(x_ == kZero)) join(tail, "x^{" + form(x_) + "}");
  if (!(y_ == kZero)) join(tail, "(1 - x)^{" + form(y_) + "}");
  std::string s;
  if (den.empty())
    s = num;
  else
    s = "\\frac{" + (num.empty() ? std::string("1") : num) + "}{" + den + "}";
  if (!tail.empty()) s += (s.empty() ? "" : " ") + tail;
  if (s.empty()) s = "1";
  return (negative ? "- " : "") + s;
}

nlohmann::json SymFactor::to_json() const {
  nlohmann::json poch_list = nlohmann::json::array();
  for (const auto& p : poch())
    poch_list.push_back({{"arg", p.arg}, {"length", p.length}, {"position", p.denominator ? "den" : "num"}});
  return {{"poch", poch_list}, {"sign", sign_}, {"x", x_}, {"one_minus_x", y_}, {"text", to_string()}};
}

RatFunc pochhammer_value(const RatFunc& alpha, long n) {
  RatFunc r(1);
  if (n >= 0) {
    for (long i = 0; i < n; ++i) r *= alpha + RatFunc(i);
    return r;
  }
  for (long i = 1; i <= -n; ++i) r *= alpha - RatFunc(i);
  return r.inverse();
}

// ---------------------------------------------------------------------------
// Factors

namespace {

constexpr std::string_view kBaseQ[] = {
    "S[m + 1 - k - l] P[c + 1|m] P[c|m] X[-m] Y[m - k - l] /P[a + 1|k] /P[b + 1|l] /P[c - a|m - k] /P[c - b|m - l]",
    "- L[a] /L[c - a] Y[2 - l]",
    "P[c + 1|m - 1] P[c - a - b - 1|m + 1 - k - l] /P[c - a|m - k] /P[c - b|m - l]",
    "",
};

constexpr std::string_view kBaseR[] = {
    "S[m - k - l] P[c + 1|m - 1] P[c|m - 1] X[1 - m] Y[m + 1 - k - l] /P[a + 1|k - 1] /P[b + 1|l - 1] /P[c - a|m - k] "
    "/P[c - b|m - l]",
    "Y[-l]",
    "P[c|m] P[c - a - b|m - k - l] /P[c - a|m - k] /P[c - b|m - l]",
    "",
};

std::string group_prefix(Coef c) { return c == Coef::Q ? "s" : "s~"; }

// The base letters a generator label stands for.
std::vector<std::string> base_letters(Coef c, const std::string& letter) {
  const std::string p = group_prefix(c);
  if (letter.size() != p.size() + 1 || letter.compare(0, p.size(), p) != 0)
    throw Error("generator " + letter + " does not belong to the group acting on " + coef_name(c));
  const char d = letter.back();
  auto spell = [&](std::string_view digits) {
    std::vector<std::string> out;
    for (char ch : digits) out.push_back(p + ch);
    return out;
  };
  if (d >= '0' && d <= '3') return {letter};
  if (d == '4') return spell("1313");
  if (d == '5') return spell("213132131");
  throw Error("unknown generator " + letter);
}

std::vector<std::string> flatten(Coef c, const std::vector<std::string>& word) {
  std::vector<std::string> out;
  for (const auto& l : word) {
    const auto b = base_letters(c, l);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

struct LambdaCache {
  std::map<GroupElement, SymFactor> by_element;
};

const LambdaCache& cache(Coef c) {
  static const auto build = [](Coef which) {
    LambdaCache lc;
    for (const auto& e : group_elements(group_of(which))) lc.by_element.emplace(e, lambda_along_word(which, e.word));
    return lc;
  };
  static const LambdaCache q = build(Coef::Q);
  static const LambdaCache r = build(Coef::R);
  return c == Coef::Q ? q : r;
}

const SymFactor& cached_lambda(Coef c, const GroupElement& g) {
  const auto& m = cache(c).by_element;
  const auto it = m.find(g);
  if (it == m.end())
    throw Error("element " + g.action_string() + " is not in " + which_name(group_of(c)));
  return it->second;
}

RatFunc coefficient(Coef c, ShiftTriple s) {
  const QRPair qr = compute_qr(s);
  return c == Coef::Q ? qr.Q : qr.R;
}

// P(g^-1 z) at a fixed shift: the value of (g P)(z).
RatFunc acted(Coef c, const GroupElement& g, ShiftTriple s) {
  const GroupElement gi = inverse(g);
  return coefficient(c, gi.apply(s)).substitute(gi.params_at(s), gi.xmap);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct CorollaryData {
  std::map<std::string, SymFactor> constants;
  std::vector<std::tuple<int, std::string, std::string>> rows;  // index, word, tokens
};

const CorollaryData& corollary_data(Coef c) {
  static const auto load = [](std::string_view text) {
    CorollaryData d;
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::string> defs;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      if (const auto at = line.find(":="); at != std::string::npos) {
        d.constants[trim(line.substr(0, at))] = SymFactor::parse(line.substr(at + 2), d.constants);
        continue;
      }
      const auto b1 = line.find('|'), b2 = line.find('|', b1 + 1);
      if (b1 == std::string::npos || b2 == std::string::npos) throw Error("malformed corollary line: " + line);
      d.rows.emplace_back(std::stoi(line.substr(0, b1)), trim(line.substr(b1 + 1, b2 - b1 - 1)),
                          trim(line.substr(b2 + 1)));
    }
    return d;
  };
  static const CorollaryData q = load(detail::embedded_file("q_corollary.txt"));
  static const CorollaryData r = load(detail::embedded_file("r_corollary.txt"));
  return c == Coef::Q ? q : r;
}

bool expansions_agree(const SymFactor& f, const SymFactor& g) {
  for (ShiftTriple s : corollary_check_shifts())
    if (!(f.expand(s) == g.expand(s))) return false;
  return true;
}

}  // namespace

SymFactor base_lambda(Coef c, int gen) {
  if (gen < 0 || gen > 3) throw Error("base factors exist for generators 0..3");
  return SymFactor::parse(c == Coef::Q ? kBaseQ[gen] : kBaseR[gen]);
}

SymFactor lambda_tau() { return SymFactor::parse("L[c] L[c + 1] /L[a + 1] /L[b + 1] X[-1] Y[-1]"); }

SymFactor cocycle_compose(const SymFactor& lam1, const GroupElement& sig1, const SymFactor& lam2) {
  return lam1 * lam2.transported(inverse(sig1));
}

SymFactor lambda_along_word(Coef c, const std::vector<std::string>& word) {
  SymFactor acc;
  GroupElement at = GroupElement::identity();
  for (const auto& letter : flatten(c, word)) {
    acc = cocycle_compose(acc, at, base_lambda(c, letter.back() - '0'));
    at = compose(at, generator(letter));
  }
  return acc;
}

RatFunc lambda_by_substitution(Coef c, const std::vector<std::string>& word, ShiftTriple shift) {
  RatFunc acc(1);
  GroupElement at = GroupElement::identity();
  for (const auto& letter : flatten(c, word)) {
    const GroupElement back = inverse(at);
    const RatFunc base = base_lambda(c, letter.back() - '0').expand(back.apply(shift));
    acc *= base.substitute(back.params_at(shift), back.xmap);
    at = compose(at, generator(letter));
  }
  return acc;
}

std::pair<SymFactor, RatFunc> lambda_for(Coef c, const GroupElement& element, ShiftTriple shift) {
  const SymFactor& f = cached_lambda(c, element);
  return {f, f.expand(shift)};
}

bool verify_symmetry(Coef c, const GroupElement& element, ShiftTriple shift) {
  const auto [factor, value] = lambda_for(c, element, shift);
  return coefficient(c, shift) == value * acted(c, element, shift);
}

const std::vector<ShiftTriple>& default_sweep_shifts() {
  static const std::vector<ShiftTriple> s = {{0, 0, 0},   {1, 1, 1},  {2, 2, 2},  {1, 0, 0}, {0, 1, 0},
                                             {0, 0, 1},   {-1, -1, -1}, {2, -1, 0}, {-2, 3, 1}, {3, 3, -2}};
  return s;
}

const std::vector<ShiftTriple>& corollary_check_shifts() {
  static const std::vector<ShiftTriple> s = {{1, 2, 3}, {-1, 0, 2}, {2, -2, 1}};
  return s;
}

const std::map<std::string, SymFactor>& corollary_constants(Coef c) { return corollary_data(c).constants; }

std::vector<CorollaryRow> corollary_tables(Coef c) {
  const CorollaryData& d = corollary_data(c);
  std::vector<CorollaryRow> out;
  for (const auto& [index, word, tokens] : d.rows) {
    CorollaryRow row;
    row.index = index;
    row.word = word;
    row.printed = SymFactor::parse(tokens, d.constants);
    row.computed = cached_lambda(c, inverse(element_from_word(word)));
    row.canonical_match = row.printed == row.computed;
    row.expansion_match = expansions_agree(row.printed, row.computed);
    out.push_back(std::move(row));
  }
  return out;
}

bool printed_row_holds(Coef c, const CorollaryRow& row, ShiftTriple shift) {
  // P(sigma z) = (sigma^-1 P)(z).
  const GroupElement sigma = element_from_word(row.word);
  return coefficient(c, shift) == row.printed.expand(shift) * acted(c, inverse(sigma), shift);
}

CorollaryRow partner_row(Coef c, const CorollaryRow& row) {
  const GroupElement s3 = generator(group_prefix(c) + "3");
  CorollaryRow p;
  p.index = row.index;
  p.word = row.word + " " + group_prefix(c) + "3";
  // lambda_{s3} = 1, so the partner factor is the printed one at s3 z: the
  // interchange of (k, a) with (l, b).
  p.printed = row.printed.transported(s3);
  p.computed = cached_lambda(c, inverse(compose(element_from_word(row.word), s3)));
  p.canonical_match = p.printed == p.computed;
  p.expansion_match = expansions_agree(p.printed, p.computed);
  return p;
}

bool vidunas_identity(ShiftTriple s) {
  const RatFunc a = RatFunc::variable(Var::a), b = RatFunc::variable(Var::b), c = RatFunc::variable(Var::c),
                x = RatFunc::variable(Var::x);
  const long sign_exp = s.m + 1 - s.k - s.l;
  RatFunc factor = pochhammer_value(c + 1, s.m - 1) * pochhammer_value(c, s.m + 1) /
                   (pochhammer_value(a + 1, s.k) * pochhammer_value(b + 1, s.l) *
                    pochhammer_value(c - a, s.m - s.k) * pochhammer_value(c - b, s.m - s.l));
  if (sign_exp % 2 != 0) factor = -factor;
  factor *= x.pow(static_cast<int>(-s.m)) * (1 - x).pow(static_cast<int>(s.m - s.k - s.l));
  ParamSubstitution shifted;
  shifted.images[0] = AbcAffine{{1, 0, 0}, s.k};
  shifted.images[1] = AbcAffine{{0, 1, 0}, s.l};
  shifted.images[2] = AbcAffine{{0, 0, 1}, s.m};
  const RatFunc rhs = factor * compute_qr({-s.k, -s.l, -s.m}).Q.substitute(shifted, MoebiusTag());
  return compute_qr(s).Q == rhs;
}

}  // namespace hyp3term
