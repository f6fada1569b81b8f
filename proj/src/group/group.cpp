#include "hyp3term/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <tuple>
#include <sstream>

#include "embedded.hpp"

namespace hyp3term {

namespace {

constexpr std::string_view kParamNames = "abcklm";

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

ParamForm lift(const IndexForm& f) { return {0, 0, 0, f[0], f[1], f[2], f[3]}; }

ParamForm add_scaled(ParamForm acc, long s, const ParamForm& f) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * f[i];
  return acc;
}

using Mat3 = std::array<std::array<long, 3>, 3>;

long det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 unimodular_inverse(const Mat3& m) {
  const long d = det3(m);
  if (d != 1 && d != -1) throw Error("group element has a non-unimodular linear part");
  Mat3 inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = d * (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]);
    }
  return inv;
}

Mat3 index_matrix(const GroupElement& g) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = g.index[i][j];
  return m;
}

Mat3 abc_matrix(const GroupElement& g) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = g.params[i][j];
  return m;
}

struct GeneratorSpec {
  std::string_view label;
  std::string_view action;
};

constexpr GeneratorSpec kGenerators[] = {
    {"s0", "-k ; -l ; -m ; a + k ; b + l ; c + m ; x"},
    {"s1", "m - k ; l ; m ; c - a ; b ; c ; x/(x-1)"},
    {"s2", "k ; l ; k + l - m ; a ; b ; a + b + 1 - c ; 1-x"},
    {"s3", "l ; k ; m ; b ; a ; c ; x"},
    {"s4", "m - k ; m - l ; m ; c - a ; c - b ; c ; x"},
    {"s5", "-k ; -l ; -m ; 1 - a ; 1 - b ; 2 - c ; x"},
    {"tau", "k + 1 ; l + 1 ; m + 1 ; a - 1 ; b - 1 ; c - 1 ; x"},
    {"s~0", "2 - k ; 2 - l ; 2 - m ; a + k - 1 ; b + l - 1 ; c + m - 1 ; x"},
    {"s~1", "m + 1 - k ; l ; m ; c - a - 1 ; b ; c ; x/(x-1)"},
    {"s~2", "k ; l ; k + l - m ; a ; b ; a + b + 1 - c ; 1-x"},
    {"s~3", "l ; k ; m ; b ; a ; c ; x"},
    {"s~4", "m + 1 - k ; m + 1 - l ; m ; c - a - 1 ; c - b - 1 ; c ; x"},
    {"s~5", "2 - k ; 2 - l ; 2 - m ; -1 - a ; -1 - b ; -c ; x"},
};

std::string prefix(Which w) { return w == Which::G ? "s" : "s~"; }

}  // namespace

ParamForm parse_param_form(std::string_view text) {
  ParamForm f{};
  std::size_t i = 0;
  bool any = false;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    long sign = 1;
    bool signed_term = false;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      signed_term = true;
      ++i;
      skip();
    }
    if (any && !signed_term) throw Error("missing operator in affine form: " + std::string(text));
    long coef = 1;
    bool digits = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef = coef * 10 + (text[i] - '0');
        ++i;
      }
      digits = true;
    }
    const std::size_t var = i < text.size() ? kParamNames.find(text[i]) : std::string_view::npos;
    if (var != std::string_view::npos) {
      f[var] += sign * coef;
      ++i;
    } else if (digits) {
      f[6] += sign * coef;
    } else {
      throw Error("malformed affine form: " + std::string(text));
    }
    any = true;
    skip();
  }
  if (!any) throw Error("empty affine form");
  return f;
}

IndexForm parse_index_form(std::string_view text) {
  const ParamForm p = parse_param_form(text);
  if (p[0] != 0 || p[1] != 0 || p[2] != 0) throw Error("index form may not involve a, b, c: " + std::string(text));
  return {p[3], p[4], p[5], p[6]};
}

std::string form_to_string(const ParamForm& f) {
  // Blocks (a, b, c), (k, l, m), constant; positive terms lead within a block.
  std::string s;
  auto term = [&](std::size_t i) {
    const long c = f[i];
    const long mag = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    s += i == 6 ? std::to_string(mag) : (mag == 1 ? "" : std::to_string(mag)) + kParamNames[i];
  };
  // A positive constant leads when every other term is negative: "1 - a - k".
  const bool constant_first = f[6] > 0 && std::none_of(f.begin(), f.begin() + 6, [](long v) { return v > 0; });
  if (constant_first) term(6);
  for (std::size_t lo : {0u, 3u, 6u}) {
    if (lo == 6 && constant_first) break;
    const std::size_t hi = lo == 6 ? 7 : lo + 3;
    for (std::size_t i = lo; i < hi; ++i)
      if (f[i] > 0) term(i);
    for (std::size_t i = lo; i < hi; ++i)
      if (f[i] < 0) term(i);
  }
  return s.empty() ? "0" : s;
}

std::string form_to_string(const IndexForm& f) { return form_to_string(lift(f)); }

long evaluate(const IndexForm& f, ShiftTriple s) { return f[0] * s.k + f[1] * s.l + f[2] * s.m + f[3]; }

GroupElement GroupElement::identity() {
  GroupElement g;
  g.index = {IndexForm{1, 0, 0, 0}, IndexForm{0, 1, 0, 0}, IndexForm{0, 0, 1, 0}};
  g.params = {ParamForm{1, 0, 0, 0, 0, 0, 0}, ParamForm{0, 1, 0, 0, 0, 0, 0}, ParamForm{0, 0, 1, 0, 0, 0, 0}};
  return g;
}

GroupElement GroupElement::from_action(std::string_view action) {
  const auto parts = split(action, ';');
  if (parts.size() != 7) throw Error("an action has seven components: " + std::string(action));
  GroupElement g;
  for (int i = 0; i < 3; ++i) g.index[i] = parse_index_form(parts[i]);
  for (int i = 0; i < 3; ++i) g.params[i] = parse_param_form(parts[3 + i]);
  g.xmap = MoebiusTag::parse(parts[6]);
  (void)unimodular_inverse(index_matrix(g));
  (void)unimodular_inverse(abc_matrix(g));
  return g;
}

ShiftTriple GroupElement::apply(ShiftTriple s) const {
  return {evaluate(index[0], s), evaluate(index[1], s), evaluate(index[2], s)};
}

ParamSubstitution GroupElement::params_at(ShiftTriple s) const {
  ParamSubstitution p;
  for (int i = 0; i < 3; ++i) {
    const ParamForm& f = params[i];
    p.images[i] = AbcAffine{{f[0], f[1], f[2]}, f[3] * s.k + f[4] * s.l + f[5] * s.m + f[6]};
  }
  return p;
}

bool GroupElement::is_identity() const { return *this == GroupElement::identity(); }

std::string GroupElement::action_string() const {
  std::string s;
  for (const auto& f : index) s += form_to_string(f) + " ; ";
  for (const auto& f : params) s += form_to_string(f) + " ; ";
  return s + xmap.to_string();
}

std::string GroupElement::word_string() const {
  if (word.empty()) return "id";
  std::string s;
  for (const auto& w : word) s += (s.empty() ? "" : " ") + w;
  return s;
}

nlohmann::json GroupElement::to_json() const {
  return {{"index", index}, {"params", params}, {"xmap", xmap.to_string()}, {"word", word}};
}

GroupElement GroupElement::from_json(const nlohmann::json& j) {
  GroupElement g;
  g.index = j.at("index").get<std::array<IndexForm, 3>>();
  g.params = j.at("params").get<std::array<ParamForm, 3>>();
  g.xmap = MoebiusTag::parse(j.at("xmap").get<std::string>());
  g.word = j.at("word").get<std::vector<std::string>>();
  return g;
}

bool operator<(const GroupElement& g, const GroupElement& h) {
  return std::tie(g.index, g.params) < std::tie(h.index, h.params) ||
         (std::tie(g.index, g.params) == std::tie(h.index, h.params) && g.xmap.index() < h.xmap.index());
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  GroupElement out;
  for (int i = 0; i < 3; ++i) {
    IndexForm f{0, 0, 0, g.index[i][3]};
    for (int j = 0; j < 3; ++j)
      for (int t = 0; t < 4; ++t) f[t] += g.index[i][j] * h.index[j][t];
    out.index[i] = f;
  }
  for (int i = 0; i < 3; ++i) {
    ParamForm f{0, 0, 0, 0, 0, 0, g.params[i][6]};
    for (int j = 0; j < 3; ++j) {
      f = add_scaled(f, g.params[i][j], h.params[j]);
      f = add_scaled(f, g.params[i][3 + j], lift(h.index[j]));
    }
    out.params[i] = f;
  }
  out.xmap = g.xmap.compose(h.xmap);
  out.word = g.word;
  out.word.insert(out.word.end(), h.word.begin(), h.word.end());
  return out;
}

GroupElement inverse(const GroupElement& g) {
  // klm' = M klm + t and abc' = A abc + B klm + s.
  const Mat3 mi = unimodular_inverse(index_matrix(g));
  const Mat3 ai = unimodular_inverse(abc_matrix(g));
  GroupElement out;
  for (int i = 0; i < 3; ++i) {
    IndexForm f{};
    for (int j = 0; j < 3; ++j) {
      f[j] = mi[i][j];
      f[3] -= mi[i][j] * g.index[j][3];
    }
    out.index[i] = f;
  }
  for (int i = 0; i < 3; ++i) {
    // abc = A^-1 (abc' - B klm - s), with klm written through out.index.
    ParamForm f{};
    for (int j = 0; j < 3; ++j) {
      const long w = ai[i][j];
      if (w == 0) continue;
      ParamForm row{};
      row[j] = 1;
      row[6] = -g.params[j][6];
      for (int t = 0; t < 3; ++t) row = add_scaled(row, -g.params[j][3 + t], lift(out.index[t]));
      f = add_scaled(f, w, row);
    }
    out.params[i] = f;
  }
  out.xmap = g.xmap.inverse();
  for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) out.word.push_back(*it == "tau" ? "tau^-1" : *it);
  return out;
}

const std::vector<std::string>& generator_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> out;
    for (const auto& g : kGenerators) out.emplace_back(g.label);
    return out;
  }();
  return labels;
}

GroupElement generator(std::string_view label) {
  if (label == "id") return GroupElement::identity();
  if (label == "tau^-1") {
    GroupElement t = inverse(generator("tau"));
    t.word = {"tau^-1"};
    return t;
  }
  for (const auto& g : kGenerators) {
    if (g.label != label) continue;
    GroupElement e = GroupElement::from_action(g.action);
    e.word = {std::string(label)};
    return e;
  }
  throw Error("unknown generator label: " + std::string(label));
}

std::vector<std::string> parse_word(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '*' || ch == '.') {
      ++i;
    } else if (text.substr(i, 6) == "tau^-1") {
      out.emplace_back("tau^-1");
      i += 6;
    } else if (text.substr(i, 3) == "tau") {
      out.emplace_back("tau");
      i += 3;
    } else if (text.substr(i, 2) == "id") {
      i += 2;
    } else if (ch == 's') {
      std::size_t j = i + 1;
      const bool tilde = j < text.size() && text[j] == '~';
      if (tilde) ++j;
      if (j >= text.size() || text[j] < '0' || text[j] > '5')
        throw Error("bad generator in word: " + std::string(text));
      out.push_back(std::string(tilde ? "s~" : "s") + text[j]);
      i = j + 1;
    } else {
      throw Error("unexpected symbol in word: " + std::string(text));
    }
  }
  return out;
}

GroupElement element_from_word(const std::vector<std::string>& letters) {
  GroupElement g = GroupElement::identity();
  for (const auto& l : letters) g = compose(g, generator(l));
  return g;
}

GroupElement element_from_word(std::string_view text) { return element_from_word(parse_word(text)); }

std::vector<GroupElement> enumerate(const std::vector<GroupElement>& generators, std::size_t cap) {
  std::vector<GroupElement> out{GroupElement::identity()};
  std::set<GroupElement> seen{out.front()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators) {
      GroupElement next = compose(out[head], g);
      if (seen.insert(next).second) {
        out.push_back(std::move(next));
        if (out.size() > cap) throw Error("group enumeration exceeded " + std::to_string(cap) + " elements");
      }
    }
  }
  return out;
}

std::string which_name(Which w) { return w == Which::G ? "G" : "Gt"; }

std::vector<GroupElement> base_generators(Which w) {
  std::vector<GroupElement> out;
  for (int i = 0; i < 4; ++i) out.push_back(generator(prefix(w) + std::to_string(i)));
  return out;
}

const std::vector<GroupElement>& group_elements(Which w) {
  static const std::vector<GroupElement> g = enumerate(base_generators(Which::G));
  static const std::vector<GroupElement> gt = enumerate(base_generators(Which::Gt));
  return w == Which::G ? g : gt;
}

std::optional<GroupElement> find_in_group(Which w, const GroupElement& g) {
  static const auto index = [](Which which) {
    std::map<GroupElement, std::size_t> m;
    const auto& els = group_elements(which);
    for (std::size_t i = 0; i < els.size(); ++i) m.emplace(els[i], i);
    return m;
  };
  static const std::map<GroupElement, std::size_t> ig = index(Which::G);
  static const std::map<GroupElement, std::size_t> igt = index(Which::Gt);
  const auto& m = w == Which::G ? ig : igt;
  const auto it = m.find(g);
  if (it == m.end()) return std::nullopt;
  return group_elements(w)[it->second];
}

bool StructureReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

StructureReport verify_structure(Which w) {
  StructureReport rep;
  const std::string p = prefix(w);
  auto word = [&](std::string_view digits) {
    std::vector<std::string> letters;
    for (char d : digits) letters.push_back(p + d);
    return element_from_word(letters);
  };
  auto relation = [&](std::string_view lhs, std::string_view rhs) {
    const GroupElement l = word(lhs), r = rhs.empty() ? GroupElement::identity() : word(rhs);
    const std::string name = p + "_" + std::string(lhs) + " = " + (rhs.empty() ? "Id" : p + "_" + std::string(rhs));
    rep.checks.push_back({name, l == r, l == r ? "" : l.action_string() + " vs " + r.action_string()});
  };
  auto order = [&](const std::string& name, std::string_view gens, std::size_t expected) {
    std::vector<GroupElement> g;
    for (char d : gens) g.push_back(generator(p + d));
    const std::size_t n = enumerate(g).size();
    rep.checks.push_back({"|" + name + "| = " + std::to_string(expected), n == expected, "order " + std::to_string(n)});
    return n;
  };

  for (char i : std::string_view("012345")) relation(std::string{i, i}, "");
  for (char i : std::string_view("123")) relation(std::string{'0', i}, std::string{i, '0'});
  relation("13", "341");
  for (char i : std::string_view("45")) relation(std::string{'1', i}, std::string{i, '1'});
  for (char i : std::string_view("35")) relation(std::string{'2', i}, std::string{i, '2'});
  relation("24", "3452");
  relation("12", "2121");
  relation("34", "43");
  relation("35", "53");
  relation("45", "54");
  // The printed s4 and s5 agree with their defining words.
  rep.checks.push_back({p + "_4 = " + p + "_1313", generator(p + "4") == word("1313"), ""});
  rep.checks.push_back({p + "_5 = " + p + "_213132131", generator(p + "5") == word("213132131"), ""});

  order("N", "345", 8);
  order("H", "12", 6);
  {
    std::vector<GroupElement> n{generator(p + "3"), generator(p + "4"), generator(p + "5")};
    std::vector<GroupElement> h{generator(p + "1"), generator(p + "2")};
    const auto ne = enumerate(n), he = enumerate(h);
    std::set<GroupElement> ns(ne.begin(), ne.end());
    std::size_t common = 0;
    bool h_moves_x = true, n_fixes_x = true;
    for (const auto& e : he) {
      if (ns.count(e)) ++common;
      if (!e.is_identity() && e.xmap.is_identity()) h_moves_x = false;
    }
    for (const auto& e : ne)
      if (!e.xmap.is_identity()) n_fixes_x = false;
    rep.checks.push_back({"H and N meet only in Id", common == 1, std::to_string(common) + " common elements"});
    rep.checks.push_back({"non-identity elements of H move x", h_moves_x, ""});
    rep.checks.push_back({"elements of N fix x", n_fixes_x, ""});
  }

  const auto& els = group_elements(w);
  rep.order = els.size();
  rep.checks.push_back({"order = 96", els.size() == 96, "order " + std::to_string(els.size())});
  bool unimodular = true;
  for (const auto& e : els) {
    const long di = det3(index_matrix(e)), da = det3(abc_matrix(e));
    if ((di != 1 && di != -1) || (da != 1 && da != -1)) unimodular = false;
  }
  rep.checks.push_back({"every element is unimodular", unimodular, ""});

  // Conjugation by tau carries G onto G~ bijectively, generator by generator.
  const GroupElement tau = generator("tau"), tau_inv = inverse(tau);
  bool printed = true;
  for (int i = 0; i <= 5; ++i)
    printed = printed && compose(compose(tau, generator("s" + std::to_string(i))), tau_inv) ==
                             generator("s~" + std::to_string(i));
  rep.checks.push_back({"s~i = tau s_i tau^-1 (i = 0..5)", printed, ""});
  std::set<GroupElement> image;
  for (const auto& e : group_elements(Which::G)) image.insert(compose(compose(tau, e), tau_inv));
  const std::set<GroupElement> gt(group_elements(Which::Gt).begin(), group_elements(Which::Gt).end());
  const bool bijective = image.size() == 96 && image == gt;
  rep.checks.push_back({"conjugation by tau is a bijection G -> G~", bijective,
                        std::to_string(image.size()) + " distinct images"});
  return rep;
}

const std::vector<TableRow>& golden_group_table(Which w) {
  static const auto parse = [](std::string_view text) {
    std::vector<TableRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const auto cols = split(line, '|');
      if (cols.size() != 4) throw Error("malformed group table line: " + line);
      rows.push_back({std::stoi(cols[0]), cols[1], cols[2], cols[3]});
    }
    return rows;
  };
  static const std::vector<TableRow> g = parse(detail::embedded_file("g_table.txt"));
  static const std::vector<TableRow> gt = parse(detail::embedded_file("gt_table.txt"));
  return w == Which::G ? g : gt;
}

TableReport golden_table_check(Which w) {
  TableReport rep;
  const GroupElement s3 = generator(prefix(w) + "3");
  std::set<GroupElement> covered;
  for (const auto& row : golden_group_table(w)) {
    ++rep.rows;
    const GroupElement by_word = element_from_word(row.word);
    const GroupElement printed = GroupElement::from_action(row.action);
    if (!(by_word == printed))
      rep.discrepancies.push_back({row.index, "action of " + row.word, row.action, by_word.action_string()});
    const GroupElement partner = element_from_word(row.word_times_s3);
    const GroupElement expected = compose(by_word, s3);
    if (!(partner == expected))
      rep.discrepancies.push_back(
          {row.index, "partner word " + row.word_times_s3, partner.action_string(), expected.action_string()});
    covered.insert(by_word);
    covered.insert(partner);
  }
  if (covered.size() != 96)
    rep.discrepancies.push_back(
        {0, "rows and partners cover the group", "96 elements", std::to_string(covered.size()) + " elements"});
  return rep;
}

}  // namespace hyp3term
