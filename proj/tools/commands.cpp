#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <sstream>

#include "hyp3term/group.hpp"
#include "hyp3term/symmetry.hpp"
#include "suites.hpp"

namespace hyp3term::cli {

namespace {

constexpr int kSchema = 1;

// Reported as exit code 2.
struct UsageError : Error {
  using Error::Error;
};

nlohmann::json shift_json(ShiftTriple s) { return {s.k, s.l, s.m}; }

struct ShiftArgs {
  long k = 0, l = 0, m = 0;
  ShiftTriple triple() const { return {k, l, m}; }
};

void add_shift_options(CLI::App* app, ShiftArgs& s) {
  app->add_option("-k", s.k, "shift of a")->allow_extra_args(false);
  app->add_option("-l", s.l, "shift of b")->allow_extra_args(false);
  app->add_option("-m", s.m, "shift of c")->allow_extra_args(false);
}

// "9", "2,9,17", "1-48", "3-5,9".
std::vector<int> parse_rows(const std::string& spec) {
  std::vector<int> out;
  std::stringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) throw UsageError("empty row in range '" + spec + "'");
    const auto dash = part.find('-');
    int lo = 0, hi = 0;
    try {
      std::size_t used = 0;
      lo = std::stoi(part.substr(0, dash), &used);
      if (used != (dash == std::string::npos ? part.size() : dash)) throw std::invalid_argument(part);
      hi = lo;
      if (dash != std::string::npos) {
        hi = std::stoi(part.substr(dash + 1), &used);
        if (used != part.size() - dash - 1) throw std::invalid_argument(part);
      }
    } catch (const std::logic_error&) {
      throw UsageError("malformed row range '" + spec + "'");
    }
    if (lo < 1 || hi > 48 || lo > hi) throw UsageError("row range must lie within 1..48: '" + spec + "'");
    for (int r = lo; r <= hi; ++r) out.push_back(r);
  }
  if (out.empty()) throw UsageError("empty row range");
  return out;
}

int cmd_qr(const ShiftArgs& s, const std::string& format, std::ostream& out) {
  const QRPair qr = compute_qr(s.triple());
  if (format == "json") {
    out << nlohmann::json{{"schema", kSchema},
                          {"shift", shift_json(s.triple())},
                          {"Q", qr.Q.to_json()},
                          {"R", qr.R.to_json()},
                          {"Q_text", qr.Q.to_string()},
                          {"R_text", qr.R.to_string()}}
               .dump(2)
        << "\n";
  } else if (format == "latex") {
    out << "Q = " << qr.Q.to_latex() << "\nR = " << qr.R.to_latex() << "\n";
  } else {
    out << "Q = " << qr.Q.to_string() << "\nR = " << qr.R.to_string() << "\n";
  }
  return 0;
}

Which parse_which(const std::string& w) { return w == "G" ? Which::G : Which::Gt; }

GroupElement word_element(const std::string& word) {
  try {
    return element_from_word(word);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int cmd_group(const std::string& which, const std::string& action, const std::string& word, bool strict,
              const std::string& format, std::ostream& out) {
  const Which w = parse_which(which);
  if (action == "list") {
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& e : group_elements(w)) elems.push_back(e.to_json());
    out << nlohmann::json{{"schema", kSchema}, {"group", which_name(w)}, {"order", elems.size()}, {"elements", elems}}
               .dump(1)
        << "\n";
    return 0;
  }
  if (action == "element") {
    if (word.empty()) throw UsageError("group element needs a word");
    const GroupElement g = word_element(word);
    if (format == "json") {
      nlohmann::json j = g.to_json();
      j["schema"] = kSchema;
      j["in_group"] = find_in_group(w, g).has_value();
      out << j.dump(2) << "\n";
    } else {
      out << g.action_string() << "\n";
    }
    return 0;
  }
  const StructureReport rep = verify_structure(w);
  const TableReport tab = golden_table_check(w);
  const bool ok = rep.all_pass() && (!strict || tab.discrepancies.empty());
  if (format == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    nlohmann::json disc = nlohmann::json::array();
    for (const auto& d : tab.discrepancies)
      disc.push_back({{"row", d.row}, {"what", d.what}, {"printed", d.printed}, {"computed", d.computed}});
    out << nlohmann::json{{"schema", kSchema},     {"group", which_name(w)}, {"order", rep.order},
                          {"checks", checks},      {"table_rows", tab.rows}, {"discrepancies", disc},
                          {"strict_tables", strict}, {"pass", ok}}
               .dump(2)
        << "\n";
  } else {
    out << "order=" << rep.order << ", relations: " << (rep.all_pass() ? "all pass" : "FAIL") << "\n";
    for (const auto& c : rep.checks)
      out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << (c.detail.empty() ? "" : "  " + c.detail)
          << "\n";
    out << "table rows=" << tab.rows << ", warnings=" << tab.discrepancies.size() << "\n";
    for (const auto& d : tab.discrepancies)
      out << "  row " << d.row << " " << d.what << ": printed " << d.printed << ", computed " << d.computed << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_lambda(const std::string& which, const std::string& word, const ShiftArgs& s, bool structured,
               const std::string& format, std::ostream& out) {
  const Coef co = which == "Q" ? Coef::Q : Coef::R;
  const GroupElement g = word_element(word);
  if (!find_in_group(group_of(co), g))
    throw UsageError("'" + word + "' is not an element of " + which_name(group_of(co)));
  const auto [factor, value] = lambda_for(co, g, s.triple());
  if (format == "json") {
    out << nlohmann::json{{"schema", kSchema},         {"coefficient", which},   {"word", word},
                          {"shift", shift_json(s.triple())}, {"factor", factor.to_json()},
                          {"value", value.to_json()},  {"value_text", value.to_string()}}
               .dump(2)
        << "\n";
  } else if (format == "latex") {
    if (structured) out << factor.to_latex() << "\n";
    out << value.to_latex() << "\n";
  } else {
    if (structured) out << factor.to_string() << "\n";
    out << value.to_string() << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
  SuiteResult r = run_suite(suite, cfg);
  nlohmann::json report = {{"schema", kSchema},
                           {"config",
                            {{"seed", cfg.seed},
                             {"samples", cfg.samples},
                             {"precision", cfg.precision},
                             {"shifts", cfg.shift_set},
                             {"strict_tables", cfg.strict_tables}}}};
  for (auto& [k, v] : r.report.items()) report[k] = v;
  out << report.dump(2) << "\n";
  return r.pass ? 0 : 1;
}

int cmd_tables(const std::string& which, const std::string& rows, bool with_sigma3, const std::string& format,
               std::ostream& out) {
  const Coef co = which == "q96" ? Coef::Q : Coef::R;
  const std::vector<int> wanted = parse_rows(rows);
  const auto all = corollary_tables(co);
  std::vector<CorollaryRow> emitted;
  for (int r : wanted) emitted.push_back(all[r - 1]);
  if (with_sigma3)
    for (int r : wanted) emitted.push_back(partner_row(co, all[r - 1]));
  const std::size_t n_base = wanted.size();
  auto label = [&](std::size_t i) {
    return std::to_string(emitted[i].index) + (i >= n_base ? "'" : "");
  };
  if (format == "json") {
    nlohmann::json rowsj = nlohmann::json::array();
    for (std::size_t i = 0; i < emitted.size(); ++i) {
      const auto& r = emitted[i];
      rowsj.push_back({{"row", r.index},
                       {"interchange", i >= n_base},
                       {"word", r.word},
                       {"factor", r.computed.to_json()},
                       {"matches_printed", r.canonical_match && r.expansion_match}});
    }
    out << nlohmann::json{{"schema", kSchema}, {"table", which}, {"rows", rowsj}}.dump(2) << "\n";
  } else if (format == "latex") {
    for (std::size_t i = 0; i < emitted.size(); ++i)
      out << "(" << label(i) << ") \\quad " << emitted[i].computed.to_latex() << " \\, " << coef_name(co)
          << "(\\sigma z), \\qquad \\sigma = " << emitted[i].word << "\n";
  } else {
    for (std::size_t i = 0; i < emitted.size(); ++i)
      out << "(" << label(i) << ") " << emitted[i].word << " | " << emitted[i].computed.to_string()
          << (emitted[i].canonical_match && emitted[i].expansion_match ? "" : "   [differs from printed]") << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-term relations of the Gauss hypergeometric function and their symmetries", "hyp3term"};
  app.require_subcommand(1);
  std::string format = "text";
  const std::vector<std::string> formats = {"json", "latex", "text"};

  ShiftArgs shift;
  auto* qr = app.add_subcommand("qr", "Q and R for a shift (k, l, m)");
  add_shift_options(qr, shift);
  qr->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string which, action, word;
  bool strict = false;
  auto* group = app.add_subcommand("group", "the 96-element groups G and Gt");
  group->add_option("which", which)->required()->check(CLI::IsMember({"G", "Gt"}));
  group->add_option("action", action)->required()->check(CLI::IsMember({"list", "verify", "element"}));
  group->add_option("word", word, "word for 'element', e.g. s1s3s1s3");
  group->add_flag("--strict-tables", strict, "treat golden-table discrepancies as failures");
  group->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  std::string coef, lword;
  bool structured = false;
  ShiftArgs lshift;
  auto* lambda = app.add_subcommand("lambda", "symmetry factor of Q (over G) or R (over Gt)");
  lambda->add_option("which", coef)->required()->check(CLI::IsMember({"Q", "R"}));
  lambda->add_option("word", lword)->required();
  add_shift_options(lambda, lshift);
  lambda->add_flag("--structured", structured, "print the Pochhammer form before its value");
  lambda->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string suite;
  RunConfig cfg;
  auto* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(kSuites));
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  verify->add_option("--precision", cfg.precision, "decimal digits")
      ->check(CLI::Range(30, 100000));
  verify->add_option("--shifts", cfg.shift_set)->check(CLI::IsMember({"default10", "default20"}));
  verify->add_flag("--strict-tables", cfg.strict_tables);

  std::string table, rows = "1-48";
  bool with_sigma3 = false;
  auto* tables = app.add_subcommand("tables", "regenerate the 48-row corollary tables");
  tables->add_option("which", table)->required()->check(CLI::IsMember({"q96", "r96"}));
  tables->add_option("--rows", rows, "e.g. 9, 2,9,17 or 1-48");
  tables->add_flag("--with-sigma3", with_sigma3, "also emit the 48 interchanged rows");
  tables->add_option("--format", format)->check(CLI::IsMember(formats));

  // Default-precision override; an explicit --precision still wins.
  if (const char* env = std::getenv("HYP3TERM_PRECISION")) {
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(env, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || p < 30 || p > 100000) {
      err << "error: HYP3TERM_PRECISION must be an integer in [30, 100000]\n";
      return 2;
    }
    cfg.precision = p;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*qr) return cmd_qr(shift, format, out);
    if (*group) return cmd_group(which, action, word, strict, format, out);
    if (*lambda) return cmd_lambda(coef, lword, lshift, structured, format, out);
    if (*verify) return cmd_verify(suite, cfg, out);
    if (*tables) return cmd_tables(table, rows, with_sigma3, format, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hyp3term::cli
