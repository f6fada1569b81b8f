#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyp3term/ladder.hpp"
#include "hyp3term/moebius.hpp"
#include "hyp3term/ratfunc.hpp"

namespace hyp3term {

/// Integer affine form over (k, l, m, 1).
using IndexForm = std::array<long, 4>;
/// Integer affine form over (a, b, c, k, l, m, 1).
using ParamForm = std::array<long, 7>;

/// Parses a sum of integer multiples of a, b, c, k, l, m and constants,
/// e.g. "b + 1 - c + l - m" or "-2k".
ParamForm parse_param_form(std::string_view text);
/// As parse_param_form, rejecting any a, b or c.
IndexForm parse_index_form(std::string_view text);
std::string form_to_string(const ParamForm& f);
std::string form_to_string(const IndexForm& f);
long evaluate(const IndexForm& f, ShiftTriple s);

/// A transformation (k,l,m; a,b,c; x) -> (I(klm); P(abc, klm); mu(x)). Equality
/// ignores the word, which only records one way of writing the element.
struct GroupElement {
  std::array<IndexForm, 3> index;
  std::array<ParamForm, 3> params;
  MoebiusTag xmap;
  std::vector<std::string> word;

  static GroupElement identity();
  /// From the printed action "k' ; l' ; m' ; a' ; b' ; c' ; x'".
  static GroupElement from_action(std::string_view action);

  ShiftTriple apply(ShiftTriple s) const;
  /// Parameter images at a fixed shift, ready for RatFunc::substitute.
  ParamSubstitution params_at(ShiftTriple s) const;
  bool is_identity() const;

  std::string action_string() const;
  std::string word_string() const;
  nlohmann::json to_json() const;
  static GroupElement from_json(const nlohmann::json& j);

  friend bool operator==(const GroupElement& g, const GroupElement& h) {
    return g.index == h.index && g.params == h.params && g.xmap == h.xmap;
  }
  /// Arbitrary total order on actions, for use as a map key.
  friend bool operator<(const GroupElement& g, const GroupElement& h);
};

/// (g o h)(z) = g(h(z)); the word is g's followed by h's.
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Labels s0..s5, s~0..s~5, tau.
GroupElement generator(std::string_view label);
const std::vector<std::string>& generator_labels();

/// Parses a word such as "s1s3s1s3", "s~2 s~1" or "id"; the rightmost
/// letter acts first.
std::vector<std::string> parse_word(std::string_view text);
GroupElement element_from_word(std::string_view text);
GroupElement element_from_word(const std::vector<std::string>& letters);

/// Breadth-first closure; each element carries its first-found word.
/// Throws once more than `cap` elements appear.
std::vector<GroupElement> enumerate(const std::vector<GroupElement>& generators, std::size_t cap = 10000);

enum class Which { G, Gt };
std::string which_name(Which w);
const std::vector<GroupElement>& group_elements(Which w);
/// The element of group `w` with the same action, if any.
std::optional<GroupElement> find_in_group(Which w, const GroupElement& g);

/// Generators s0..s3 or s~0..s~3.
std::vector<GroupElement> base_generators(Which w);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StructureReport {
  std::vector<CheckLine> checks;
  std::size_t order = 0;
  bool all_pass() const;
};

/// Relations of the structure proposition for G or G~, the orders of N, H,
/// the whole group, and the conjugation bijection between G and G~.
StructureReport verify_structure(Which w);

struct TableRow {
  int index = 0;
  std::string word;
  std::string action;
  std::string word_times_s3;
};

const std::vector<TableRow>& golden_group_table(Which w);

struct TableDiscrepancy {
  int row = 0;
  std::string what;
  std::string printed;
  std::string computed;
};

struct TableReport {
  std::size_t rows = 0;
  std::vector<TableDiscrepancy> discrepancies;
};

TableReport golden_table_check(Which w);

}  // namespace hyp3term
