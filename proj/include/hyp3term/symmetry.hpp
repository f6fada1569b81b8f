#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyp3term/group.hpp"
#include "hyp3term/ladder.hpp"

namespace hyp3term {

/// Which coefficient of the three-term relation a factor belongs to. Q carries
/// symmetries under G, R under G~.
enum class Coef { Q, R };
std::string coef_name(Coef c);
Which group_of(Coef c);

/// (arg)_length in the numerator or denominator, as displayed.
struct PochFactor {
  ParamForm arg{};
  IndexForm length{};
  bool denominator = false;
  friend auto operator<=>(const PochFactor&, const PochFactor&) = default;
};

/// prod (alpha_i)_{n_i} (-1)^s x^p (1-x)^q with exponents affine in (k, l, m).
///
/// Internally every Pochhammer is a ratio of Gamma functions, so the factor is
/// stored as prod Gamma(beta + L)^e grouped by the (a, b, c)-part beta of the
/// argument (with k, l, m and constants in L). Each beta is oriented so that
/// its first nonzero coefficient in the order c, a, b is positive, using
/// (alpha)_n = (-1)^n (1 - alpha - n)_n. Within a class the exponents sum to
/// zero. This representation is canonical: rewrites such as
/// (alpha)_{m+n} = (alpha)_m (alpha + m)_n do not change it.
class SymFactor {
 public:
  SymFactor() = default;
  static SymFactor pochhammer(const ParamForm& arg, const IndexForm& length, long exponent = 1);
  /// (arg)_1 = arg.
  static SymFactor linear(const ParamForm& arg, long exponent = 1);
  static SymFactor sign(const IndexForm& e);
  static SymFactor x_power(const IndexForm& e);
  static SymFactor one_minus_x_power(const IndexForm& e);
  /// prod Gamma(arg_i)^{e_i}; throws unless the exponents sharing an
  /// (a, b, c)-part cancel, which is what makes the product a Pochhammer ratio.
  static SymFactor gamma_monomial(const std::vector<std::pair<ParamForm, long>>& gammas);
  /// Token form used by the corollary data files:
  ///   P[arg|len]  L[arg]  S[e]  X[e]  Y[e]  -  and names such as A2,
  /// each optionally prefixed by '/' for the denominator.
  static SymFactor parse(std::string_view tokens, const std::map<std::string, SymFactor>& named = {});

  friend SymFactor operator*(const SymFactor& f, const SymFactor& g);
  SymFactor inverse() const;
  /// z -> f(g z).
  SymFactor transported(const GroupElement& g) const;

  /// Value at a fixed shift.
  RatFunc expand(ShiftTriple s) const;

  /// Display form: Pochhammers sorted by (position, arg, length).
  std::vector<PochFactor> poch() const;
  const IndexForm& sign_exp() const { return sign_; }
  const IndexForm& x_exp() const { return x_; }
  const IndexForm& one_minus_x_exp() const { return y_; }
  bool is_one() const;
  /// Internal invariants (orientation, zero class sums, sign mod 2).
  bool well_formed() const;

  std::string to_string() const;
  std::string to_latex() const;
  nlohmann::json to_json() const;

  friend bool operator==(const SymFactor&, const SymFactor&) = default;

 private:
  using AbcPart = std::array<long, 3>;
  void add_class(const AbcPart& beta, const std::map<IndexForm, long>& entries);
  void normalize();

  std::map<AbcPart, std::map<IndexForm, long>> gamma_;
  IndexForm sign_{}, x_{}, y_{};
};

/// (alpha)_n for integer n, with (alpha)_{-n} = 1/(alpha - n)_n.
RatFunc pochhammer_value(const RatFunc& alpha, long n);

/// The printed factor for generator 0..3 (s0..s3 for Q, s~0..s~3 for R).
SymFactor base_lambda(Coef c, int gen);
/// lambda_tau = c(c+1)/((a+1)(b+1)x(1-x)), from R = lambda_tau (tau Q).
SymFactor lambda_tau();

/// lambda_{sig1 o sig2} = lam1 * (z -> lam2(sig1^-1 z)).
SymFactor cocycle_compose(const SymFactor& lam1, const GroupElement& sig1, const SymFactor& lam2);

/// Cocycle product along a word over the generators of group_of(c); s4, s5
/// and their tilde forms expand to their defining words.
SymFactor lambda_along_word(Coef c, const std::vector<std::string>& word);

/// The same product built from RatFunc substitution at a fixed shift,
/// independent of SymFactor transport.
RatFunc lambda_by_substitution(Coef c, const std::vector<std::string>& word, ShiftTriple shift);

/// Factor for an element of group_of(c), structured and expanded at `shift`.
/// Throws if the element is not in that group.
std::pair<SymFactor, RatFunc> lambda_for(Coef c, const GroupElement& element, ShiftTriple shift);

/// P(z) == lambda(z) P(element^-1 z) exactly, with P computed by the ladder.
bool verify_symmetry(Coef c, const GroupElement& element, ShiftTriple shift);

/// The ten shifts used for the symmetry sweep.
const std::vector<ShiftTriple>& default_sweep_shifts();

struct CorollaryRow {
  int index = 0;
  std::string word;
  SymFactor printed;
  SymFactor computed;
  bool canonical_match = false;
  bool expansion_match = false;
};

/// Named constants (A2..A6 or B2..B6) from the checked-in transcription.
const std::map<std::string, SymFactor>& corollary_constants(Coef c);

/// Each printed row reads P(z) = factor P(sigma z), so the computed factor
/// is lambda of sigma^-1. Both forms are compared canonically and by
/// expansion at three shifts.
std::vector<CorollaryRow> corollary_tables(Coef c);
/// Shifts used for expansion comparison of corollary rows.
const std::vector<ShiftTriple>& corollary_check_shifts();

/// Q(z) = printed(z) Q(sigma z) with both sides from the ladder; an
/// independent reproduction of a printed row.
bool printed_row_holds(Coef c, const CorollaryRow& row, ShiftTriple shift);

/// Row for sigma sigma3 (the interchange partner of a printed row).
CorollaryRow partner_row(Coef c, const CorollaryRow& row);

/// Q(k,l,m; a,b,c; x) = (-1)^{m+1-k-l} (c+1)_{m-1} (c)_{m+1} /
///   ((a+1)_k (b+1)_l (c-a)_{m-k} (c-b)_{m-l}) x^{-m} (1-x)^{m-k-l}
///   Q(-k,-l,-m; a+k, b+l, c+m; x).
bool vidunas_identity(ShiftTriple shift);

}  // namespace hyp3term
