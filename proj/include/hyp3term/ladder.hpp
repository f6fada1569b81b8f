#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "hyp3term/ratfunc.hpp"

namespace hyp3term {

/// Integer parameter shift (k, l, m): F(a+k, b+l, c+m; x).
struct ShiftTriple {
  long k = 0, l = 0, m = 0;
  friend auto operator<=>(const ShiftTriple&, const ShiftTriple&) = default;
  std::string to_string() const;
};

/// F(a+k, b+l, c+m) = r F + s F', with F = F(a, b, c; x).
struct BasisRep {
  RatFunc r, s;
  friend bool operator==(const BasisRep&, const BasisRep&) = default;
};

/// F(a+k, b+l, c+m) = Q F(a+1, b+1, c+1) + R F(a, b, c).
struct QRPair {
  RatFunc Q, R;
  friend bool operator==(const QRPair&, const QRPair&) = default;
};

enum class Step { a_plus, a_minus, b_plus, b_minus, c_plus, c_minus };

inline constexpr Step kAllSteps[] = {Step::a_plus, Step::a_minus, Step::b_plus,
                                     Step::b_minus, Step::c_plus,  Step::c_minus};

std::string step_name(Step s);
Step opposite(Step s);
ShiftTriple advance(ShiftTriple at, Step s);

/// Representation of d/dx (r F + s F'), eliminating F'' through the
/// hypergeometric equation.
BasisRep deriv(const BasisRep& rep);

/// Moves a representation of F(a+k, b+l, c+m) one unit step.
BasisRep step(const BasisRep& rep, ShiftTriple at, Step s);

/// Unit steps from (0,0,0) to `target`: all m-steps, then k, then l.
std::vector<Step> canonical_path(ShiftTriple target);

/// Applies `path` starting from F = 1 F + 0 F' at (0,0,0).
BasisRep rep_along(std::span<const Step> path);

/// Canonical-path representation; memoized process-wide by shift, safe for
/// concurrent callers.
BasisRep compute_rep(ShiftTriple shift);

/// Q = s ab/c, R = r for (r, s) = compute_rep(shift).
QRPair compute_qr(ShiftTriple shift);

/// Exact check of R(k,l,m) = c(c+1)/((a+1)(b+1)x(1-x)) Q(k-1,l-1,m-1; a+1,b+1,c+1; x).
bool check_r_eq_qprime(ShiftTriple shift);

/// Number of memoized representations (for diagnostics).
std::size_t memo_size();

}  // namespace hyp3term
