#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyp3term {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (GMP canonical form, zero is 0/1).
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Serializes as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational: " + s);
  if (q.get_den() == 0) throw Error("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace hyp3term
