#pragma once

#include <array>
#include <string>
#include <string_view>

namespace hyp3term {

/// One of the six anharmonic maps x, x/(x-1), 1-x, (x-1)/x, 1/x, 1/(1-x).
/// They form a group isomorphic to S3 under composition.
class MoebiusTag {
 public:
  enum class Kind : unsigned char {
    identity = 0,     // x
    pfaff = 1,        // x/(x-1)
    reflect = 2,      // 1-x
    pfaff_inv = 3,    // (x-1)/x
    invert = 4,       // 1/x
    invert_shift = 5  // 1/(1-x)
  };
  static constexpr std::size_t kCount = 6;

  constexpr MoebiusTag() = default;
  constexpr explicit MoebiusTag(Kind k) : kind_(k) {}
  static const std::array<MoebiusTag, kCount>& all();
  /// Accepts the ASCII spellings "x", "x/(x-1)", "1-x", "(x-1)/x", "1/x", "1/(1-x)".
  static MoebiusTag parse(std::string_view text);

  constexpr Kind kind() const { return kind_; }
  constexpr unsigned index() const { return static_cast<unsigned>(kind_); }
  bool is_identity() const { return kind_ == Kind::identity; }

  /// x -> p(x)/q(x) with p, q written as (constant, coefficient of x).
  struct Fraction {
    std::array<int, 2> num;
    std::array<int, 2> den;
  };
  Fraction fraction() const;

  /// (this o other)(x) = this(other(x)), from the fixed composition table.
  MoebiusTag compose(MoebiusTag other) const;
  MoebiusTag inverse() const;

  std::string to_string() const;
  std::string to_latex() const;

  friend constexpr bool operator==(MoebiusTag, MoebiusTag) = default;

 private:
  Kind kind_ = Kind::identity;
};

}  // namespace hyp3term
