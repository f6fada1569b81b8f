#include "hyp3term/moebius.hpp"

#include <algorithm>

#include "hyp3term/rational.hpp"

namespace hyp3term {
namespace {

// kCompose[f][g] = index of f o g; derived from the action on {0, 1, inf}.
constexpr unsigned char kCompose[6][6] = {
    {0, 1, 2, 3, 4, 5}, {1, 0, 3, 2, 5, 4}, {2, 5, 0, 4, 3, 1},
    {3, 4, 1, 5, 2, 0}, {4, 3, 5, 1, 0, 2}, {5, 2, 4, 0, 1, 3},
};
constexpr unsigned char kInverse[6] = {0, 1, 2, 5, 4, 3};

constexpr const char* kAscii[6] = {"x", "x/(x-1)", "1-x", "(x-1)/x", "1/x", "1/(1-x)"};
constexpr const char* kLatex[6] = {"x", "\\frac{x}{x - 1}", "1 - x", "\\frac{x - 1}{x}", "\\frac{1}{x}",
                                   "\\frac{1}{1 - x}"};

}  // namespace

const std::array<MoebiusTag, MoebiusTag::kCount>& MoebiusTag::all() {
  static const std::array<MoebiusTag, kCount> tags = {
      MoebiusTag(Kind::identity),  MoebiusTag(Kind::pfaff),  MoebiusTag(Kind::reflect),
      MoebiusTag(Kind::pfaff_inv), MoebiusTag(Kind::invert), MoebiusTag(Kind::invert_shift)};
  return tags;
}

MoebiusTag MoebiusTag::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  for (unsigned i = 0; i < kCount; ++i)
    if (s == kAscii[i]) return MoebiusTag(static_cast<Kind>(i));
  throw Error("unknown Moebius map: " + std::string(text));
}

MoebiusTag::Fraction MoebiusTag::fraction() const {
  switch (kind_) {
    case Kind::identity: return {{0, 1}, {1, 0}};
    case Kind::pfaff: return {{0, 1}, {-1, 1}};
    case Kind::reflect: return {{1, -1}, {1, 0}};
    case Kind::pfaff_inv: return {{-1, 1}, {0, 1}};
    case Kind::invert: return {{1, 0}, {0, 1}};
    case Kind::invert_shift: return {{1, 0}, {1, -1}};
  }
  return {{0, 1}, {1, 0}};
}

MoebiusTag MoebiusTag::compose(MoebiusTag other) const {
  return MoebiusTag(static_cast<Kind>(kCompose[index()][other.index()]));
}

MoebiusTag MoebiusTag::inverse() const { return MoebiusTag(static_cast<Kind>(kInverse[index()])); }

std::string MoebiusTag::to_string() const { return kAscii[index()]; }
std::string MoebiusTag::to_latex() const { return kLatex[index()]; }

}  // namespace hyp3term
