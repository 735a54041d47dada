#pragma once

// Low-level sparse term storage shared by RingElement, TruncSeries and
// TateSeries bodies. A term is an exponent vector over a fixed slot layout,
// a grading key (additive under multiplication) and an exact rational
// coefficient. Term lists are kept sorted by (key ascending, exponents
// descending) with no zero coefficients, so structural equality is equality.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace fgc {

using Rational = mpq_class;

inline constexpr std::size_t kMaxSlots = 32;
inline constexpr int kMaxExponent = 255;

struct Monomial {
  std::array<std::uint8_t, kMaxSlots> e{};

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

namespace detail {

struct Term {
  Monomial mono;
  int key = 0;
  Rational coeff;
};

using Terms = std::vector<Term>;

inline bool canonical_less(const Term& a, const Term& b) {
  if (a.key != b.key) return a.key < b.key;
  return a.mono > b.mono;
}

/// Sorts, merges equal monomials and drops zeros.
void normalize(Terms& terms);

Terms add(const Terms& a, const Terms& b);
Terms sub(const Terms& a, const Terms& b);
Terms negate(const Terms& a);
Terms scale(const Terms& a, const Rational& c);

/// Product keeping only terms whose key is <= key_limit.
Terms mul(const Terms& a, const Terms& b, int key_limit);

/// Product with a single monomial (exponent shift), keeping key <= key_limit.
Terms shift(const Terms& a, const Monomial& m, int key, const Rational& c, int key_limit);

/// Drops terms with key > limit (input stays canonical).
Terms truncate(const Terms& a, int limit);

Monomial add_monomials(const Monomial& a, const Monomial& b);

}  // namespace detail
}  // namespace fgc
