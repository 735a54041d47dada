#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fgc/algebra/graded_ring.hpp"
#include "fgc/algebra/terms.hpp"

namespace fgc {

/// An exact element of a GradedRing in canonical form.
///
/// Monomials are exponent vectors over the ring's generators; the sort key of
/// a monomial is its homotopy degree. Over an integer base every coefficient
/// is integral.
class RingElement {
 public:
  explicit RingElement(RingPtr ring);

  static RingElement constant(RingPtr ring, const Rational& value);
  static RingElement constant(RingPtr ring, long value) { return constant(std::move(ring), Rational(value)); }
  static RingElement generator(RingPtr ring, std::string_view name);
  /// Takes ownership of generator-slot terms; normalizes and recomputes keys.
  static RingElement from_terms(RingPtr ring, detail::Terms terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const detail::Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Value when the element is a constant (zero included).
  std::optional<Rational> constant_value() const;
  Rational constant_term() const;

  RingElement operator-() const;
  RingElement scaled(const Rational& c) const;
  RingElement pow(int exponent) const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b);

  /// Expression in the coefficient grammar, highest-degree terms first.
  std::string to_string() const;

 private:
  RingPtr ring_;
  detail::Terms terms_;
};

/// Homotopy degree of a generator monomial stored in ring slots [0, rank).
int monomial_degree(const GradedRing& ring, const Monomial& m, std::size_t first_slot = 0);

/// Inverse when `a` is a unit (a nonzero constant invertible in the base).
std::optional<RingElement> unit_inverse(const RingElement& a);
bool is_unit(const RingElement& a);

struct HomogeneousDegree {
  enum class Kind { Any, Degree, Inhomogeneous };
  Kind kind = Kind::Any;
  int degree = 0;

  bool matches(int d) const { return kind == Kind::Any || (kind == Kind::Degree && degree == d); }
};

HomogeneousDegree homogeneous_degree(const RingElement& a);

/// Throws DomainError if `value` is not representable in the ring's base.
void require_in_base(const GradedRing& ring, const Rational& value, std::string_view context);

std::string rational_to_string(const Rational& q);

}  // namespace fgc
