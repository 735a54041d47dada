#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgc/algebra/ring_element.hpp"

namespace fgc {

/// Multivariate power series over a GradedRing, truncated by weighted total
/// degree: only monomials of weighted degree <= trunc() are significant.
///
/// Variables carry a positive integer weight (1 unless stated), so elementary
/// symmetric functions can be adjoined with weight k. Internally each term
/// stores variable exponents in slots [0, nvars) followed by generator
/// exponents; the sort key is the weighted variable degree.
class TruncSeries {
 public:
  using Exponents = std::vector<int>;

  TruncSeries(RingPtr ring, std::vector<std::string> vars, int trunc, std::vector<int> weights = {});

  static TruncSeries constant(RingPtr ring, std::vector<std::string> vars, int trunc, const RingElement& c,
                              std::vector<int> weights = {});
  static TruncSeries one(RingPtr ring, std::vector<std::string> vars, int trunc, std::vector<int> weights = {});
  static TruncSeries variable(RingPtr ring, std::vector<std::string> vars, std::string_view name, int trunc,
                              std::vector<int> weights = {});
  /// Builds a series from (variable exponents, coefficient) pairs.
  static TruncSeries from_coefficients(RingPtr ring, std::vector<std::string> vars, int trunc,
                                       const std::vector<std::pair<Exponents, RingElement>>& coefficients,
                                       std::vector<int> weights = {});
  /// Internal: takes full-slot terms; keys are recomputed.
  static TruncSeries from_terms(RingPtr ring, std::vector<std::string> vars, std::vector<int> weights, int trunc,
                                detail::Terms terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  int trunc() const noexcept { return trunc_; }
  const detail::Terms& terms() const noexcept { return terms_; }
  std::optional<std::size_t> index_of(std::string_view var) const;
  std::size_t require_var(std::string_view var) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Lowest weighted degree carrying a nonzero term; trunc()+1 for zero.
  int valuation() const;
  int weighted_degree(const Exponents& e) const;

  RingElement coefficient(const Exponents& exponents) const;
  RingElement constant_term() const;
  /// Nonzero coefficients grouped by variable monomial, in canonical order.
  std::vector<std::pair<Exponents, RingElement>> coefficients() const;

  TruncSeries truncated(int order) const;
  TruncSeries homogeneous_part(int degree) const;
  TruncSeries scaled(const RingElement& c) const;
  TruncSeries scaled(const Rational& c) const;
  TruncSeries operator-() const;

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  /// Structural equality: same ring, variables, weights, truncation and terms.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  /// Re-expresses the series over `vars` (a superset of the used variables).
  TruncSeries with_vars(const std::vector<std::string>& vars, const std::vector<int>& weights = {}) const;
  TruncSeries renamed(const std::map<std::string, std::string>& names) const;
  /// Drops variables that occur in no term.
  TruncSeries without_unused_vars() const;
  TruncSeries set_zero(std::string_view var) const;
  TruncSeries swapped(std::size_t i, std::size_t j) const;
  TruncSeries derivative(std::string_view var) const;
  /// Formal antiderivative in a weight-1 variable; truncation grows by one.
  TruncSeries integral(std::string_view var) const;

  /// Human-readable form, for diagnostics only.
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<std::string> vars_;
  std::vector<int> weights_;
  int trunc_;
  detail::Terms terms_;
};

/// First coefficient (in canonical order) where two series differ, up to `order`.
struct SeriesMismatch {
  TruncSeries::Exponents exponents;
  std::string lhs;
  std::string rhs;
};
std::optional<SeriesMismatch> first_difference(const TruncSeries& a, const TruncSeries& b, int order);
bool agree_to(const TruncSeries& a, const TruncSeries& b, int order);

using Bindings = std::vector<std::pair<std::string, TruncSeries>>;

/// Simultaneous substitution var -> series. Replacement series must have zero
/// constant term; unbound variables pass through.
TruncSeries series_substitute(const TruncSeries& f, const Bindings& bindings);

/// Multiplicative inverse; the constant term must be a unit.
TruncSeries series_invert(const TruncSeries& f);

/// Compositional inverse of a one-variable series with f(0)=0 and unit linear term.
TruncSeries series_reversion(const TruncSeries& f);

/// Square root with g(0)=1 of a series with constant term 1.
TruncSeries series_sqrt(const TruncSeries& f);

/// The same series over a larger ring (see embeds_into).
TruncSeries extend_scalars(const TruncSeries& s, const RingPtr& target);

/// Union of two variable lists by name (weights must agree).
std::pair<std::vector<std::string>, std::vector<int>> merge_vars(const TruncSeries& a, const TruncSeries& b);

}  // namespace fgc
