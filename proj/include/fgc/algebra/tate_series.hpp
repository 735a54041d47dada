#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgc/algebra/trunc_series.hpp"

namespace fgc {

/// Laurent series in t with power-series bodies in the x-variables:
/// sum over e of body_e * t^e, bounded below in e.
///
/// Precision in t is tracked per x-degree: at weighted x-degree d the
/// coefficients of t^e are significant exactly for e <= profile()[d]. The
/// rectangular window of a result is [low(), high()], high() being the
/// minimum of the profile. kExact marks a degree with no t-truncation.
class TateSeries {
 public:
  static constexpr int kExact = 1 << 20;

  /// The exact zero series.
  TateSeries(RingPtr ring, std::vector<std::string> xvars, int trunc, std::vector<int> weights = {});

  static TateSeries from_parts(RingPtr ring, std::vector<std::string> xvars, std::vector<int> weights, int trunc,
                               std::map<int, TruncSeries> bodies, std::vector<int> profile);
  /// body * t^e, significant in t up to `high` at every x-degree.
  static TateSeries from_body(const TruncSeries& body, int e, int high = kExact);
  static TateSeries t_power(RingPtr ring, std::vector<std::string> xvars, int trunc, int e,
                            std::vector<int> weights = {});
  /// Reads the weight-1 variable t of `s` as the Laurent variable and
  /// multiplies by t^shift. Precision follows from the truncation of `s`.
  static TateSeries from_power_series(const TruncSeries& s, std::string_view t, int shift = 0);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<std::string>& xvars() const noexcept { return xvars_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  int trunc() const noexcept { return trunc_; }
  const std::map<int, TruncSeries>& bodies() const noexcept { return bodies_; }
  const std::vector<int>& profile() const noexcept { return profile_; }

  bool is_zero() const noexcept { return bodies_.empty(); }
  /// Lowest t-exponent with a nonzero body; kExact for zero.
  int valuation() const;
  int low() const { return std::min(0, valuation()); }
  int high() const;
  /// Largest t-exponent carried by a nonzero body (or 0).
  int top() const;

  /// body_e, zero when absent. Terms above the profile are simply absent.
  TruncSeries body(int e) const;
  /// Coefficient of x^exps t^e; throws PrecisionError outside the known range.
  RingElement coefficient(const TruncSeries::Exponents& exps, int e) const;
  /// The Laurent polynomial in t multiplying x^exps, as a t-only TateSeries.
  TateSeries x_coefficient(const TruncSeries::Exponents& exps) const;

  TateSeries t_truncated(int high) const;
  TateSeries x_truncated(int trunc) const;
  TateSeries scaled(const RingElement& c) const;
  TateSeries operator-() const;

  friend TateSeries operator+(const TateSeries& a, const TateSeries& b);
  friend TateSeries operator-(const TateSeries& a, const TateSeries& b);
  friend TateSeries operator*(const TateSeries& a, const TateSeries& b);

  TateSeries with_xvars(const std::vector<std::string>& vars, const std::vector<int>& weights = {}) const;
  TateSeries renamed(const std::map<std::string, std::string>& names) const;
  TateSeries set_zero(std::string_view var) const;
  TateSeries swapped(std::size_t i, std::size_t j) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<std::string> xvars_;
  std::vector<int> weights_;
  int trunc_;
  std::map<int, TruncSeries> bodies_;
  std::vector<int> profile_;

  void prune();
};

/// Multiplicative inverse. The x-constant part must be a Laurent series whose
/// lowest coefficient is a unit constant. When that part is known exactly but
/// is not a monomial, its inverse is an infinite series and `t_cap` bounds it.
TateSeries tate_invert(const TateSeries& f, int t_cap = TateSeries::kExact);

/// Substitutes power series (no t) for x-variables, body by body. Each
/// replacement must not lower weighted degree.
TateSeries tate_substitute(const TateSeries& f, const Bindings& bindings);

TateSeries extend_scalars(const TateSeries& f, const RingPtr& target);

struct TateMismatch {
  TruncSeries::Exponents exponents;
  int t_exponent;
  std::string lhs;
  std::string rhs;
};
/// First disagreement within the common precision of both operands.
std::optional<TateMismatch> first_difference(const TateSeries& a, const TateSeries& b);

}  // namespace fgc
