#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgc/algebra/trunc_series.hpp"

namespace fgc {

/// A formal group law F(x, y) over a graded ring, stored as a two-variable
/// series in the variables "x" and "y" truncated at total degree trunc().
class FormalGroupLaw {
 public:
  /// Wraps an arbitrary series; nothing is verified (verified_to() == 0).
  FormalGroupLaw(TruncSeries F, std::string name);

  static FormalGroupLaw additive(int D, RingPtr ring = GradedRing::integers());
  /// F = x + y + u x y; `ring` must have exactly one generator, of degree 2.
  static FormalGroupLaw multiplicative(int D, RingPtr ring = nullptr);
  /// F = exp(log x + log y) with log x = x + sum_{k<=k_max} m_k x^{k+1} over Q[m_1..m_k].
  static FormalGroupLaw universal_rational(int k_max, int D);
  /// F = (x R(y) + y R(x)) / (1 - eps x^2 y^2), R(x) = sqrt(1 - 2 delta x^2 + eps x^4).
  static FormalGroupLaw jacobi_quartic(int D);
  /// x + y + x^2: deliberately not a formal group law.
  static FormalGroupLaw broken_example(int D);

  const TruncSeries& series() const noexcept { return F_; }
  const RingPtr& ring() const noexcept { return F_.ring(); }
  int trunc() const noexcept { return F_.trunc(); }
  const std::string& name() const noexcept { return name_; }
  int verified_to() const noexcept { return verified_to_; }
  /// a_ij, the coefficient of x^i y^j.
  RingElement coefficient(int i, int j) const;

  /// Copy with verified_to raised to `order` (never lowered).
  FormalGroupLaw with_verified(int order) const;

 private:
  TruncSeries F_;
  std::string name_;
  int verified_to_ = 0;
};

/// The same law over a ring containing its coefficient ring.
FormalGroupLaw extend_scalars(const FormalGroupLaw& F, const RingPtr& target);

/// Law selector shared by the CLI and the acceptance suite.
struct LawSpec {
  std::string name = "additive";
  int gens = 4;           ///< k_max for universal_rational
  bool rational = false;  ///< multiplicative over Q[u] instead of Z[u]
};

/// Accepts both '_' and '-' spellings of the built-in law names.
FormalGroupLaw make_law(const LawSpec& spec, int D);
const std::vector<std::string>& law_names();
/// Canonical spelling of a law name, or nullopt when unknown.
std::optional<std::string> canonical_law_name(std::string_view name);

/// F(f, g): the formal sum f +_F g. Both must have zero constant term.
TruncSeries fgl_apply(const FormalGroupLaw& F, const TruncSeries& f, const TruncSeries& g);
/// a +_F b for two named weight-1 variables, truncated at the law's order.
TruncSeries fgl_add_vars(const FormalGroupLaw& F, const std::string& a, const std::string& b);
/// The formal inverse i(x) with F(x, i(x)) = 0.
TruncSeries fgl_inverse(const FormalGroupLaw& F);
/// [n]_F(x).
TruncSeries fgl_nseries(const FormalGroupLaw& F, int n);
/// Integral of 1 / (dF/dy)(x, 0); the ring must be a Q-algebra.
TruncSeries fgl_log(const FormalGroupLaw& F);
TruncSeries fgl_exp(const FormalGroupLaw& F);

struct FglFailure {
  std::string axiom;
  std::vector<int> exponents;
  std::string lhs;
  std::string rhs;
};

struct FglReport {
  bool unital = true;
  bool commutative = true;
  int associative_to = 0;  ///< highest degree through which associativity holds
  bool homogeneous = true;
  int order = 0;
  std::optional<FglFailure> first_failure;

  bool passed() const { return unital && commutative && associative_to >= order && homogeneous; }
};

/// Checks unitality, commutativity, associativity and homogeneity of a_ij
/// (degree 2(i+j-1)) through total degree `order` <= F.trunc().
FglReport fgl_verify(const FormalGroupLaw& F, int order);

}  // namespace fgc
