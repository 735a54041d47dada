#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgc/algebra/tate_series.hpp"
#include "fgc/fgl/formal_group_law.hpp"
#include "fgc/tate/tate.hpp"

namespace fgc {

/// A candidate C^n-structure: a unit series f(x1..xn) together with the law
/// whose sum realizes the merge maps. For n = 0, f is a series in one
/// variable x (a generalized Thom class).
///
/// Coefficients may be plain ring elements or Laurent series in t; the plain
/// case is stored as a Tate series concentrated in t^0. Variables are renamed
/// positionally to x1..xn (x for n = 0), and f and the law are moved to a
/// common coefficient ring.
class CnStructure {
 public:
  CnStructure(int n, const FormalGroupLaw& F, const TruncSeries& f);
  CnStructure(int n, const FormalGroupLaw& F, const TateSeries& f);

  int n() const noexcept { return n_; }
  const FormalGroupLaw& law() const noexcept { return F_; }
  const RingPtr& ring() const noexcept { return f_.ring(); }
  bool over_tate() const noexcept { return over_tate_; }
  const TateSeries& tate() const noexcept { return f_; }
  /// The series itself; DomainError for a structure over the Tate ring.
  TruncSeries series() const;
  int trunc() const noexcept { return f_.trunc(); }
  int verified_to() const noexcept { return verified_to_; }
  /// Copy with verified_to raised to `order`. Use certify() to earn it.
  CnStructure with_verified(int order) const;

 private:
  int n_;
  FormalGroupLaw F_;
  TateSeries f_;
  bool over_tate_;
  int verified_to_ = 0;
};

/// Variable names x0..xn used for the n+1 source coordinates of the faces.
std::vector<std::string> face_variables(int n);

/// Images of the slots 1..n under the face d_i, 0 <= i <= n+1, as series in
/// x0..xn: d_0 drops x0, d_{n+1} drops xn, and 0 < i <= n sends slot i to
/// x_{i-1} +_F x_i.
std::vector<TruncSeries> bar_map(int i, int n, const FormalGroupLaw& F, int trunc);

/// Defect of the cocycle condition, a series in x0..xn equal to 1 exactly when
/// the condition holds. For n >= 2 it is the 2-cocycle defect in the first two
/// slots with x3..xn as parameters:
///   f(x1,x2,..) f(x0,x1+x2,..) / (f(x0+x1,x2,..) f(x0,x1,..)).
/// For n = 1 the condition is empty and the defect is 1.
TateSeries cocycle_defect(const CnStructure& s);

struct CnReport {
  int n = 0;
  int order = 0;
  bool symmetric = true;
  bool normalized = true;
  int cocycle_to = 0;  ///< highest x-degree through which the defect is 1
  bool unit = true;    ///< n = 0 only: the coefficient of x is invertible
  int t_high = TateSeries::kExact;  ///< t-precision of the check (over Tate)
  std::optional<std::string> failure;
  bool passed() const { return symmetric && normalized && unit && cocycle_to >= order; }
};

CnReport verify_cn(const CnStructure& s, int order);
/// verify_cn, then the structure marked verified to `order`; DomainError on failure.
CnStructure certify(const CnStructure& s, int order);

/// Full alternating product of face pullbacks of g(x1..xn): a series in
/// x1..x_{n+1}. For one variable, g(x1) g(x2) / g(x1 +_F x2).
TruncSeries bar_differential(const TruncSeries& g, const FormalGroupLaw& F);

/// Coboundary in the first slot with the others as parameters:
///   g(x1, x3..) g(x2, x3..) / g(x1 +_F x2, x3..),
/// a series in x1..x_{m+1}. Turns a C^m coboundary into a C^{m+1} one.
TruncSeries difference(const TruncSeries& g, const FormalGroupLaw& F);

/// g(x1..xm) = f(x1..xm, t) over the Tate ring of the context, for a verified
/// plain C^{m+1}-structure with m >= 1.
CnStructure sharp(const CnStructure& s, const TateContext& ctx);

/// The C^0-structure (x +_F t)/t.
CnStructure sharp0(const TateContext& ctx);

/// g(x) g(t) / g(x +_F t) over the Tate ring, for g(0) = 1.
TateSeries adjoint_series(const TruncSeries& g, const TateContext& ctx);

}  // namespace fgc
