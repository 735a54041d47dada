#pragma once

#include <optional>
#include <string>

#include "fgc/algebra/tate_series.hpp"
#include "fgc/charclass/charclass.hpp"

namespace fgc {

/// t-window [low, high] of a Tate computation.
struct Window {
  int low = -8;
  int high = 4;
};

/// Parses "low:high".
Window parse_window(std::string_view text);

/// Law, x-truncation D and t-window shared by the Euler-Tate operations.
///
/// Results are returned truncated to x-degree D and t-exponent high. An
/// operation throws PrecisionError when the law order does not determine its
/// result up to t^high, or when the result reaches below t^low.
class TateContext {
 public:
  TateContext(FormalGroupLaw F, int D, Window window);
  /// Builds the law at law_order(D, window, max_rank).
  static TateContext make(const LawSpec& law, int D, Window window, int max_rank = 4);
  /// Law order that suffices for bundles of rank <= max_rank.
  static int law_order(int D, Window window, int max_rank);

  const FormalGroupLaw& law() const noexcept { return F_; }
  int trunc() const noexcept { return D_; }
  Window window() const noexcept { return window_; }
  const std::string& t() const noexcept { return t_; }

  /// (x +_F t) as a Tate series in `root`, at the full precision of the law.
  TateSeries twist_factor(const std::string& root) const;
  /// Truncates to the window, checking precision and the low end.
  TateSeries finish(const TateSeries& s, const std::string& what) const;
  /// Raises PrecisionError unless window.low <= -needed.
  void require_low(int needed, const std::string& what) const;

 private:
  FormalGroupLaw F_;
  int D_;
  Window window_;
  std::string t_ = "t";
};

/// (x +_F t) / t.
TateSeries euler_tate_series(const TateContext& ctx);
/// e(V (x) L) / e(L)^n, computed as prod_i (x_i +_F t) times t^{-n}. For a
/// bundle given by class symbols the result is expanded in c_1..c_n.
TateSeries tch_on_bundle(const TateContext& ctx, const BundleData& V);
/// The same class obtained from the characteristic series (x +_F t)/t through
/// the symmetric-function expansion G(sigma), substituted back into the roots.
TateSeries tch_via_class(const TateContext& ctx, const BundleData& V);
/// e(V (x) L) = prod_i (x_i +_F t) as a Tate series in the roots.
TateSeries euler_of_twist_tate(const TateContext& ctx, const BundleData& V);
/// The inverse of e(V (x) L) in R_*((t))[[x_1..x_n]].
TateSeries tate_invert_euler(const TateContext& ctx, const BundleData& V);

struct BetaResult {
  TateSeries series;  ///< t-only series
  bool unit = false;
  int leading_exponent = 0;
  RingElement leading;
};
/// The coefficient of x in (x +_F t)/t and whether its leading coefficient is a unit.
BetaResult beta_coefficient(const TateContext& ctx);

struct ChernCheck {
  bool passed = true;
  int order = 0;
  std::optional<TateMismatch> mismatch;
};
/// Compares s with sum_k e_k(roots) t^{-k} through x-degree `order`.
ChernCheck compare_with_total_chern(const TateSeries& s, const BundleData& V, int order);
/// tch_on_bundle against the total Chern class, for the additive law.
ChernCheck total_chern_check(const TateContext& ctx, const BundleData& V, int order);

}  // namespace fgc
