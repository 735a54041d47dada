#include "fgc/tate/tate.hpp"

#include <charconv>
#include <functional>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

TateSeries map_bodies(const TateSeries& s, const std::function<TruncSeries(const TruncSeries&)>& fn) {
  TruncSeries layout = fn(TruncSeries(s.ring(), s.xvars(), s.trunc(), s.weights()));
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, b] : s.bodies()) bodies.emplace(e, fn(b));
  return TateSeries::from_parts(s.ring(), layout.vars(), layout.weights(), layout.trunc(), std::move(bodies),
                                s.profile());
}

std::vector<std::string> roots_of(const BundleData& V) {
  if (V.kind == BundleData::Kind::Roots) return V.names;
  std::vector<std::string> roots;
  for (int i = 1; i <= V.rank(); ++i) roots.push_back("r" + std::to_string(i));
  return roots;
}

// Rewrites a symmetric Tate series in the roots through the class symbols of V.
TateSeries to_classes(const TateSeries& s, const std::vector<std::string>& roots, const BundleData& V) {
  std::map<std::string, std::string> names;
  for (int k = 1; k <= V.rank(); ++k) names["sigma" + std::to_string(k)] = V.names[static_cast<std::size_t>(k - 1)];
  return map_bodies(s, [&](const TruncSeries& b) { return symmetric_expand(b, roots, "sigma").renamed(names); });
}

}  // namespace

Window parse_window(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("window must be written low:high");
  Window w;
  auto parse = [&](std::string_view part, int& out) {
    const char* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, out);
    if (ec != std::errc() || ptr != end || part.empty()) {
      throw DomainError("window bound '" + std::string(part) + "' is not an integer");
    }
  };
  parse(text.substr(0, colon), w.low);
  parse(text.substr(colon + 1), w.high);
  return w;
}

TateContext::TateContext(FormalGroupLaw F, int D, Window window) : F_(std::move(F)), D_(D), window_(window) {
  if (D_ < 0) throw DomainError("x-truncation must be non-negative");
  if (window_.low > 0 || window_.high < 0) throw DomainError("window must satisfy low <= 0 <= high");
  if (F_.trunc() < D_ + 1) throw PrecisionError("law order below the x-truncation");
}

int TateContext::law_order(int D, Window window, int max_rank) {
  // tch needs D + high + 1; inverting e(V (x) L) costs one more t-power per root.
  return D + std::max(window.high, 0) + std::max(max_rank, 1) + 1;
}

TateContext TateContext::make(const LawSpec& law, int D, Window window, int max_rank) {
  if (window.low > 0 || window.high < 0) throw DomainError("window must satisfy low <= 0 <= high");
  return TateContext(make_law(law, law_order(D, window, max_rank)), D, window);
}

TateSeries TateContext::twist_factor(const std::string& root) const {
  return TateSeries::from_power_series(fgl_add_vars(F_, root, t_), t_, 0).x_truncated(D_);
}

void TateContext::require_low(int needed, const std::string& what) const {
  if (window_.low > -needed) {
    throw PrecisionError(what + ": window low " + std::to_string(window_.low) + " lacks t^" +
                         std::to_string(-needed));
  }
}

TateSeries TateContext::finish(const TateSeries& s, const std::string& what) const {
  TateSeries r = s.x_truncated(D_);
  for (int d = 0; d <= std::min(D_, r.trunc()); ++d) {
    const int h = r.profile()[static_cast<std::size_t>(d)];
    if (h < window_.high) {
      throw PrecisionError(what + ": law order " + std::to_string(F_.trunc()) + " determines x-degree " +
                           std::to_string(d) + " only through t^" + std::to_string(h));
    }
  }
  if (r.trunc() < D_) throw PrecisionError(what + ": result known only to x-degree " + std::to_string(r.trunc()));
  r = r.t_truncated(window_.high);
  if (!r.is_zero() && r.valuation() < window_.low) {
    throw PrecisionError(what + ": result reaches t^" + std::to_string(r.valuation()) + " below window low " +
                         std::to_string(window_.low));
  }
  return r;
}

TateSeries euler_tate_series(const TateContext& ctx) {
  if (ctx.trunc() >= 1) ctx.require_low(1, "euler_tate_series");
  TateSeries twist = ctx.twist_factor("x");
  return ctx.finish(twist * TateSeries::t_power(twist.ring(), twist.xvars(), twist.trunc(), -1), "euler_tate_series");
}

namespace {

// prod (x_i +_F t), each factor cut at t^cap.
TateSeries twist_product(const TateContext& ctx, const std::vector<std::string>& roots, int cap) {
  TateSeries acc = TateSeries::t_power(ctx.law().ring(), roots, ctx.trunc(), 0);
  for (const auto& r : roots) acc = acc * ctx.twist_factor(r).t_truncated(cap);
  return acc;
}

// A factor of x-degree d >= 1 starts at t^-1 in (x +_F t)/t, so in a product
// of n factors the others lower the t-exponent by at most min(n-1, D).
int factor_cap(const TateContext& ctx, int n) {
  return std::max(ctx.window().high, 0) + std::min(std::max(n - 1, 0), ctx.trunc());
}

}  // namespace

TateSeries euler_of_twist_tate(const TateContext& ctx, const BundleData& V) {
  return twist_product(ctx, roots_of(V), TateSeries::kExact);
}

TateSeries tch_on_bundle(const TateContext& ctx, const BundleData& V) {
  const int n = V.rank();
  ctx.require_low(std::min(n, ctx.trunc()), "tch_on_bundle");
  const auto roots = roots_of(V);
  TateSeries e = twist_product(ctx, roots, factor_cap(ctx, n) + 1);
  TateSeries tn = TateSeries::t_power(e.ring(), roots, e.trunc(), n);
  TateSeries result = ctx.finish(e * tate_invert(tn), "tch_on_bundle");
  return V.kind == BundleData::Kind::Roots ? result : to_classes(result, roots, V);
}

TateSeries tch_via_class(const TateContext& ctx, const BundleData& V) {
  const int n = V.rank();
  ctx.require_low(std::min(n, ctx.trunc()), "tch_via_class");
  const auto roots = roots_of(V);
  TateSeries f = ctx.twist_factor("x");
  f = (f * TateSeries::t_power(f.ring(), f.xvars(), f.trunc(), -1)).t_truncated(factor_cap(ctx, n));
  TateSeries prod = TateSeries::t_power(f.ring(), roots, f.trunc(), 0);
  for (const auto& r : roots) prod = prod * f.renamed({{"x", r}});
  std::vector<std::string> sigmas;
  for (int k = 1; k <= n; ++k) sigmas.push_back("sigma" + std::to_string(k));
  TateSeries G = map_bodies(prod, [&](const TruncSeries& b) { return symmetric_expand(b, roots, "sigma"); });
  if (V.kind == BundleData::Kind::Classes) {
    std::map<std::string, std::string> names;
    for (int k = 1; k <= n; ++k) names[sigmas[static_cast<std::size_t>(k - 1)]] = V.names[static_cast<std::size_t>(k - 1)];
    return ctx.finish(map_bodies(G, [&](const TruncSeries& b) { return b.renamed(names); }), "tch_via_class");
  }
  TateSeries back = map_bodies(G, [&](const TruncSeries& b) { return symmetric_collapse(b, sigmas, roots); });
  return ctx.finish(back, "tch_via_class");
}

TateSeries tate_invert_euler(const TateContext& ctx, const BundleData& V) {
  if (V.kind != BundleData::Kind::Roots) throw DomainError("tate_invert_euler needs Chern roots");
  const int n = V.rank();
  ctx.require_low(n + ctx.trunc(), "tate_invert_euler");
  TateSeries e = euler_of_twist_tate(ctx, V);
  // e = t^n * unit; invert the unit and shift back.
  TateSeries tn_inv = TateSeries::t_power(e.ring(), V.names, e.trunc(), -n);
  TateSeries unit = e * tn_inv;
  return ctx.finish(tate_invert(unit) * tn_inv, "tate_invert_euler");
}

BetaResult beta_coefficient(const TateContext& ctx) {
  if (ctx.trunc() < 1) throw PrecisionError("beta_coefficient needs x-truncation at least 1");
  const int need = ctx.window().high + 2;
  if (ctx.law().verified_to() < need) {
    throw DomainError("beta_coefficient: law verified only to order " + std::to_string(ctx.law().verified_to()) +
                      ", need " + std::to_string(need));
  }
  ctx.require_low(1, "beta_coefficient");
  TateSeries twist = ctx.twist_factor("x");
  TateSeries f = twist * TateSeries::t_power(twist.ring(), twist.xvars(), twist.trunc(), -1);
  TateSeries beta = f.x_coefficient({1});
  if (beta.high() < ctx.window().high) {
    throw PrecisionError("beta_coefficient: law order too low for the window");
  }
  beta = beta.t_truncated(ctx.window().high);
  BetaResult result{beta, false, 0, RingElement(ctx.law().ring())};
  if (!beta.is_zero()) {
    result.leading_exponent = beta.valuation();
    result.leading = beta.body(beta.valuation()).constant_term();
    result.unit = is_unit(result.leading);
  }
  return result;
}

ChernCheck compare_with_total_chern(const TateSeries& s, const BundleData& V, int order) {
  if (V.kind != BundleData::Kind::Roots) throw DomainError("total Chern comparison needs Chern roots");
  const int n = V.rank();
  if (order > s.trunc()) throw PrecisionError("comparison order exceeds x-truncation");
  TateSeries expected(s.ring(), V.names, order);
  for (int k = 0; k <= std::min(n, order); ++k) {
    expected = expected + TateSeries::from_body(elementary_symmetric(s.ring(), V.names, k, order), -k);
  }
  ChernCheck report;
  report.order = order;
  report.mismatch = first_difference(s.x_truncated(order), expected);
  report.passed = !report.mismatch.has_value();
  return report;
}

ChernCheck total_chern_check(const TateContext& ctx, const BundleData& V, int order) {
  if (ctx.law().name() != "additive") throw DomainError("total_chern_check needs the additive law");
  if (order > ctx.trunc()) throw PrecisionError("check order exceeds the context truncation");
  return compare_with_total_chern(tch_on_bundle(ctx, V), V, order);
}

}  // namespace fgc
