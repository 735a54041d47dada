#include "fgc/algebra/tate_series.hpp"

#include <algorithm>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

constexpr int kExact = TateSeries::kExact;

bool is_exact(int h) { return h >= kExact / 2; }

int clamp_high(int h) { return is_exact(h) ? kExact : h; }

int add_high(int a, int b) { return (is_exact(a) || is_exact(b)) ? kExact : a + b; }

TruncSeries zero_body(const TateSeries& s) { return TruncSeries(s.ring(), s.xvars(), s.trunc(), s.weights()); }

// Lowest t-exponent present at each x-degree, or profile+1 where nothing is.
std::vector<int> lowest_exponents(const TateSeries& s) {
  std::vector<int> v(s.profile().size());
  for (std::size_t d = 0; d < v.size(); ++d) v[d] = add_high(s.profile()[d], 1);
  for (const auto& [e, b] : s.bodies()) {
    for (const auto& t : b.terms()) {
      auto& slot = v[static_cast<std::size_t>(t.key)];
      slot = std::min(slot, e);
    }
  }
  return v;
}

std::pair<TateSeries, TateSeries> align(const TateSeries& a, const TateSeries& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.xvars() == b.xvars() && a.weights() == b.weights()) return {a, b};
  auto [vars, weights] = merge_vars(zero_body(a), zero_body(b));
  return {a.with_xvars(vars, weights), b.with_xvars(vars, weights)};
}

}  // namespace

TateSeries::TateSeries(RingPtr ring, std::vector<std::string> xvars, int trunc, std::vector<int> weights)
    : ring_(std::move(ring)), xvars_(std::move(xvars)), trunc_(trunc) {
  TruncSeries layout(ring_, xvars_, trunc_, std::move(weights));
  weights_ = layout.weights();
  profile_.assign(static_cast<std::size_t>(trunc_) + 1, kExact);
}

void TateSeries::prune() {
  for (auto& p : profile_) p = clamp_high(p);
  for (auto it = bodies_.begin(); it != bodies_.end();) {
    const int e = it->first;
    const auto& terms = it->second.terms();
    detail::Terms kept;
    bool dropped = false;
    for (const auto& t : terms) {
      if (e <= profile_[static_cast<std::size_t>(t.key)]) {
        kept.push_back(t);
      } else {
        dropped = true;
      }
    }
    if (dropped) it->second = TruncSeries::from_terms(ring_, xvars_, weights_, trunc_, std::move(kept));
    if (it->second.is_zero()) {
      it = bodies_.erase(it);
    } else {
      ++it;
    }
  }
}

TateSeries TateSeries::from_parts(RingPtr ring, std::vector<std::string> xvars, std::vector<int> weights, int trunc,
                                  std::map<int, TruncSeries> bodies, std::vector<int> profile) {
  TateSeries s(std::move(ring), std::move(xvars), trunc, std::move(weights));
  profile.resize(s.profile_.size(), profile.empty() ? kExact : profile.back());
  s.profile_ = std::move(profile);
  for (auto& [e, b] : bodies) {
    require_same_ring(s.ring_, b.ring());
    TruncSeries body = b.with_vars(s.xvars_, s.weights_);
    if (body.trunc() < trunc) throw PrecisionError("Tate body truncated below the x-order");
    s.bodies_.emplace(e, body.truncated(trunc));
  }
  s.prune();
  return s;
}

TateSeries TateSeries::from_body(const TruncSeries& body, int e, int high) {
  TateSeries s(body.ring(), body.vars(), body.trunc(), body.weights());
  std::fill(s.profile_.begin(), s.profile_.end(), high);
  if (!body.is_zero()) s.bodies_.emplace(e, body);
  s.prune();
  return s;
}

TateSeries TateSeries::t_power(RingPtr ring, std::vector<std::string> xvars, int trunc, int e,
                               std::vector<int> weights) {
  return from_body(TruncSeries::one(std::move(ring), std::move(xvars), trunc, std::move(weights)), e);
}

TateSeries TateSeries::from_power_series(const TruncSeries& s, std::string_view t, int shift) {
  const std::size_t ti = s.require_var(t);
  if (s.weights()[ti] != 1) throw DomainError("Laurent variable must have weight 1");
  std::vector<std::string> xvars;
  std::vector<int> weights;
  for (std::size_t i = 0; i < s.nvars(); ++i) {
    if (i == ti) continue;
    xvars.push_back(s.vars()[i]);
    weights.push_back(s.weights()[i]);
  }
  const int N = s.trunc();
  std::map<int, detail::Terms> grouped;
  for (const auto& term : s.terms()) {
    detail::Term copy = term;
    const int k = copy.mono.e[ti];
    copy.mono.e[ti] = 0;
    grouped[k].push_back(std::move(copy));
  }
  std::map<int, TruncSeries> bodies;
  for (auto& [k, terms] : grouped) {
    TruncSeries full = TruncSeries::from_terms(s.ring(), s.vars(), s.weights(), N, std::move(terms));
    bodies.emplace(k + shift, full.with_vars(xvars, weights));
  }
  std::vector<int> profile(static_cast<std::size_t>(N) + 1);
  for (int d = 0; d <= N; ++d) profile[static_cast<std::size_t>(d)] = N - d + shift;
  return from_parts(s.ring(), xvars, weights, N, std::move(bodies), std::move(profile));
}

int TateSeries::valuation() const { return bodies_.empty() ? kExact : bodies_.begin()->first; }

int TateSeries::high() const { return *std::min_element(profile_.begin(), profile_.end()); }

int TateSeries::top() const { return bodies_.empty() ? 0 : bodies_.rbegin()->first; }

TruncSeries TateSeries::body(int e) const {
  auto it = bodies_.find(e);
  return it == bodies_.end() ? zero_body(*this) : it->second;
}

RingElement TateSeries::coefficient(const TruncSeries::Exponents& exps, int e) const {
  TruncSeries z = zero_body(*this);
  const int d = z.weighted_degree(exps);
  if (exps.size() != xvars_.size()) throw DomainError("exponent vector length differs from variable count");
  if (d > trunc_) throw PrecisionError("x-degree " + std::to_string(d) + " beyond truncation");
  if (e > profile_[static_cast<std::size_t>(d)]) {
    throw PrecisionError("t^" + std::to_string(e) + " beyond known precision at x-degree " + std::to_string(d));
  }
  return body(e).coefficient(exps);
}

TateSeries TateSeries::x_coefficient(const TruncSeries::Exponents& exps) const {
  TruncSeries z = zero_body(*this);
  const int d = z.weighted_degree(exps);
  if (d > trunc_) throw PrecisionError("x-degree " + std::to_string(d) + " beyond truncation");
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, b] : bodies_) {
    RingElement c = b.coefficient(exps);
    if (!c.is_zero()) bodies.emplace(e, TruncSeries::constant(ring_, {}, 0, c));
  }
  return from_parts(ring_, {}, {}, 0, std::move(bodies), {profile_[static_cast<std::size_t>(d)]});
}

TateSeries TateSeries::t_truncated(int high) const {
  TateSeries s = *this;
  for (auto& p : s.profile_) p = std::min(p, high);
  s.prune();
  return s;
}

TateSeries TateSeries::x_truncated(int trunc) const {
  if (trunc >= trunc_) return *this;
  TateSeries s(ring_, xvars_, trunc, weights_);
  std::copy_n(profile_.begin(), s.profile_.size(), s.profile_.begin());
  for (const auto& [e, b] : bodies_) {
    TruncSeries t = b.truncated(trunc);
    if (!t.is_zero()) s.bodies_.emplace(e, std::move(t));
  }
  return s;
}

TateSeries TateSeries::scaled(const RingElement& c) const {
  TateSeries s = *this;
  for (auto& [e, b] : s.bodies_) b = b.scaled(c);
  s.prune();
  return s;
}

TateSeries TateSeries::operator-() const {
  TateSeries s = *this;
  for (auto& [e, b] : s.bodies_) b = -b;
  return s;
}

namespace {

template <typename Op>
TateSeries combine(const TateSeries& a, const TateSeries& b, Op op) {
  const int D = std::min(a.trunc(), b.trunc());
  std::vector<int> profile(static_cast<std::size_t>(D) + 1);
  for (std::size_t d = 0; d < profile.size(); ++d) profile[d] = std::min(a.profile()[d], b.profile()[d]);
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, body] : a.bodies()) bodies.emplace(e, body.truncated(D));
  for (const auto& [e, body] : b.bodies()) {
    auto it = bodies.find(e);
    TruncSeries rhs = body.truncated(D);
    if (it == bodies.end()) {
      bodies.emplace(e, op(TruncSeries(a.ring(), a.xvars(), D, a.weights()), rhs));
    } else {
      it->second = op(it->second, rhs);
    }
  }
  return TateSeries::from_parts(a.ring(), a.xvars(), a.weights(), D, std::move(bodies), std::move(profile));
}

}  // namespace

TateSeries operator+(const TateSeries& a, const TateSeries& b) {
  auto [x, y] = align(a, b);
  return combine(x, y, [](const TruncSeries& p, const TruncSeries& q) { return p + q; });
}

TateSeries operator-(const TateSeries& a, const TateSeries& b) {
  auto [x, y] = align(a, b);
  return combine(x, y, [](const TruncSeries& p, const TruncSeries& q) { return p - q; });
}

TateSeries operator*(const TateSeries& a0, const TateSeries& b0) {
  auto [a, b] = align(a0, b0);
  const int D = std::min(a.trunc_, b.trunc_);
  const auto va = lowest_exponents(a);
  const auto vb = lowest_exponents(b);
  std::vector<int> profile(static_cast<std::size_t>(D) + 1, kExact);
  for (int d = 0; d <= D; ++d) {
    int h = kExact;
    for (int d1 = 0; d1 <= d; ++d1) {
      const auto i = static_cast<std::size_t>(d1);
      const auto j = static_cast<std::size_t>(d - d1);
      h = std::min({h, add_high(a.profile_[i], vb[j]), add_high(b.profile_[j], va[i])});
    }
    profile[static_cast<std::size_t>(d)] = h;
  }
  const int cap = *std::max_element(profile.begin(), profile.end());
  std::map<int, detail::Terms> acc;
  for (const auto& [e1, b1] : a.bodies_) {
    for (const auto& [e2, b2] : b.bodies_) {
      const int e = e1 + e2;
      if (e > cap) continue;
      detail::Terms prod = detail::mul(b1.terms(), b2.terms(), D);
      auto& slot = acc[e];
      slot = slot.empty() ? std::move(prod) : detail::add(slot, prod);
    }
  }
  TateSeries s(a.ring_, a.xvars_, D, a.weights_);
  s.profile_ = std::move(profile);
  for (auto& [e, terms] : acc) {
    if (terms.empty()) continue;
    s.bodies_.emplace(e, TruncSeries::from_terms(a.ring_, a.xvars_, a.weights_, D, std::move(terms)));
  }
  s.prune();
  return s;
}

TateSeries TateSeries::with_xvars(const std::vector<std::string>& vars, const std::vector<int>& weights) const {
  TateSeries s(ring_, vars, trunc_, weights.empty() ? std::vector<int>(vars.size(), 1) : weights);
  s.profile_ = profile_;
  for (const auto& [e, b] : bodies_) s.bodies_.emplace(e, b.with_vars(s.xvars_, s.weights_));
  return s;
}

TateSeries TateSeries::renamed(const std::map<std::string, std::string>& names) const {
  TruncSeries layout = zero_body(*this).renamed(names);
  TateSeries s(ring_, layout.vars(), trunc_, weights_);
  s.profile_ = profile_;
  for (const auto& [e, b] : bodies_) s.bodies_.emplace(e, b.renamed(names));
  return s;
}

TateSeries TateSeries::set_zero(std::string_view var) const {
  TateSeries s = *this;
  for (auto& [e, b] : s.bodies_) b = b.set_zero(var);
  s.prune();
  return s;
}

TateSeries TateSeries::swapped(std::size_t i, std::size_t j) const {
  TateSeries s = *this;
  for (auto& [e, b] : s.bodies_) b = b.swapped(i, j);
  return s;
}

std::string TateSeries::to_string() const {
  std::string out;
  for (const auto& [e, b] : bodies_) {
    if (!out.empty()) out += " + ";
    out += "t^" + std::to_string(e) + "*[" + b.to_string() + "]";
  }
  if (out.empty()) out = "0";
  const int h = high();
  if (!is_exact(h)) out += " + O(t^" + std::to_string(h + 1) + ")";
  return out;
}

TateSeries tate_invert(const TateSeries& f, int t_cap) {
  const RingPtr& ring = f.ring();
  const int h0 = f.profile()[0];
  std::map<int, RingElement> lead;
  for (const auto& [e, b] : f.bodies()) {
    RingElement c = b.constant_term();
    if (!c.is_zero()) lead.emplace(e, c);
  }
  if (lead.empty()) throw DomainError("tate_invert: x-constant part vanishes to known precision");
  const int m = lead.begin()->first;
  auto c_inv = unit_inverse(lead.begin()->second);
  if (!c_inv) throw DomainError("tate_invert: leading coefficient " + lead.begin()->second.to_string() + " is not a unit");
  const bool monomial = lead.size() == 1;

  int high0;
  if (is_exact(h0)) {
    if (monomial) {
      high0 = kExact;
    } else if (is_exact(t_cap)) {
      throw PrecisionError("tate_invert: exact non-monomial x-constant part needs a t-precision cap");
    } else {
      high0 = t_cap;
    }
  } else {
    high0 = std::min(h0 - 2 * m, t_cap);
  }

  // Laurent inverse of the x-constant part: c^-1 t^-m sum_k w_k t^k.
  const int K = is_exact(high0) ? 0 : high0 + m;
  std::vector<RingElement> w;
  std::map<int, TruncSeries> u_bodies;
  for (int k = 0; k <= K; ++k) {
    RingElement wk = k == 0 ? RingElement::constant(ring, 1) : RingElement(ring);
    for (int j = 1; j <= k; ++j) {
      auto it = lead.find(m + j);
      if (it == lead.end()) continue;
      wk = wk - it->second * *c_inv * w[static_cast<std::size_t>(k - j)];
    }
    w.push_back(wk);
    if (!wk.is_zero()) {
      u_bodies.emplace(-m + k, TruncSeries::constant(ring, f.xvars(), f.trunc(), wk * *c_inv, f.weights()));
    }
  }
  std::vector<int> u_profile(static_cast<std::size_t>(f.trunc()) + 1, kExact);
  u_profile[0] = high0;
  TateSeries u =
      TateSeries::from_parts(ring, f.xvars(), f.weights(), f.trunc(), std::move(u_bodies), std::move(u_profile));

  // Positive x-degree part, with the degree-0 uncertainty carried by u.
  std::map<int, TruncSeries> g_bodies;
  for (const auto& [e, b] : f.bodies()) {
    TruncSeries rest = b - b.homogeneous_part(0);
    if (!rest.is_zero()) g_bodies.emplace(e, rest);
  }
  std::vector<int> g_profile = f.profile();
  g_profile[0] = kExact;
  TateSeries g = TateSeries::from_parts(ring, f.xvars(), f.weights(), f.trunc(), std::move(g_bodies), g_profile);

  TateSeries q = -(g * u);
  TateSeries sum = TateSeries::t_power(ring, f.xvars(), f.trunc(), 0, f.weights());
  TateSeries power = sum;
  for (int k = 1; k <= f.trunc(); ++k) {
    power = power * q;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return u * sum;
}

TateSeries tate_substitute(const TateSeries& f, const Bindings& bindings) {
  TruncSeries zero = zero_body(f);
  for (const auto& [name, g] : bindings) {
    auto i = zero.index_of(name);
    if (!i) continue;
    if (g.valuation() < zero.weights()[*i]) {
      throw DomainError("tate_substitute: replacement for '" + name + "' lowers degree");
    }
  }
  TruncSeries layout = series_substitute(zero, bindings);
  std::map<int, TruncSeries> substituted;
  int D = layout.trunc();
  for (const auto& [e, b] : f.bodies()) {
    TruncSeries s = series_substitute(b, bindings);
    D = std::min(D, s.trunc());
    substituted.emplace(e, std::move(s));
  }
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, s] : substituted) bodies.emplace(e, s.truncated(D).with_vars(layout.vars(), layout.weights()));
  std::vector<int> profile(static_cast<std::size_t>(D) + 1);
  int running = kExact;
  for (int d = 0; d <= D; ++d) {
    if (d <= f.trunc()) running = std::min(running, f.profile()[static_cast<std::size_t>(d)]);
    profile[static_cast<std::size_t>(d)] = running;
  }
  return TateSeries::from_parts(f.ring(), layout.vars(), layout.weights(), D, std::move(bodies), std::move(profile));
}

std::optional<TateMismatch> first_difference(const TateSeries& a, const TateSeries& b) {
  auto [x, y] = align(a, b);
  TateSeries diff = x - y;
  if (diff.is_zero()) return std::nullopt;
  const auto& [e, body] = *diff.bodies().begin();
  auto coeffs = body.coefficients();
  const auto& exps = coeffs.front().first;
  return TateMismatch{exps, e, x.body(e).coefficient(exps).to_string(), y.body(e).coefficient(exps).to_string()};
}

TateSeries extend_scalars(const TateSeries& f, const RingPtr& target) {
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, b] : f.bodies()) bodies.emplace(e, extend_scalars(b, target));
  return TateSeries::from_parts(target, f.xvars(), f.weights(), f.trunc(), std::move(bodies), f.profile());
}

}  // namespace fgc
