#include "fgc/algebra/trunc_series.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

constexpr int kNoLimit = std::numeric_limits<int>::max() / 4;

std::vector<int> default_weights(const std::vector<std::string>& vars, std::vector<int> weights) {
  if (weights.empty()) return std::vector<int>(vars.size(), 1);
  if (weights.size() != vars.size()) throw DomainError("weight list length differs from variable list");
  for (int w : weights) {
    if (w < 1) throw DomainError("variable weights must be positive");
  }
  return weights;
}

int term_key(const Monomial& m, const std::vector<int>& weights) {
  int k = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) k += weights[i] * m.e[i];
  return k;
}

// Variable slots of a monomial as a comparable prefix.
bool same_var_part(const Monomial& a, const Monomial& b, std::size_t nvars) {
  return std::equal(a.e.begin(), a.e.begin() + static_cast<std::ptrdiff_t>(nvars), b.e.begin());
}

}  // namespace

TruncSeries::TruncSeries(RingPtr ring, std::vector<std::string> vars, int trunc, std::vector<int> weights)
    : ring_(std::move(ring)), vars_(std::move(vars)), trunc_(trunc) {
  if (!ring_) throw DomainError("null ring");
  weights_ = default_weights(vars_, std::move(weights));
  if (trunc_ < 0) throw DomainError("negative truncation order");
  if (vars_.size() + ring_->rank() > kMaxSlots) throw DomainError("too many variables and generators");
  std::set<std::string, std::less<>> seen;
  for (const auto& v : vars_) {
    if (!is_identifier(v)) throw DomainError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DomainError("duplicate variable '" + v + "'");
    if (ring_->index_of(v)) throw DomainError("variable '" + v + "' clashes with a ring generator");
  }
}

TruncSeries TruncSeries::from_terms(RingPtr ring, std::vector<std::string> vars, std::vector<int> weights,
                                    int trunc, detail::Terms terms) {
  TruncSeries s(std::move(ring), std::move(vars), trunc, std::move(weights));
  const std::size_t used = s.nvars() + s.ring_->rank();
  detail::Terms kept;
  kept.reserve(terms.size());
  for (auto& t : terms) {
    for (std::size_t i = used; i < kMaxSlots; ++i) {
      if (t.mono.e[i] != 0) throw DomainError("term uses an unknown slot");
    }
    t.key = term_key(t.mono, s.weights_);
    if (t.key > trunc) continue;
    require_in_base(*s.ring_, t.coeff, "series coefficient");
    kept.push_back(std::move(t));
  }
  detail::normalize(kept);
  s.terms_ = std::move(kept);
  return s;
}

TruncSeries TruncSeries::constant(RingPtr ring, std::vector<std::string> vars, int trunc, const RingElement& c,
                                  std::vector<int> weights) {
  require_same_ring(ring, c.ring());
  TruncSeries s(std::move(ring), std::move(vars), trunc, std::move(weights));
  const std::size_t nv = s.nvars();
  for (const auto& t : c.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < s.ring_->rank(); ++i) m.e[nv + i] = t.mono.e[i];
    s.terms_.push_back(detail::Term{m, 0, t.coeff});
  }
  detail::normalize(s.terms_);
  return s;
}

TruncSeries TruncSeries::one(RingPtr ring, std::vector<std::string> vars, int trunc, std::vector<int> weights) {
  RingElement c = RingElement::constant(ring, 1);
  return constant(std::move(ring), std::move(vars), trunc, c, std::move(weights));
}

TruncSeries TruncSeries::variable(RingPtr ring, std::vector<std::string> vars, std::string_view name, int trunc,
                                  std::vector<int> weights) {
  TruncSeries s(std::move(ring), std::move(vars), trunc, std::move(weights));
  const std::size_t i = s.require_var(name);
  Monomial m;
  m.e[i] = 1;
  if (s.weights_[i] <= trunc) s.terms_.push_back(detail::Term{m, s.weights_[i], Rational(1)});
  return s;
}

TruncSeries TruncSeries::from_coefficients(RingPtr ring, std::vector<std::string> vars, int trunc,
                                           const std::vector<std::pair<Exponents, RingElement>>& coefficients,
                                           std::vector<int> weights) {
  TruncSeries s(ring, std::move(vars), trunc, std::move(weights));
  const std::size_t nv = s.nvars();
  detail::Terms terms;
  for (const auto& [exps, c] : coefficients) {
    require_same_ring(ring, c.ring());
    if (exps.size() != nv) throw DomainError("exponent vector length differs from variable count");
    Monomial var_part;
    for (std::size_t i = 0; i < nv; ++i) {
      if (exps[i] < 0 || exps[i] > kMaxExponent) throw DomainError("exponent out of range");
      var_part.e[i] = static_cast<std::uint8_t>(exps[i]);
    }
    for (const auto& t : c.terms()) {
      Monomial m = var_part;
      for (std::size_t i = 0; i < ring->rank(); ++i) m.e[nv + i] = t.mono.e[i];
      terms.push_back(detail::Term{m, 0, t.coeff});
    }
  }
  return from_terms(std::move(ring), s.vars_, s.weights_, trunc, std::move(terms));
}

std::optional<std::size_t> TruncSeries::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == var) return i;
  }
  return std::nullopt;
}

std::size_t TruncSeries::require_var(std::string_view var) const {
  auto i = index_of(var);
  if (!i) throw DomainError("unknown variable '" + std::string(var) + "'");
  return *i;
}

int TruncSeries::valuation() const { return terms_.empty() ? trunc_ + 1 : terms_.front().key; }

int TruncSeries::weighted_degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size() && i < weights_.size(); ++i) d += weights_[i] * e[i];
  return d;
}

RingElement TruncSeries::coefficient(const Exponents& exponents) const {
  if (exponents.size() != nvars()) throw DomainError("exponent vector length differs from variable count");
  if (weighted_degree(exponents) > trunc_) {
    throw PrecisionError("coefficient requested beyond truncation order " + std::to_string(trunc_));
  }
  Monomial var_part;
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (exponents[i] < 0 || exponents[i] > kMaxExponent) return RingElement(ring_);
    var_part.e[i] = static_cast<std::uint8_t>(exponents[i]);
  }
  detail::Terms out;
  for (const auto& t : terms_) {
    if (!same_var_part(t.mono, var_part, nvars())) continue;
    Monomial g;
    for (std::size_t i = 0; i < ring_->rank(); ++i) g.e[i] = t.mono.e[nvars() + i];
    out.push_back(detail::Term{g, 0, t.coeff});
  }
  return RingElement::from_terms(ring_, std::move(out));
}

RingElement TruncSeries::constant_term() const { return coefficient(Exponents(nvars(), 0)); }

std::vector<std::pair<TruncSeries::Exponents, RingElement>> TruncSeries::coefficients() const {
  std::vector<std::pair<Exponents, RingElement>> out;
  const std::size_t nv = nvars();
  std::size_t i = 0;
  while (i < terms_.size()) {
    std::size_t j = i;
    detail::Terms group;
    while (j < terms_.size() && same_var_part(terms_[j].mono, terms_[i].mono, nv)) {
      Monomial g;
      for (std::size_t k = 0; k < ring_->rank(); ++k) g.e[k] = terms_[j].mono.e[nv + k];
      group.push_back(detail::Term{g, 0, terms_[j].coeff});
      ++j;
    }
    Exponents e(nv);
    for (std::size_t k = 0; k < nv; ++k) e[k] = terms_[i].mono.e[k];
    out.emplace_back(std::move(e), RingElement::from_terms(ring_, std::move(group)));
    i = j;
  }
  return out;
}

TruncSeries TruncSeries::truncated(int order) const {
  TruncSeries s = *this;
  s.trunc_ = std::min(order, trunc_);
  if (s.trunc_ < 0) throw DomainError("negative truncation order");
  s.terms_ = detail::truncate(terms_, s.trunc_);
  return s;
}

TruncSeries TruncSeries::homogeneous_part(int degree) const {
  TruncSeries s = *this;
  s.terms_.clear();
  for (const auto& t : terms_) {
    if (t.key == degree) s.terms_.push_back(t);
  }
  return s;
}

TruncSeries TruncSeries::scaled(const RingElement& c) const {
  return *this * constant(ring_, vars_, trunc_, c, weights_);
}

TruncSeries TruncSeries::scaled(const Rational& c) const {
  TruncSeries s = *this;
  s.terms_ = detail::scale(terms_, c);
  for (const auto& t : s.terms_) require_in_base(*ring_, t.coeff, "scale");
  return s;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s = *this;
  s.terms_ = detail::negate(terms_);
  return s;
}

std::pair<std::vector<std::string>, std::vector<int>> merge_vars(const TruncSeries& a, const TruncSeries& b) {
  std::vector<std::string> vars = a.vars();
  std::vector<int> weights = a.weights();
  for (std::size_t i = 0; i < b.nvars(); ++i) {
    if (auto j = a.index_of(b.vars()[i])) {
      if (a.weights()[*j] != b.weights()[i]) {
        throw DomainError("variable '" + b.vars()[i] + "' has conflicting weights");
      }
    } else {
      vars.push_back(b.vars()[i]);
      weights.push_back(b.weights()[i]);
    }
  }
  return {std::move(vars), std::move(weights)};
}

namespace {

// Brings two series onto a common variable layout.
std::pair<TruncSeries, TruncSeries> align(const TruncSeries& a, const TruncSeries& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.vars() == b.vars() && a.weights() == b.weights()) return {a, b};
  auto [vars, weights] = merge_vars(a, b);
  return {a.with_vars(vars, weights), b.with_vars(vars, weights)};
}

bool same_layout(const TruncSeries& a, const TruncSeries& b) {
  return a.vars() == b.vars() && a.weights() == b.weights();
}

}  // namespace

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  if (!same_layout(a, b)) {
    auto [x, y] = align(a, b);
    return x + y;
  }
  require_same_ring(a.ring_, b.ring_);
  TruncSeries s(a.ring_, a.vars_, std::min(a.trunc_, b.trunc_), a.weights_);
  s.terms_ = detail::add(detail::truncate(a.terms_, s.trunc_), detail::truncate(b.terms_, s.trunc_));
  return s;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  if (!same_layout(a, b)) {
    auto [x, y] = align(a, b);
    return x - y;
  }
  require_same_ring(a.ring_, b.ring_);
  TruncSeries s(a.ring_, a.vars_, std::min(a.trunc_, b.trunc_), a.weights_);
  s.terms_ = detail::sub(detail::truncate(a.terms_, s.trunc_), detail::truncate(b.terms_, s.trunc_));
  return s;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (!same_layout(a, b)) {
    auto [x, y] = align(a, b);
    return x * y;
  }
  require_same_ring(a.ring_, b.ring_);
  TruncSeries s(a.ring_, a.vars_, std::min(a.trunc_, b.trunc_), a.weights_);
  s.terms_ = detail::mul(a.terms_, b.terms_, s.trunc_);
  return s;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (!(*a.ring_ == *b.ring_) || a.vars_ != b.vars_ || a.weights_ != b.weights_ || a.trunc_ != b.trunc_) {
    return false;
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

TruncSeries TruncSeries::with_vars(const std::vector<std::string>& vars, const std::vector<int>& weights) const {
  TruncSeries s(ring_, vars, trunc_, weights);
  std::vector<std::size_t> target(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto j = s.index_of(vars_[i]);
    if (j) {
      if (s.weights_[*j] != weights_[i]) throw DomainError("variable '" + vars_[i] + "' changes weight");
      target[i] = *j;
    } else {
      target[i] = kMaxSlots;
    }
  }
  const std::size_t nv = s.nvars();
  detail::Terms terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.mono.e[i] == 0) continue;
      if (target[i] == kMaxSlots) throw DomainError("variable '" + vars_[i] + "' is used but not retained");
      m.e[target[i]] = t.mono.e[i];
    }
    for (std::size_t k = 0; k < ring_->rank(); ++k) m.e[nv + k] = t.mono.e[nvars() + k];
    terms.push_back(detail::Term{m, t.key, t.coeff});
  }
  detail::normalize(terms);
  s.terms_ = std::move(terms);
  return s;
}

TruncSeries TruncSeries::renamed(const std::map<std::string, std::string>& names) const {
  std::vector<std::string> vars = vars_;
  for (auto& v : vars) {
    if (auto it = names.find(v); it != names.end()) v = it->second;
  }
  TruncSeries s(ring_, vars, trunc_, weights_);
  s.terms_ = terms_;
  return s;
}

TruncSeries TruncSeries::without_unused_vars() const {
  std::vector<std::string> vars;
  std::vector<int> weights;
  for (std::size_t i = 0; i < nvars(); ++i) {
    const bool used = std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.mono.e[i] != 0; });
    if (used) {
      vars.push_back(vars_[i]);
      weights.push_back(weights_[i]);
    }
  }
  return with_vars(vars, weights);
}

TruncSeries TruncSeries::set_zero(std::string_view var) const {
  const std::size_t i = require_var(var);
  TruncSeries s = *this;
  s.terms_.clear();
  for (const auto& t : terms_) {
    if (t.mono.e[i] == 0) s.terms_.push_back(t);
  }
  return s;
}

TruncSeries TruncSeries::swapped(std::size_t i, std::size_t j) const {
  if (i >= nvars() || j >= nvars()) throw DomainError("variable index out of range");
  if (weights_[i] != weights_[j]) throw DomainError("cannot swap variables of different weight");
  TruncSeries s = *this;
  for (auto& t : s.terms_) std::swap(t.mono.e[i], t.mono.e[j]);
  detail::normalize(s.terms_);
  return s;
}

TruncSeries TruncSeries::derivative(std::string_view var) const {
  const std::size_t i = require_var(var);
  TruncSeries s(ring_, vars_, std::max(0, trunc_ - weights_[i]), weights_);
  detail::Terms terms;
  for (const auto& t : terms_) {
    if (t.mono.e[i] == 0) continue;
    Monomial m = t.mono;
    const int e = m.e[i];
    m.e[i] = static_cast<std::uint8_t>(e - 1);
    terms.push_back(detail::Term{m, t.key - weights_[i], t.coeff * e});
  }
  detail::normalize(terms);
  s.terms_ = detail::truncate(terms, s.trunc_);
  return s;
}

TruncSeries TruncSeries::integral(std::string_view var) const {
  const std::size_t i = require_var(var);
  if (weights_[i] != 1) throw DomainError("integration requires a weight-1 variable");
  TruncSeries s(ring_, vars_, trunc_ + 1, weights_);
  detail::Terms terms;
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const int e = m.e[i] + 1;
    if (e > kMaxExponent) throw PrecisionError("exponent overflow");
    m.e[i] = static_cast<std::uint8_t>(e);
    Rational c = t.coeff / e;
    require_in_base(*ring_, c, "integration");
    terms.push_back(detail::Term{m, t.key + 1, c});
  }
  detail::normalize(terms);
  s.terms_ = std::move(terms);
  return s;
}

std::string TruncSeries::to_string() const {
  const std::string tail = vars_.empty() ? "" : " + O(deg " + std::to_string(trunc_ + 1) + ")";
  if (terms_.empty()) return "0" + tail;
  std::string out;
  for (const auto& [e, c] : coefficients()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    out += '(' + c.to_string() + ')';
    if (!mono.empty()) out += '*' + mono;
  }
  return out + tail;
}

std::optional<SeriesMismatch> first_difference(const TruncSeries& a, const TruncSeries& b, int order) {
  if (order > a.trunc() || order > b.trunc()) {
    throw PrecisionError("comparison order " + std::to_string(order) + " exceeds truncation");
  }
  auto [x, y] = align(a, b);
  TruncSeries diff = (x - y).truncated(order);
  if (diff.is_zero()) return std::nullopt;
  auto coeffs = diff.coefficients();
  const auto& e = coeffs.front().first;
  return SeriesMismatch{e, x.coefficient(e).to_string(), y.coefficient(e).to_string()};
}

bool agree_to(const TruncSeries& a, const TruncSeries& b, int order) {
  return !first_difference(a, b, order).has_value();
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct SubstContext {
  const TruncSeries* f;
  std::vector<std::string> vars;
  std::vector<int> weights;
  int trunc;
  std::vector<TruncSeries> images;               // one per variable of f
  std::vector<std::vector<TruncSeries>> powers;  // cached powers of images

  const TruncSeries& power(std::size_t slot, int e) {
    auto& p = powers[slot];
    if (p.empty()) p.push_back(TruncSeries::one(f->ring(), vars, trunc, weights));
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * images[slot]);
    return p[static_cast<std::size_t>(e)];
  }

  TruncSeries constant_of(const std::vector<const detail::Term*>& terms) const {
    const std::size_t nv_f = f->nvars();
    const std::size_t nv = vars.size();
    detail::Terms out;
    for (const auto* t : terms) {
      Monomial m;
      for (std::size_t k = 0; k < f->ring()->rank(); ++k) m.e[nv + k] = t->mono.e[nv_f + k];
      out.push_back(detail::Term{m, 0, t->coeff});
    }
    return TruncSeries::from_terms(f->ring(), vars, weights, trunc, std::move(out));
  }

  TruncSeries expand(const std::vector<const detail::Term*>& terms, std::size_t slot) {
    if (slot == f->nvars()) return constant_of(terms);
    std::map<int, std::vector<const detail::Term*>> groups;
    for (const auto* t : terms) groups[t->mono.e[slot]].push_back(t);
    TruncSeries result(f->ring(), vars, trunc, weights);
    for (const auto& [e, group] : groups) {
      TruncSeries inner = expand(group, slot + 1);
      if (e == 0) {
        result = result + inner;
      } else if (images[slot].is_zero()) {
        continue;
      } else {
        result = result + power(slot, e) * inner;
      }
    }
    return result;
  }
};

// Ceiling of p/q for positive q.
int ceil_div(long p, long q) { return static_cast<int>((p + q - 1) / q); }

}  // namespace

TruncSeries series_substitute(const TruncSeries& f, const Bindings& bindings) {
  std::vector<const TruncSeries*> bound(f.nvars(), nullptr);
  for (const auto& [name, g] : bindings) {
    auto i = f.index_of(name);
    if (!i) continue;
    require_same_ring(f.ring(), g.ring());
    if (!g.constant_term().is_zero()) {
      throw DomainError("replacement for '" + name + "' has a nonzero constant term");
    }
    bound[*i] = &g;
  }

  // Result layout: unbound variables of f, then the variables of the bindings.
  TruncSeries layout(f.ring(), {}, 0);
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (!bound[i]) {
      auto [v, w] = merge_vars(layout, TruncSeries(f.ring(), {f.vars()[i]}, 0, {f.weights()[i]}));
      layout = TruncSeries(f.ring(), v, 0, w);
    }
  }
  for (const auto* g : bound) {
    if (g) {
      auto [v, w] = merge_vars(layout, *g);
      layout = TruncSeries(f.ring(), v, 0, w);
    }
  }

  // Precision: used replacements are known to their truncations; the unknown
  // tail of f (weighted degree > trunc_f) lands in degree > r * (trunc_f + 1)
  // where r is the smallest ratio valuation(image) / weight(variable).
  int trunc = kNoLimit;
  long num = 0, den = 0;  // r = num / den; den == 0 means no variables yet
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    long v = f.weights()[i];
    if (bound[i]) {
      const bool used =
          std::any_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return t.mono.e[i] != 0; });
      if (used) trunc = std::min(trunc, bound[i]->trunc());
      v = bound[i]->valuation();
    }
    const long w = f.weights()[i];
    if (den == 0 || v * den < num * w) {
      num = v;
      den = w;
    }
  }
  const int f_limit = den == 0 ? f.trunc() : ceil_div(num * (static_cast<long>(f.trunc()) + 1), den) - 1;
  trunc = std::min(trunc, f_limit);

  SubstContext ctx{&f, layout.vars(), layout.weights(), trunc, {}, {}};
  ctx.images.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (bound[i]) {
      ctx.images.push_back(bound[i]->with_vars(ctx.vars, ctx.weights).truncated(trunc));
    } else {
      ctx.images.push_back(TruncSeries::variable(f.ring(), ctx.vars, f.vars()[i], trunc, ctx.weights));
    }
  }
  ctx.powers.resize(f.nvars());
  std::vector<const detail::Term*> all;
  all.reserve(f.terms().size());
  for (const auto& t : f.terms()) all.push_back(&t);
  return ctx.expand(all, 0);
}

// ---------------------------------------------------------------------------
// Inversion, square roots, reversion

namespace {

// Splits canonical terms into homogeneous components indexed by key.
std::vector<detail::Terms> components(const detail::Terms& terms, int trunc) {
  std::vector<detail::Terms> out(static_cast<std::size_t>(trunc) + 1);
  for (const auto& t : terms) out[static_cast<std::size_t>(t.key)].push_back(t);
  return out;
}

detail::Terms flatten(std::vector<detail::Terms>& parts) {
  detail::Terms out;
  for (auto& p : parts) {
    for (auto& t : p) out.push_back(std::move(t));
  }
  detail::normalize(out);
  return out;
}

}  // namespace

TruncSeries series_invert(const TruncSeries& f) {
  auto c_inv = unit_inverse(f.constant_term());
  if (!c_inv) throw DomainError("series_invert: constant term " + f.constant_term().to_string() + " is not a unit");
  const int D = f.trunc();
  auto fc = components(f.terms(), D);
  const Rational cinv = c_inv->constant_term();
  std::vector<detail::Terms> g(static_cast<std::size_t>(D) + 1);
  g[0] = detail::Terms{detail::Term{Monomial{}, 0, cinv}};
  for (int d = 1; d <= D; ++d) {
    detail::Terms acc;
    for (int i = 1; i <= d; ++i) {
      if (fc[static_cast<std::size_t>(i)].empty() || g[static_cast<std::size_t>(d - i)].empty()) continue;
      acc = detail::add(acc, detail::mul(fc[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(d - i)], d));
    }
    g[static_cast<std::size_t>(d)] = detail::scale(acc, -cinv);
  }
  return TruncSeries::from_terms(f.ring(), f.vars(), f.weights(), D, flatten(g));
}

TruncSeries series_sqrt(const TruncSeries& f) {
  if (!(f.constant_term() == RingElement::constant(f.ring(), 1))) {
    throw DomainError("series_sqrt: constant term must be 1");
  }
  const int D = f.trunc();
  auto fc = components(f.terms(), D);
  std::vector<detail::Terms> g(static_cast<std::size_t>(D) + 1);
  g[0] = detail::Terms{detail::Term{Monomial{}, 0, Rational(1)}};
  const Rational half(1, 2);
  for (int d = 1; d <= D; ++d) {
    detail::Terms acc = fc[static_cast<std::size_t>(d)];
    for (int i = 1; i < d; ++i) {
      if (g[static_cast<std::size_t>(i)].empty() || g[static_cast<std::size_t>(d - i)].empty()) continue;
      acc = detail::sub(acc, detail::mul(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(d - i)], d));
    }
    g[static_cast<std::size_t>(d)] = detail::scale(acc, half);
    for (const auto& t : g[static_cast<std::size_t>(d)]) require_in_base(*f.ring(), t.coeff, "series_sqrt");
  }
  return TruncSeries::from_terms(f.ring(), f.vars(), f.weights(), D, flatten(g));
}

TruncSeries series_reversion(const TruncSeries& f) {
  if (f.nvars() != 1) throw DomainError("series_reversion: expects a one-variable series");
  if (f.weights()[0] != 1) throw DomainError("series_reversion: variable must have weight 1");
  if (!f.constant_term().is_zero()) throw DomainError("series_reversion: f(0) must be 0");
  const int D = f.trunc();
  if (D < 1) throw PrecisionError("series_reversion: truncation order must be at least 1");
  auto a1_inv = unit_inverse(f.coefficient({1}));
  if (!a1_inv) throw DomainError("series_reversion: linear coefficient is not a unit");

  // Lagrange inversion: [x^n] g = (1/n) [x^(n-1)] h^n with h = x / f(x).
  const std::string& x = f.vars()[0];
  detail::Terms shifted;
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.e[0] = static_cast<std::uint8_t>(m.e[0] - 1);
    shifted.push_back(detail::Term{m, t.key - 1, t.coeff});
  }
  TruncSeries quotient = TruncSeries::from_terms(f.ring(), f.vars(), f.weights(), D - 1, std::move(shifted));
  // Lagrange divides by n; work over Q and check exactness at the end.
  TruncSeries h = series_invert(quotient);
  TruncSeries hp = TruncSeries::one(f.ring(), f.vars(), D - 1);
  detail::Terms out;
  for (int n = 1; n <= D; ++n) {
    hp = hp * h;
    for (const auto& t : hp.terms()) {
      if (t.key != n - 1) continue;
      Monomial m = t.mono;
      m.e[0] = static_cast<std::uint8_t>(n);
      out.push_back(detail::Term{m, n, t.coeff / n});
    }
  }
  (void)x;
  return TruncSeries::from_terms(f.ring(), f.vars(), f.weights(), D, std::move(out));
}

TruncSeries extend_scalars(const TruncSeries& s, const RingPtr& target) {
  if (s.ring() == target || *s.ring() == *target) {
    return TruncSeries::from_terms(target, s.vars(), s.weights(), s.trunc(), s.terms());
  }
  if (!embeds_into(*s.ring(), *target)) {
    throw RingMismatch("cannot extend " + s.ring()->describe() + " to " + target->describe());
  }
  const std::size_t n = s.nvars();
  std::vector<std::size_t> slot;
  for (const auto& g : s.ring()->generators()) slot.push_back(n + *target->index_of(g.name));
  if (n + target->rank() > kMaxSlots) throw DomainError("too many variables and generators");
  detail::Terms terms;
  terms.reserve(s.terms().size());
  for (const auto& t : s.terms()) {
    detail::Term u{Monomial{}, 0, t.coeff};
    for (std::size_t i = 0; i < n; ++i) u.mono.e[i] = t.mono.e[i];
    for (std::size_t g = 0; g < slot.size(); ++g) u.mono.e[slot[g]] = t.mono.e[n + g];
    terms.push_back(std::move(u));
  }
  return TruncSeries::from_terms(target, s.vars(), s.weights(), s.trunc(), std::move(terms));
}

}  // namespace fgc
