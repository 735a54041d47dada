#include "fgc/charclass/charclass.hpp"

#include <map>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

const std::vector<std::string> kX{"x"};

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

ExpClass::ExpClass(TruncSeries f) : f_(std::move(f)) {
  if (f_.vars() != kX) {
    if (f_.nvars() > 1) throw DomainError("a characteristic series has one variable");
    if (f_.nvars() == 1) f_ = f_.renamed({{f_.vars()[0], "x"}});
    else f_ = f_.with_vars(kX);
  }
  if (f_.weights()[0] != 1) throw DomainError("characteristic series variable must have weight 1");
  if (!(f_.constant_term() == RingElement::constant(f_.ring(), 1))) {
    throw DomainError("characteristic series must have constant term 1");
  }
}

bool ExpClass::is_homogeneous() const {
  for (const auto& [e, c] : f_.coefficients()) {
    if (!homogeneous_degree(c).matches(2 * e[0])) return false;
  }
  return true;
}

BundleData BundleData::roots(int n, const std::string& prefix) {
  if (n < 0) throw DomainError("negative bundle rank");
  return BundleData{Kind::Roots, numbered(prefix, n)};
}

BundleData BundleData::roots(std::vector<std::string> names) { return BundleData{Kind::Roots, std::move(names)}; }

BundleData BundleData::classes(int n, const std::string& prefix) {
  if (n < 0) throw DomainError("negative bundle rank");
  return BundleData{Kind::Classes, numbered(prefix, n)};
}

TruncSeries elementary_symmetric(const RingPtr& ring, const std::vector<std::string>& roots, int k, int trunc) {
  // Coefficients of prod_i (1 + x_i z), built up one root at a time.
  std::vector<TruncSeries> e{TruncSeries::one(ring, roots, trunc)};
  for (const auto& r : roots) {
    TruncSeries x = TruncSeries::variable(ring, roots, r, trunc);
    e.push_back(TruncSeries(ring, roots, trunc));
    for (std::size_t j = e.size() - 1; j >= 1; --j) e[j] = e[j] + e[j - 1] * x;
  }
  if (k < 0 || k >= static_cast<int>(e.size())) return TruncSeries(ring, roots, trunc);
  return e[static_cast<std::size_t>(k)];
}

TruncSeries symmetric_expand(const TruncSeries& p, const std::vector<std::string>& roots,
                             const std::string& out_prefix) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> idx;
  for (const auto& r : roots) {
    idx.push_back(p.require_var(r));
    if (p.weights()[idx.back()] != 1) throw DomainError("roots must have weight 1");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(p.swapped(idx[i], idx[i + 1]) == p)) {
      throw DomainError("symmetric_expand: input is not symmetric in " + roots[i] + ", " + roots[i + 1]);
    }
  }

  // Work over a layout with the roots first and the other variables after.
  std::vector<std::string> in_vars = roots;
  std::vector<int> in_weights(n, 1);
  std::vector<std::string> out_vars = numbered(out_prefix, static_cast<int>(n));
  std::vector<int> out_weights;
  for (std::size_t k = 1; k <= n; ++k) out_weights.push_back(static_cast<int>(k));
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (std::find(roots.begin(), roots.end(), p.vars()[i]) != roots.end()) continue;
    in_vars.push_back(p.vars()[i]);
    in_weights.push_back(p.weights()[i]);
    out_vars.push_back(p.vars()[i]);
    out_weights.push_back(p.weights()[i]);
  }
  const RingPtr& ring = p.ring();
  const int D = p.trunc();
  TruncSeries rest = p.with_vars(in_vars, in_weights);
  TruncSeries layout(ring, in_vars, D, in_weights);

  std::vector<TruncSeries> e;
  for (std::size_t k = 0; k <= n; ++k) {
    e.push_back(elementary_symmetric(ring, roots, static_cast<int>(k), D).with_vars(in_vars, in_weights));
  }
  std::map<std::vector<int>, TruncSeries> cache;
  auto product = [&](const std::vector<int>& b) -> const TruncSeries& {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    TruncSeries acc = TruncSeries::one(ring, in_vars, D, in_weights);
    for (std::size_t k = 0; k < n; ++k) {
      for (int j = 0; j < b[k]; ++j) acc = acc * e[k + 1];
    }
    return cache.emplace(b, std::move(acc)).first->second;
  };

  const std::size_t nv_in = in_vars.size();
  detail::Terms out;
  while (!rest.is_zero()) {
    // Leading term: lowest degree, then lex-largest in the roots.
    const detail::Term lead = rest.terms().front();
    std::vector<int> b(n);
    for (std::size_t k = 0; k < n; ++k) {
      const int next = k + 1 < n ? lead.mono.e[k + 1] : 0;
      b[k] = lead.mono.e[k] - next;
      if (b[k] < 0) throw DomainError("symmetric_expand: leading exponent is not a partition");
    }
    // Monomial in the other variables and the generators stays attached.
    Monomial tail;
    for (std::size_t s = n; s < kMaxSlots; ++s) tail.e[s] = lead.mono.e[s];
    int tail_key = 0;
    for (std::size_t s = n; s < nv_in; ++s) tail_key += in_weights[s] * tail.e[s];
    detail::Terms sub = detail::shift(product(b).terms(), tail, tail_key, lead.coeff, D);
    rest = rest - TruncSeries::from_terms(ring, in_vars, in_weights, D, std::move(sub));

    Monomial m;
    for (std::size_t k = 0; k < n; ++k) m.e[k] = static_cast<std::uint8_t>(b[k]);
    for (std::size_t s = n; s < kMaxSlots; ++s) m.e[s] = lead.mono.e[s];
    out.push_back(detail::Term{m, 0, lead.coeff});
  }
  return TruncSeries::from_terms(ring, out_vars, out_weights, D, std::move(out));
}

TruncSeries symmetric_collapse(const TruncSeries& G, const std::vector<std::string>& symbols,
                               const std::vector<std::string>& roots) {
  Bindings b;
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (!G.index_of(symbols[k])) continue;
    b.emplace_back(symbols[k], elementary_symmetric(G.ring(), roots, static_cast<int>(k + 1), G.trunc()));
  }
  TruncSeries out = series_substitute(G, b);
  std::vector<std::string> vars = roots;
  std::vector<int> weights(roots.size(), 1);
  for (std::size_t i = 0; i < out.nvars(); ++i) {
    if (std::find(vars.begin(), vars.end(), out.vars()[i]) != vars.end()) continue;
    vars.push_back(out.vars()[i]);
    weights.push_back(out.weights()[i]);
  }
  return out.with_vars(vars, weights);
}

TruncSeries class_on_roots(const ExpClass& c, const std::vector<std::string>& roots) {
  TruncSeries acc = TruncSeries::one(c.ring(), roots, c.trunc());
  for (const auto& r : roots) acc = acc * c.series().renamed({{"x", r}}).with_vars(roots);
  return acc;
}

TruncSeries class_on_bundle(const ExpClass& c, const BundleData& V) {
  if (V.kind == BundleData::Kind::Roots) return class_on_roots(c, V.names);
  const auto roots = numbered("r", V.rank());
  TruncSeries G = symmetric_expand(class_on_roots(c, roots), roots, "sigma");
  std::map<std::string, std::string> names;
  for (int k = 1; k <= V.rank(); ++k) names["sigma" + std::to_string(k)] = V.names[static_cast<std::size_t>(k - 1)];
  return G.renamed(names);
}

ExpClass orientation_quotient(const TruncSeries& g) {
  if (g.nvars() != 1) throw DomainError("orientation_quotient: expects a one-variable series");
  const std::string& x = g.vars()[0];
  if (!g.constant_term().is_zero()) throw DomainError("orientation_quotient: g(0) must be 0");
  if (g.trunc() < 1 || !(g.coefficient({1}) == RingElement::constant(g.ring(), 1))) {
    throw DomainError("orientation_quotient: g'(0) must be 1");
  }
  detail::Terms shifted;
  for (const auto& t : g.terms()) {
    detail::Term s = t;
    s.mono.e[0] = static_cast<std::uint8_t>(s.mono.e[0] - 1);
    shifted.push_back(std::move(s));
  }
  (void)x;
  return ExpClass(TruncSeries::from_terms(g.ring(), kX, g.weights(), g.trunc() - 1, std::move(shifted)));
}

ExpClass hirzebruch_series(const FormalGroupLaw& F) {
  if (!F.ring()->is_q_algebra()) throw DomainError("hirzebruch_series needs a Q-algebra, got " + F.ring()->describe());
  return ExpClass(series_invert(orientation_quotient(fgl_exp(F)).series()));
}

TruncSeries euler_of_twist(const FormalGroupLaw& F, const std::vector<std::string>& roots, const std::string& t) {
  std::vector<std::string> vars = roots;
  vars.push_back(t);
  TruncSeries acc = TruncSeries::one(F.ring(), vars, F.trunc());
  for (const auto& r : roots) acc = acc * fgl_add_vars(F, r, t);
  return acc;
}

RingElement genus_cpn(const ExpClass& Q, int n) {
  if (n < 0) throw DomainError("genus_cpn: negative dimension");
  if (Q.trunc() < n) {
    throw PrecisionError("genus_cpn: truncation " + std::to_string(Q.trunc()) + " below dimension " +
                         std::to_string(n));
  }
  TruncSeries q = Q.series().truncated(n);
  TruncSeries p = TruncSeries::one(Q.ring(), kX, n);
  for (int k = 0; k <= n; ++k) p = p * q;
  return p.coefficient({n});
}

namespace {

// Builds sum_k c(k) x^k over Q.
template <typename Coeff>
TruncSeries rational_series(int D, Coeff coeff) {
  RingPtr Q = GradedRing::rationals();
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> cs;
  for (int k = 0; k <= D; ++k) {
    Rational c = coeff(k);
    if (c != 0) cs.emplace_back(TruncSeries::Exponents{k}, RingElement::constant(Q, c));
  }
  return TruncSeries::from_coefficients(Q, kX, D, cs);
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ExpClass todd_series(int D) {
  // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
  TruncSeries q = rational_series(D, [](int k) -> Rational { return Rational(k % 2 ? -1 : 1) / factorial(k + 1); });
  return ExpClass(series_invert(q));
}

ExpClass l_series(int D) {
  // x cosh x / sinh x, with sinh(x)/x = sum_k x^{2k} / (2k+1)!
  TruncSeries cosh = rational_series(D, [](int k) -> Rational { return k % 2 ? Rational(0) : Rational(1 / factorial(k)); });
  TruncSeries sinhc = rational_series(D, [](int k) -> Rational { return k % 2 ? Rational(0) : Rational(1 / factorial(k + 1)); });
  return ExpClass(cosh * series_invert(sinhc));
}

}  // namespace fgc
