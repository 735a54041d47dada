#pragma once

// Test helpers. Series are written as polynomials in the ring generators and
// the series variables, parsed through a scratch ring that treats the
// variables as extra generators. This keeps expected values readable and
// independent of the series arithmetic under test.

#include <doctest.h>

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fgc/algebra/errors.hpp"
#include "fgc/algebra/parse.hpp"
#include "fgc/algebra/tate_series.hpp"

namespace fgc::test {

inline RingPtr Z() { return GradedRing::integers(); }
inline RingPtr Q() { return GradedRing::rationals(); }
inline RingPtr Zu() { return GradedRing::polynomial(Base::Integers, {{"u", 2}}); }
inline RingPtr Qu() { return GradedRing::polynomial(Base::Rationals, {{"u", 2}}); }

inline RingPtr scratch_ring(const RingPtr& ring, const std::vector<std::string>& vars) {
  std::vector<Generator> gens(ring->generators().begin(), ring->generators().end());
  for (const auto& v : vars) gens.push_back({v, 2});
  return GradedRing::polynomial(ring->base(), gens);
}

inline TruncSeries poly(const std::string& text, const RingPtr& ring, const std::vector<std::string>& vars, int trunc,
                        const std::vector<int>& weights = {}) {
  RingPtr big = scratch_ring(ring, vars);
  RingElement p = parse_coeff(text, big);
  const std::size_t r = ring->rank();
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> coeffs;
  TruncSeries layout(ring, vars, trunc, weights);
  for (const auto& t : p.terms()) {
    TruncSeries::Exponents e(vars.size());
    detail::Terms c;
    Monomial m;
    for (std::size_t i = 0; i < r; ++i) m.e[i] = t.mono.e[i];
    for (std::size_t i = 0; i < vars.size(); ++i) e[i] = t.mono.e[r + i];
    c.push_back(detail::Term{m, 0, t.coeff});
    if (layout.weighted_degree(e) > trunc) continue;
    coeffs.emplace_back(e, RingElement::from_terms(ring, c));
  }
  return TruncSeries::from_coefficients(ring, vars, trunc, coeffs, weights);
}

inline RingElement elem(const std::string& text, const RingPtr& ring) { return parse_coeff(text, ring); }

// Asserts agreement to the smaller truncation, reporting the first mismatch.
inline void check_series_eq(const TruncSeries& a, const TruncSeries& b) {
  const int order = std::min(a.trunc(), b.trunc());
  auto diff = first_difference(a, b, order);
  if (diff) {
    std::string at;
    for (int e : diff->exponents) at += std::to_string(e) + " ";
    FAIL_CHECK("series differ at [" << at << "]: " << diff->lhs << " vs " << diff->rhs << "\n  lhs "
                                    << a.to_string() << "\n  rhs " << b.to_string());
  }
}

inline void check_tate_eq(const TateSeries& a, const TateSeries& b) {
  auto diff = first_difference(a, b);
  if (diff) {
    std::string at;
    for (int e : diff->exponents) at += std::to_string(e) + " ";
    FAIL_CHECK("Tate series differ at t^" << diff->t_exponent << " [" << at << "]: " << diff->lhs << " vs "
                                          << diff->rhs);
  }
}

// Random polynomial with small integer coefficients in the given variables.
inline TruncSeries random_series(std::mt19937_64& rng, const RingPtr& ring, const std::vector<std::string>& vars,
                                 int trunc, int max_coeff, bool constant_one) {
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  std::uniform_int_distribution<int> keep(0, 2);
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> cs;
  std::vector<int> e(vars.size(), 0);
  // Enumerate all exponent vectors of total degree <= trunc.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == vars.size()) {
      const int deg = trunc - left;
      if (deg == 0) {
        if (constant_one) cs.emplace_back(e, RingElement::constant(ring, 1));
        return;
      }
      if (keep(rng) == 0) return;
      const int c = coeff(rng);
      if (c != 0) cs.emplace_back(e, RingElement::constant(ring, c));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, trunc);
  return TruncSeries::from_coefficients(ring, vars, trunc, cs);
}

}  // namespace fgc::test

namespace fgc::test {

// Ring homomorphism on coefficients: each generator of the source ring is sent
// to an element of `target`. Used to specialize universal constructions.
inline RingElement specialize(const RingElement& a, const RingPtr& target,
                              const std::map<std::string, RingElement>& images) {
  RingElement out(target);
  const auto gens = a.ring()->generators();
  for (const auto& t : a.terms()) {
    RingElement m = RingElement::constant(target, t.coeff);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (t.mono.e[i]) m = m * images.at(gens[i].name).pow(t.mono.e[i]);
    }
    out = out + m;
  }
  return out;
}

inline TruncSeries specialize(const TruncSeries& s, const RingPtr& target,
                              const std::map<std::string, RingElement>& images) {
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> cs;
  for (const auto& [e, c] : s.coefficients()) cs.emplace_back(e, specialize(c, target, images));
  return TruncSeries::from_coefficients(target, s.vars(), s.trunc(), cs, s.weights());
}

}  // namespace fgc::test

namespace fgc::test {

// Evaluates a series at a rational point, keeping ring generators symbolic.
// Only meaningful when the series is a polynomial fully inside its truncation.
inline RingElement evaluate(const TruncSeries& s, const std::map<std::string, Rational>& point) {
  RingElement out(s.ring());
  for (const auto& [e, c] : s.coefficients()) {
    Rational v = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Rational p = point.at(s.vars()[i]);
      for (int k = 0; k < e[i]; ++k) v *= p;
    }
    out = out + c.scaled(v);
  }
  return out;
}

}  // namespace fgc::test
