#include "fgc/algebra/terms.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "fgc/algebra/errors.hpp"

namespace fgc {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : m.e) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace detail {

Monomial add_monomials(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSlots; ++i) {
    const int s = int{a.e[i]} + int{b.e[i]};
    if (s > kMaxExponent) throw PrecisionError("exponent overflow (> 255)");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

void normalize(Terms& terms) {
  std::sort(terms.begin(), terms.end(), canonical_less);
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms = std::move(out);
}

namespace {

template <bool Subtract>
Terms merge(const Terms& a, const Terms& b) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && canonical_less(a[i], b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || canonical_less(b[j], a[i])) {
      out.push_back(b[j]);
      if constexpr (Subtract) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Rational c = Subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back(Term{a[i].mono, a[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Terms add(const Terms& a, const Terms& b) { return merge<false>(a, b); }
Terms sub(const Terms& a, const Terms& b) { return merge<true>(a, b); }

Terms negate(const Terms& a) {
  Terms out = a;
  for (auto& t : out) t.coeff = -t.coeff;
  return out;
}

Terms scale(const Terms& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  Terms out = a;
  for (auto& t : out) t.coeff *= c;
  return out;
}

Terms mul(const Terms& a, const Terms& b, int key_limit) {
  if (a.empty() || b.empty()) return {};
  if (b.size() == 1) return shift(a, b[0].mono, b[0].key, b[0].coeff, key_limit);
  if (a.size() == 1) return shift(b, a[0].mono, a[0].key, a[0].coeff, key_limit);
  std::unordered_map<Monomial, std::pair<int, Rational>, MonomialHash> acc;
  acc.reserve(a.size() * 4);
  Rational prod;
  for (const auto& ta : a) {
    if (ta.key + b.front().key > key_limit) break;
    for (const auto& tb : b) {
      const int key = ta.key + tb.key;
      if (key > key_limit) break;
      mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(add_monomials(ta.mono, tb.mono), key, prod);
      if (!inserted) it->second.second += prod;
    }
  }
  Terms out;
  out.reserve(acc.size());
  for (auto& [m, kc] : acc) {
    if (sgn(kc.second) != 0) out.push_back(Term{m, kc.first, std::move(kc.second)});
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Terms shift(const Terms& a, const Monomial& m, int key, const Rational& c, int key_limit) {
  Terms out;
  out.reserve(a.size());
  for (const auto& t : a) {
    if (t.key + key > key_limit) break;
    out.push_back(Term{add_monomials(t.mono, m), t.key + key, t.coeff * c});
  }
  // Lexicographic order is translation invariant, so the output is canonical.
  return out;
}

Terms truncate(const Terms& a, int limit) {
  Terms out;
  for (const auto& t : a) {
    if (t.key > limit) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace detail
}  // namespace fgc
