#include "fgc/algebra/ring_element.hpp"

#include <limits>

#include "fgc/algebra/errors.hpp"

namespace fgc {

int monomial_degree(const GradedRing& ring, const Monomial& m, std::size_t first_slot) {
  int d = 0;
  const auto gens = ring.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) d += gens[i].degree * m.e[first_slot + i];
  return d;
}

void require_in_base(const GradedRing& ring, const Rational& value, std::string_view context) {
  if (ring.base() == Base::Integers && value.get_den() != 1) {
    throw DomainError(std::string(context) + ": non-exact division over integer base");
  }
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RingElement::RingElement(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw DomainError("null ring");
}

RingElement RingElement::constant(RingPtr ring, const Rational& value) {
  RingElement r(std::move(ring));
  require_in_base(*r.ring_, value, "constant");
  if (sgn(value) != 0) r.terms_.push_back(detail::Term{Monomial{}, 0, value});
  return r;
}

RingElement RingElement::generator(RingPtr ring, std::string_view name) {
  RingElement r(std::move(ring));
  auto idx = r.ring_->index_of(name);
  if (!idx) throw DomainError("unknown generator '" + std::string(name) + "'");
  Monomial m;
  m.e[*idx] = 1;
  r.terms_.push_back(detail::Term{m, r.ring_->generators()[*idx].degree, Rational(1)});
  return r;
}

RingElement RingElement::from_terms(RingPtr ring, detail::Terms terms) {
  RingElement r(std::move(ring));
  for (auto& t : terms) {
    for (std::size_t i = r.ring_->rank(); i < kMaxSlots; ++i) {
      if (t.mono.e[i] != 0) throw DomainError("term uses a slot outside the ring");
    }
    t.key = monomial_degree(*r.ring_, t.mono);
    require_in_base(*r.ring_, t.coeff, "ring element");
  }
  detail::normalize(terms);
  r.terms_ = std::move(terms);
  return r;
}

std::optional<Rational> RingElement::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono == Monomial{}) return terms_[0].coeff;
  return std::nullopt;
}

Rational RingElement::constant_term() const {
  for (const auto& t : terms_) {
    if (t.mono == Monomial{}) return t.coeff;
  }
  return Rational(0);
}

RingElement RingElement::operator-() const {
  RingElement r(ring_);
  r.terms_ = detail::negate(terms_);
  return r;
}

RingElement RingElement::scaled(const Rational& c) const {
  RingElement r(ring_);
  r.terms_ = detail::scale(terms_, c);
  for (const auto& t : r.terms_) require_in_base(*ring_, t.coeff, "scale");
  return r;
}

RingElement RingElement::pow(int exponent) const {
  if (exponent < 0) throw DomainError("negative exponent");
  RingElement result = constant(ring_, 1);
  RingElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  RingElement r(a.ring_);
  r.terms_ = detail::add(a.terms_, b.terms_);
  return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  RingElement r(a.ring_);
  r.terms_ = detail::sub(a.terms_, b.terms_);
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  RingElement r(a.ring_);
  r.terms_ = detail::mul(a.terms_, b.terms_, std::numeric_limits<int>::max() / 2);
  return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  const auto gens = ring_->generators();
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string mono;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int e = it->mono.e[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += gens[i].name;
      if (e > 1) mono += '^' + std::to_string(e);
    }
    Rational c = it->coeff;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    if (mono.empty()) {
      out += rational_to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += rational_to_string(c) + '*' + mono;
    }
  }
  return out;
}

std::optional<RingElement> unit_inverse(const RingElement& a) {
  auto c = a.constant_value();
  if (!c || sgn(*c) == 0) return std::nullopt;
  Rational inv = 1 / *c;
  if (a.ring()->base() == Base::Integers && inv.get_den() != 1) return std::nullopt;
  return RingElement::constant(a.ring(), inv);
}

bool is_unit(const RingElement& a) { return unit_inverse(a).has_value(); }

HomogeneousDegree homogeneous_degree(const RingElement& a) {
  if (a.is_zero()) return {};
  const int d = a.terms().front().key;
  for (const auto& t : a.terms()) {
    if (t.key != d) return {HomogeneousDegree::Kind::Inhomogeneous, 0};
  }
  return {HomogeneousDegree::Kind::Degree, d};
}

}  // namespace fgc
