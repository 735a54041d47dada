#include "fgc/algebra/graded_ring.hpp"

#include <cctype>
#include <set>

#include "fgc/algebra/errors.hpp"

namespace fgc {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

GradedRing::GradedRing(Base base, std::vector<Generator> generators)
    : base_(base), generators_(std::move(generators)) {
  if (generators_.size() > kMaxGenerators) throw DomainError("too many generators");
  std::set<std::string, std::less<>> seen;
  for (const auto& g : generators_) {
    if (!is_identifier(g.name)) throw DomainError("invalid generator name '" + g.name + "'");
    if (!seen.insert(g.name).second) throw DomainError("duplicate generator '" + g.name + "'");
    if (g.degree % 2 != 0) throw DomainError("generator '" + g.name + "' has odd degree");
  }
}

RingPtr GradedRing::integers() {
  static const RingPtr z(new GradedRing(Base::Integers, {}));
  return z;
}

RingPtr GradedRing::rationals() {
  static const RingPtr q(new GradedRing(Base::Rationals, {}));
  return q;
}

RingPtr GradedRing::polynomial(Base base, std::vector<Generator> generators) {
  return RingPtr(new GradedRing(base, std::move(generators)));
}

RingKind GradedRing::kind() const noexcept {
  if (!generators_.empty()) return RingKind::Polynomial;
  return base_ == Base::Integers ? RingKind::Integers : RingKind::Rationals;
}

std::optional<std::size_t> GradedRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string GradedRing::describe() const {
  std::string s = base_ == Base::Integers ? "Z" : "Q";
  if (generators_.empty()) return s;
  s += '[';
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ',';
    s += generators_[i].name + ':' + std::to_string(generators_[i].degree);
  }
  return s + ']';
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) {
    throw RingMismatch("ring mismatch: " + (a ? a->describe() : "null") + " vs " +
                       (b ? b->describe() : "null"));
  }
}

bool embeds_into(const GradedRing& from, const GradedRing& to) {
  if (from.is_q_algebra() && !to.is_q_algebra()) return false;
  for (const auto& g : from.generators()) {
    auto i = to.index_of(g.name);
    if (!i || to.generators()[*i].degree != g.degree) return false;
  }
  return true;
}

RingPtr ring_union(const RingPtr& a, const RingPtr& b) {
  if (embeds_into(*b, *a)) return a;
  if (embeds_into(*a, *b)) return b;
  std::vector<Generator> gens(a->generators().begin(), a->generators().end());
  for (const auto& g : b->generators()) {
    auto i = a->index_of(g.name);
    if (!i) {
      gens.push_back(g);
    } else if (gens[*i].degree != g.degree) {
      throw RingMismatch("generator " + g.name + " has different degrees in " + a->describe() + " and " +
                         b->describe());
    }
  }
  Base base = a->is_q_algebra() || b->is_q_algebra() ? Base::Rationals : Base::Integers;
  return GradedRing::polynomial(base, std::move(gens));
}

}  // namespace fgc
