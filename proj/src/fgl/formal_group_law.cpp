#include "fgc/fgl/formal_group_law.hpp"

#include <algorithm>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kX{"x"};

constexpr int kMaxOrder = 40;

void check_order(int D) {
  if (D < 1) throw DomainError("law order must be at least 1");
  if (D > kMaxOrder) throw DomainError("law order " + std::to_string(D) + " exceeds the supported bound " +
                                       std::to_string(kMaxOrder));
}

TruncSeries var(const RingPtr& ring, const std::vector<std::string>& vars, const std::string& name, int D) {
  return TruncSeries::variable(ring, vars, name, D);
}

}  // namespace

FormalGroupLaw::FormalGroupLaw(TruncSeries F, std::string name) : F_(std::move(F)), name_(std::move(name)) {
  if (F_.vars() != kXY) F_ = F_.with_vars(kXY);
  if (F_.weights() != std::vector<int>{1, 1}) throw DomainError("law variables must have weight 1");
}

FormalGroupLaw FormalGroupLaw::with_verified(int order) const {
  FormalGroupLaw copy = *this;
  copy.verified_to_ = std::max(verified_to_, std::min(order, trunc()));
  return copy;
}

RingElement FormalGroupLaw::coefficient(int i, int j) const { return F_.coefficient({i, j}); }

FormalGroupLaw FormalGroupLaw::additive(int D, RingPtr ring) {
  check_order(D);
  FormalGroupLaw F(var(ring, kXY, "x", D) + var(ring, kXY, "y", D), "additive");
  return F.with_verified(D);
}

FormalGroupLaw FormalGroupLaw::multiplicative(int D, RingPtr ring) {
  check_order(D);
  if (!ring) ring = GradedRing::polynomial(Base::Integers, {{"u", 2}});
  if (ring->rank() != 1 || ring->generators()[0].degree != 2) {
    throw DomainError("multiplicative law needs a ring with a single degree-2 generator");
  }
  const std::string u = ring->generators()[0].name;
  TruncSeries x = var(ring, kXY, "x", D), y = var(ring, kXY, "y", D);
  FormalGroupLaw F(x + y + (x * y).scaled(RingElement::generator(ring, u)), "multiplicative");
  return F.with_verified(D);
}

FormalGroupLaw FormalGroupLaw::universal_rational(int k_max, int D) {
  check_order(D);
  if (k_max < 1 || k_max > 12) throw DomainError("universal_rational needs 1 <= k_max <= 12");
  std::vector<Generator> gens;
  for (int k = 1; k <= k_max; ++k) gens.push_back({"m" + std::to_string(k), 2 * k});
  RingPtr ring = GradedRing::polynomial(Base::Rationals, gens);
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> coeffs{{{1}, RingElement::constant(ring, 1)}};
  for (int k = 1; k <= k_max && k + 1 <= D; ++k) {
    coeffs.emplace_back(TruncSeries::Exponents{k + 1}, RingElement::generator(ring, gens[k - 1].name));
  }
  TruncSeries log = TruncSeries::from_coefficients(ring, kX, D, coeffs);
  TruncSeries exp = series_reversion(log);
  TruncSeries sum = log + log.renamed({{"x", "y"}});
  FormalGroupLaw F(series_substitute(exp, {{"x", sum}}), "universal_rational(" + std::to_string(k_max) + ")");
  return F.with_verified(D);
}

FormalGroupLaw FormalGroupLaw::jacobi_quartic(int D) {
  check_order(D);
  RingPtr ring = GradedRing::polynomial(Base::Rationals, {{"delta", 4}, {"epsilon", 8}});
  RingElement delta = RingElement::generator(ring, "delta");
  RingElement eps = RingElement::generator(ring, "epsilon");
  TruncSeries x = var(ring, kX, "x", D);
  TruncSeries x2 = x * x;
  TruncSeries quartic = TruncSeries::one(ring, kX, D) + x2.scaled(delta.scaled(-2)) + (x2 * x2).scaled(eps);
  TruncSeries Rx = series_sqrt(quartic);
  TruncSeries Ry = Rx.renamed({{"x", "y"}});
  TruncSeries X = var(ring, kXY, "x", D), Y = var(ring, kXY, "y", D);
  TruncSeries numerator = X * Ry + Y * Rx;
  TruncSeries denominator = TruncSeries::one(ring, kXY, D) - (X * X * Y * Y).scaled(eps);
  FormalGroupLaw F(numerator * series_invert(denominator), "jacobi_quartic");
  return F.with_verified(D);
}

FormalGroupLaw FormalGroupLaw::broken_example(int D) {
  check_order(D);
  RingPtr ring = GradedRing::integers();
  TruncSeries x = var(ring, kXY, "x", D), y = var(ring, kXY, "y", D);
  return FormalGroupLaw(x + y + x * x, "broken-example");
}

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{"additive", "multiplicative", "universal_rational", "jacobi_quartic",
                                              "broken-example"};
  return names;
}

std::optional<std::string> canonical_law_name(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (const auto& n : law_names()) {
    std::string m = n;
    std::replace(m.begin(), m.end(), '-', '_');
    if (m == key) return n;
  }
  return std::nullopt;
}

FormalGroupLaw make_law(const LawSpec& spec, int D) {
  auto name = canonical_law_name(spec.name);
  if (!name) throw DomainError("unknown law '" + spec.name + "'");
  if (*name == "additive") {
    return FormalGroupLaw::additive(D, spec.rational ? GradedRing::rationals() : GradedRing::integers());
  }
  if (*name == "multiplicative") {
    return FormalGroupLaw::multiplicative(
        D, GradedRing::polynomial(spec.rational ? Base::Rationals : Base::Integers, {{"u", 2}}));
  }
  if (*name == "universal_rational") return FormalGroupLaw::universal_rational(spec.gens, D);
  if (*name == "jacobi_quartic") return FormalGroupLaw::jacobi_quartic(D);
  return FormalGroupLaw::broken_example(D);
}

TruncSeries fgl_apply(const FormalGroupLaw& F, const TruncSeries& f, const TruncSeries& g) {
  return series_substitute(F.series(), {{"x", f}, {"y", g}});
}

TruncSeries fgl_add_vars(const FormalGroupLaw& F, const std::string& a, const std::string& b) {
  const std::vector<std::string> vars = a == b ? std::vector<std::string>{a} : std::vector<std::string>{a, b};
  return fgl_apply(F, var(F.ring(), vars, a, F.trunc()), var(F.ring(), vars, b, F.trunc()));
}

TruncSeries fgl_inverse(const FormalGroupLaw& F) {
  // Each pass i <- i - F(x, i) fixes at least one more degree, because
  // (dF/dy)(x, i) = 1 + O(x).
  TruncSeries x = var(F.ring(), kX, "x", F.trunc());
  TruncSeries inv = -x;
  for (int k = 0; k < F.trunc(); ++k) {
    TruncSeries residual = fgl_apply(F, x, inv);
    if (residual.is_zero()) break;
    inv = inv - residual;
  }
  return inv;
}

TruncSeries fgl_nseries(const FormalGroupLaw& F, int n) {
  TruncSeries x = var(F.ring(), kX, "x", F.trunc());
  if (n == 0) return TruncSeries(F.ring(), kX, F.trunc());
  TruncSeries step = n > 0 ? x : fgl_inverse(F);
  TruncSeries acc = step;
  for (int k = 1; k < std::abs(n); ++k) acc = fgl_apply(F, acc, step);
  return acc;
}

TruncSeries fgl_log(const FormalGroupLaw& F) {
  if (!F.ring()->is_q_algebra()) throw DomainError("fgl_log needs a Q-algebra, got " + F.ring()->describe());
  TruncSeries dF = F.series().derivative("y").set_zero("y").with_vars(kX);
  return series_invert(dF).integral("x");
}

TruncSeries fgl_exp(const FormalGroupLaw& F) { return series_reversion(fgl_log(F)); }

namespace {

int degree_of(const std::vector<int>& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

FglFailure failure(std::string axiom, const SeriesMismatch& m) {
  return FglFailure{std::move(axiom), m.exponents, m.lhs, m.rhs};
}

}  // namespace

FglReport fgl_verify(const FormalGroupLaw& F, int order) {
  if (order < 1) throw DomainError("verification order must be at least 1");
  if (order > F.trunc()) {
    throw PrecisionError("verification order " + std::to_string(order) + " exceeds law order " +
                         std::to_string(F.trunc()));
  }
  FglReport report;
  report.order = order;
  const RingPtr& R = F.ring();
  auto note = [&](FglFailure f) {
    if (!report.first_failure) report.first_failure = std::move(f);
  };

  TruncSeries x = var(R, kXY, "x", order), y = var(R, kXY, "y", order);
  TruncSeries G = F.series().truncated(order);

  if (auto m = first_difference(G.set_zero("y"), x, order)) {
    report.unital = false;
    note(failure("unital", *m));
  } else if (auto m2 = first_difference(G.set_zero("x"), y, order)) {
    report.unital = false;
    note(failure("unital", *m2));
  }

  if (auto m = first_difference(G, G.swapped(0, 1), order)) {
    report.commutative = false;
    note(failure("commutative", *m));
  }

  const std::vector<std::string> xyz{"x", "y", "z"};
  TruncSeries X = var(R, xyz, "x", order), Y = var(R, xyz, "y", order), Z = var(R, xyz, "z", order);
  FormalGroupLaw law(G, F.name());
  TruncSeries left = fgl_apply(law, fgl_apply(law, X, Y), Z);
  TruncSeries right = fgl_apply(law, X, fgl_apply(law, Y, Z));
  if (auto m = first_difference(left, right, order)) {
    report.associative_to = degree_of(m->exponents) - 1;
    note(failure("associative", *m));
  } else {
    report.associative_to = order;
  }

  for (const auto& [e, c] : G.coefficients()) {
    const int want = 2 * (degree_of(e) - 1);
    if (!homogeneous_degree(c).matches(want)) {
      report.homogeneous = false;
      note(FglFailure{"homogeneous", e, c.to_string(), "degree " + std::to_string(want)});
      break;
    }
  }
  return report;
}

FormalGroupLaw extend_scalars(const FormalGroupLaw& F, const RingPtr& target) {
  if (*F.ring() == *target) return F;
  return FormalGroupLaw(extend_scalars(F.series(), target), F.name()).with_verified(F.verified_to());
}

}  // namespace fgc
