#include "support.hpp"

#include "fgc/cnstruct/cnstruct.hpp"

using namespace fgc;
using namespace fgc::test;

namespace {

RingPtr Zv() { return GradedRing::polynomial(Base::Integers, {{"v", 2}}); }

// 1 + (random polynomial of degree <= degree), known to degree `trunc`.
TruncSeries random_unit(std::mt19937_64& rng, const RingPtr& ring, int degree, int trunc) {
  auto p = random_series(rng, ring, {"x"}, degree, 3, true);
  return TruncSeries::from_coefficients(ring, {"x"}, trunc, p.coefficients());
}

TateSeries plain(const TruncSeries& s) { return TateSeries::from_body(s, 0); }

// Composite pullback: slots of level n-1 through face a, then level n through face b.
std::vector<TruncSeries> compose(int a, int b, int n, const FormalGroupLaw& F, int D) {
  auto inner = bar_map(a, n - 1, F, D);
  auto outer = bar_map(b, n, F, D);
  Bindings bindings;
  for (int k = 0; k < n; ++k) bindings.emplace_back("x" + std::to_string(k), outer[static_cast<std::size_t>(k)]);
  std::vector<TruncSeries> out;
  for (const auto& s : inner) out.push_back(series_substitute(s, bindings).with_vars(face_variables(n)));
  return out;
}

}  // namespace

TEST_CASE("face maps") {
  auto add = FormalGroupLaw::additive(5);
  auto d1 = bar_map(1, 1, add, 5);
  REQUIRE(d1.size() == 1);
  check_series_eq(d1[0], poly("x0+x1", Z(), {"x0", "x1"}, 5));
  check_series_eq(bar_map(0, 1, add, 5)[0], poly("x1", Z(), {"x0", "x1"}, 5));
  check_series_eq(bar_map(2, 1, add, 5)[0], poly("x0", Z(), {"x0", "x1"}, 5));

  auto d2 = bar_map(2, 2, add, 5);
  check_series_eq(d2[0], poly("x0", Z(), {"x0", "x1", "x2"}, 5));
  check_series_eq(d2[1], poly("x1+x2", Z(), {"x0", "x1", "x2"}, 5));

  auto mult = FormalGroupLaw::multiplicative(5);
  check_series_eq(bar_map(1, 1, mult, 5)[0], poly("x0+x1+u*x0*x1", Zu(), {"x0", "x1"}, 5));

  CHECK_THROWS_AS(bar_map(3, 1, add, 5), DomainError);
  CHECK_THROWS_AS(bar_map(-1, 1, add, 5), DomainError);
  CHECK_THROWS_AS(bar_map(1, 1, add, 6), PrecisionError);
}

TEST_CASE("simplicial identities d_i d_j = d_{j-1} d_i") {
  for (const auto& F : {FormalGroupLaw::multiplicative(5), FormalGroupLaw::universal_rational(3, 5)}) {
    for (int n = 1; n <= 3; ++n) {
      for (int j = 1; j <= n + 1; ++j) {
        for (int i = 0; i < j; ++i) {
          CAPTURE(n);
          CAPTURE(i);
          CAPTURE(j);
          auto lhs = compose(i, j, n, F, 5);
          auto rhs = compose(j - 1, i, n, F, 5);
          REQUIRE(lhs.size() == rhs.size());
          for (std::size_t k = 0; k < lhs.size(); ++k) check_series_eq(lhs[k], rhs[k]);
        }
      }
    }
  }
}

TEST_CASE("bar differential") {
  auto add = FormalGroupLaw::additive(6);
  auto mult = FormalGroupLaw::multiplicative(6);
  const std::vector<std::string> xs{"x1", "x2"};

  check_series_eq(bar_differential(poly("1", Z(), {"x"}, 6), add), poly("1", Z(), xs, 6));
  check_series_eq(bar_differential(poly("1+u*x", Zu(), {"x"}, 6), mult), poly("1", Zu(), xs, 6));

  // (1+vx1)(1+vx2)/(1+v(x1+x2)), checked by clearing the denominator.
  auto d = bar_differential(poly("1+v*x", Zv(), {"x"}, 6), add);
  CHECK(d.vars() == xs);
  check_series_eq(d * poly("1+v*x1+v*x2", Zv(), xs, 6), poly("(1+v*x1)*(1+v*x2)", Zv(), xs, 6));

  CHECK_THROWS_AS(bar_differential(poly("2+x", Z(), {"x"}, 4), add), DomainError);
}

TEST_CASE("cocycle defect") {
  auto add = FormalGroupLaw::additive(5);
  CnStructure trivial(3, add, poly("1", Z(), {}, 5));
  check_tate_eq(cocycle_defect(trivial), TateSeries::t_power(Z(), face_variables(3), 5, 0));

  auto mult = FormalGroupLaw::multiplicative(5);
  CnStructure c1(1, mult, poly("1+u*x", Zu(), {"x"}, 5));
  check_tate_eq(cocycle_defect(c1), TateSeries::t_power(Zu(), face_variables(1), 5, 0));

  // c = 1 + x1 x2 over the additive law; the defect times the two divided
  // faces must reproduce the two multiplied faces.
  const std::vector<std::string> v{"x0", "x1", "x2"};
  CnStructure c(2, add, poly("1+x1*x2", Z(), {"x1", "x2"}, 5));
  auto defect = cocycle_defect(c);
  auto lhs = defect * plain(poly("(1+x0*x2+x1*x2)*(1+x0*x1)", Z(), v, 5));
  check_tate_eq(lhs, plain(poly("(1+x1*x2)*(1+x0*x1+x0*x2)", Z(), v, 5)));

  // Parameters x3.. ride along unchanged.
  CnStructure c3(3, add, poly("1+x1*x2*x3", Z(), {"x1", "x2", "x3"}, 5));
  const std::vector<std::string> w{"x0", "x1", "x2", "x3"};
  auto defect3 = cocycle_defect(c3);
  auto lhs3 = defect3 * plain(poly("(1+x0*x2*x3+x1*x2*x3)*(1+x0*x1*x3)", Z(), w, 5));
  check_tate_eq(lhs3, plain(poly("(1+x1*x2*x3)*(1+x0*x1*x3+x0*x2*x3)", Z(), w, 5)));

  CHECK_THROWS_AS(cocycle_defect(CnStructure(0, add, poly("1+x", Z(), {"x"}, 3))), DomainError);
}

TEST_CASE("verify_cn") {
  auto add = FormalGroupLaw::additive(8);
  auto mult = FormalGroupLaw::multiplicative(8);

  auto r1 = verify_cn(CnStructure(1, mult, poly("1+u*x", Zu(), {"x"}, 8)), 8);
  CHECK(r1.passed());
  CHECK(r1.cocycle_to == 8);
  // Level one only asks for normalization.
  CHECK(verify_cn(CnStructure(1, add, poly("1+u*x", Zu(), {"x"}, 8)), 8).passed());

  auto delta = bar_differential(poly("1+v*x", Zv(), {"x"}, 8), add);
  auto r2 = verify_cn(CnStructure(2, add, delta), 8);
  CHECK(r2.passed());
  CHECK_FALSE(r2.failure.has_value());

  auto asym = verify_cn(CnStructure(2, add, poly("1+x1*x2^2", Z(), {"x1", "x2"}, 6)), 6);
  CHECK_FALSE(asym.symmetric);
  REQUIRE(asym.failure.has_value());
  CHECK(asym.failure->find("symmetry") == 0);

  auto unnorm = verify_cn(CnStructure(2, add, poly("1+x1+x2", Z(), {"x1", "x2"}, 6)), 6);
  CHECK(unnorm.symmetric);
  CHECK_FALSE(unnorm.normalized);

  auto noncocycle = verify_cn(CnStructure(2, add, poly("1+x1*x2", Z(), {"x1", "x2"}, 6)), 6);
  CHECK(noncocycle.symmetric);
  CHECK(noncocycle.normalized);
  CHECK(noncocycle.cocycle_to < 6);
  CHECK_FALSE(noncocycle.passed());
  CHECK(noncocycle.failure->find("cocycle") == 0);
  CHECK_THROWS_AS(certify(CnStructure(2, add, poly("1+x1*x2", Z(), {"x1", "x2"}, 6)), 6), DomainError);

  CHECK_THROWS_AS(verify_cn(CnStructure(2, add, delta), 9), PrecisionError);
  CHECK_THROWS_AS(CnStructure(2, add, poly("1+x+y+z", Z(), {"x", "y", "z"}, 3)), DomainError);
  CHECK_THROWS_AS(CnStructure(1, add, poly("2+x", Z(), {"x"}, 3)), DomainError);

  for (int n = 1; n <= 4; ++n) {
    CHECK(verify_cn(CnStructure(n, mult, poly("1", Z(), {}, 5)), 5).passed());
  }
}

TEST_CASE("coboundaries are C^2 and C^3 structures") {
  std::mt19937_64 rng(7);
  for (const auto& F : {FormalGroupLaw::additive(7), FormalGroupLaw::multiplicative(7),
                        FormalGroupLaw::jacobi_quartic(7)}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto h = random_unit(rng, Z(), 4, 7);
      auto c2 = bar_differential(h, F);
      CHECK(verify_cn(CnStructure(2, F, c2), 7).passed());
      auto c3 = difference(c2, F);
      CHECK(c3.vars() == std::vector<std::string>{"x1", "x2", "x3"});
      auto r3 = verify_cn(CnStructure(3, F, c3), 7);
      CHECK(r3.passed());
      if (r3.failure) MESSAGE(*r3.failure);
    }
  }
  // The full bar differential of a 2-cocycle is trivial.
  auto F = FormalGroupLaw::multiplicative(6);
  auto c2 = bar_differential(poly("1+2*x-x^3", Z(), {"x"}, 6), F);
  check_series_eq(bar_differential(c2, F), poly("1", Zu(), {"x1", "x2", "x3"}, 6));
}

TEST_CASE("sharp") {
  const int D = 4;
  auto ctx = TateContext::make(LawSpec{"additive"}, D, {-4, 4});
  auto add = FormalGroupLaw::additive(8);
  auto delta = bar_differential(poly("1+v*x", Zv(), {"x"}, 8), add);
  auto s = certify(CnStructure(2, add, delta), 8);
  auto g = sharp(s, ctx);
  CHECK(g.n() == 1);
  CHECK(g.over_tate());
  CHECK(g.tate().xvars() == std::vector<std::string>{"x1"});
  // g (1 + v(x+t)) = (1+vx)(1+vt)
  const std::vector<std::string> X{"x1"};
  auto denom = plain(poly("1+v*x1", Zv(), X, D)) +
               TateSeries::from_body(poly("v", Zv(), X, D), 1);
  auto numer = plain(poly("1+v*x1", Zv(), X, D)) * (TateSeries::t_power(Zv(), X, D, 0) +
                                                    TateSeries::from_body(poly("v", Zv(), X, D), 1));
  check_tate_eq(g.tate() * denom, numer);
  CHECK(verify_cn(g, D).passed());
  check_tate_eq(g.tate().set_zero("x1"), TateSeries::t_power(g.ring(), X, D, 0));

  // sharp of the trivial structure and of the multiplicative coboundary of 1+ux
  auto one = certify(CnStructure(2, add, poly("1", Z(), {"x1", "x2"}, 8)), 8);
  check_tate_eq(sharp(one, ctx).tate(), TateSeries::t_power(Z(), X, D, 0));
  auto mctx = TateContext::make(LawSpec{"multiplicative"}, D, {-4, 4});
  auto mult = FormalGroupLaw::multiplicative(8);
  auto m = certify(CnStructure(2, mult, bar_differential(poly("1+u*x", Zu(), {"x"}, 8), mult)), 8);
  check_tate_eq(sharp(m, mctx).tate(), TateSeries::t_power(Zu(), X, D, 0));

  CHECK_THROWS_AS(sharp(CnStructure(2, add, delta), ctx), DomainError);  // not certified
  auto short_s = certify(CnStructure(2, add, delta.truncated(6)), 6);
  CHECK_THROWS_AS(sharp(short_s, ctx), PrecisionError);
  CHECK_THROWS_AS(sharp(certify(CnStructure(1, add, poly("1+x", Z(), {"x"}, 8)), 8), ctx), DomainError);
  CHECK_THROWS_AS(sharp(s, mctx), DomainError);
}

TEST_CASE("sharp of a level-three coboundary") {
  const int D = 3;
  auto ctx = TateContext::make(LawSpec{"jacobi_quartic"}, D, {-3, 3});
  auto F = FormalGroupLaw::jacobi_quartic(6);
  auto c3 = difference(bar_differential(poly("1+x-2*x^2", Z(), {"x"}, 6), F), F);
  auto g = sharp(certify(CnStructure(3, F, c3), 6), ctx);
  CHECK(g.n() == 2);
  auto r = verify_cn(g, D);
  CHECK(r.passed());
  CHECK(r.t_high >= 3);
  for (const char* v : {"x1", "x2"}) {
    check_tate_eq(g.tate().set_zero(v), TateSeries::t_power(g.ring(), {"x1", "x2"}, D, 0));
  }
}

TEST_CASE("sharp0") {
  auto ctx = TateContext::make(LawSpec{"additive"}, 4, {-4, 4}, 1);
  auto y = sharp0(ctx);
  CHECK(y.n() == 0);
  check_tate_eq(y.tate(), TateSeries::t_power(Z(), {"x"}, 4, 0) +
                              TateSeries::from_body(poly("x", Z(), {"x"}, 4), -1));
  auto r = verify_cn(y, 4);
  CHECK(r.passed());
  CHECK(r.unit);

  for (const auto& name : law_names()) {
    CAPTURE(name);
    if (name == "broken-example") {
      // Not a formal group law, so nothing certifies its x-coefficient.
      CHECK_THROWS_AS(sharp0(TateContext::make(LawSpec{name}, 3, {-3, 3}, 1)), DomainError);
      continue;
    }
    auto c = TateContext::make(LawSpec{name, 3}, 3, {-3, 3}, 1);
    auto s = sharp0(c);
    CHECK(verify_cn(s, 3).passed());
    check_tate_eq(s.tate().set_zero("x"), TateSeries::t_power(c.law().ring(), {"x"}, 3, 0));
  }

  // A bottom coefficient that is not a unit is reported.
  auto r2 = verify_cn(CnStructure(0, FormalGroupLaw::additive(3), poly("1+2*x", Z(), {"x"}, 3)), 3);
  CHECK_FALSE(r2.unit);
  CHECK_FALSE(r2.passed());
}

TEST_CASE("adjoint series") {
  const int D = 4;
  auto ctx = TateContext::make(LawSpec{"additive"}, D, {-4, 3});
  check_tate_eq(adjoint_series(poly("1", Z(), {"x"}, 8), ctx), TateSeries::t_power(Z(), {"x"}, D, 0));

  auto a = adjoint_series(poly("1+v*x", Zv(), {"x"}, 8), ctx);
  auto denom = plain(poly("1+v*x", Zv(), {"x"}, D)) + TateSeries::from_body(poly("v", Zv(), {"x"}, D), 1);
  auto numer = plain(poly("1+v*x", Zv(), {"x"}, D)) *
               (TateSeries::t_power(Zv(), {"x"}, D, 0) + TateSeries::from_body(poly("v", Zv(), {"x"}, D), 1));
  check_tate_eq(a * denom, numer);

  auto mctx = TateContext::make(LawSpec{"multiplicative"}, D, {-4, 3});
  check_tate_eq(adjoint_series(poly("1+u*x", Zu(), {"x"}, 8), mctx), TateSeries::t_power(Zu(), {"x"}, D, 0));

  // It is the sharp of the bar differential.
  auto g = poly("1+3*x-x^2+x^4", Z(), {"x"}, 8);
  auto add = FormalGroupLaw::additive(8);
  auto s = sharp(certify(CnStructure(2, add, bar_differential(g, add)), 7), ctx);
  check_tate_eq(adjoint_series(g, ctx), s.tate().renamed({{"x1", "x"}}));

  CHECK_THROWS_AS(adjoint_series(poly("2+x", Z(), {"x"}, 8), ctx), DomainError);
  CHECK_THROWS_AS(adjoint_series(poly("1+x", Z(), {"x"}, 5), ctx), PrecisionError);
}

TEST_CASE("coefficient rings are merged") {
  auto add = FormalGroupLaw::additive(4);
  CnStructure s(1, add, poly("1+v*x", Zv(), {"x"}, 4));
  CHECK(s.ring()->describe() == Zv()->describe());
  CHECK(s.law().ring()->describe() == Zv()->describe());
  auto clash = GradedRing::polynomial(Base::Integers, {{"u", 4}});
  CHECK_THROWS_AS(CnStructure(1, FormalGroupLaw::multiplicative(4), poly("1+u*x", clash, {"x"}, 4)), RingMismatch);
}
