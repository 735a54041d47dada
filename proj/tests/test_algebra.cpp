#include "support.hpp"

#include "fgc/algebra/json_io.hpp"

using namespace fgc;
using namespace fgc::test;

namespace {

RingPtr Qm12() { return GradedRing::polynomial(Base::Rationals, {{"m1", 2}, {"m2", 4}}); }
RingPtr Qde() { return GradedRing::polynomial(Base::Rationals, {{"delta", 4}, {"epsilon", 8}}); }

}  // namespace

TEST_CASE("graded rings reject malformed generator lists") {
  CHECK_THROWS_AS(GradedRing::polynomial(Base::Integers, {{"u", 3}}), DomainError);
  CHECK_THROWS_AS(GradedRing::polynomial(Base::Integers, {{"u", 2}, {"u", 4}}), DomainError);
  CHECK_THROWS_AS(GradedRing::polynomial(Base::Integers, {{"2u", 2}}), DomainError);
  CHECK(Qm12()->describe() == "Q[m1:2,m2:4]");
}

TEST_CASE("ring element arithmetic") {
  auto R = Zu();
  CHECK((elem("u+1", R) * elem("u-1", R)) == elem("u^2-1", R));
  CHECK((elem("u+1", R) + RingElement(R)) == elem("u+1", R));
  CHECK((elem("2*m1", Qm12()) * elem("3*m2", Qm12())) == elem("6*m1*m2", Qm12()));
  CHECK(elem("(u+1)^2", R).to_string() == "u^2+2*u+1");
  CHECK_THROWS_AS(elem("u", R) + elem("u", Qu()), RingMismatch);
}

TEST_CASE("units") {
  auto minus_one = RingElement::constant(Z(), -1);
  REQUIRE(is_unit(minus_one));
  CHECK(*unit_inverse(minus_one) == minus_one);
  CHECK_FALSE(is_unit(RingElement::constant(Z(), 2)));
  CHECK_FALSE(is_unit(elem("u", Zu())));
  auto q = RingElement::constant(Q(), Rational(3, 4));
  REQUIRE(is_unit(q));
  CHECK(*unit_inverse(q) == RingElement::constant(Q(), Rational(4, 3)));
  CHECK_FALSE(is_unit(RingElement(Q())));
}

TEST_CASE("homogeneous degree") {
  CHECK(homogeneous_degree(elem("m1", Qm12())).degree == 2);
  auto de = homogeneous_degree(elem("delta*epsilon", Qde()));
  CHECK(de.kind == HomogeneousDegree::Kind::Degree);
  CHECK(de.degree == 12);
  CHECK(homogeneous_degree(elem("1+u", Zu())).kind == HomogeneousDegree::Kind::Inhomogeneous);
  auto zero = homogeneous_degree(RingElement(Zu()));
  CHECK(zero.kind == HomogeneousDegree::Kind::Any);
  CHECK(zero.matches(17));
}

TEST_CASE("series arithmetic and precision") {
  auto x = std::vector<std::string>{"x"};
  check_series_eq(poly("1+x", Z(), x, 5) * poly("1-x", Z(), x, 5), poly("1-x^2", Z(), x, 5));

  auto xy = poly("x", Z(), {"x"}, 1) * poly("y", Z(), {"y"}, 1);
  CHECK(xy.is_zero());
  CHECK(xy.trunc() == 1);
  CHECK(xy.vars() == std::vector<std::string>{"x", "y"});

  auto prod = poly("1+u*x", Zu(), {"x"}, 4) * poly("1+u*y", Zu(), {"y"}, 4);
  check_series_eq(prod, poly("1+u*x+u*y+u^2*x*y", Zu(), {"x", "y"}, 4));

  auto mixed = poly("x", Z(), x, 3) + poly("x^2", Z(), x, 7);
  CHECK(mixed.trunc() == 3);
  CHECK_THROWS_AS(mixed.coefficient({4}), PrecisionError);
}

TEST_CASE("series substitution") {
  auto f = poly("1+x", Z(), {"x"}, 4);
  check_series_eq(series_substitute(f, {{"x", poly("y+z", Z(), {"y", "z"}, 4)}}), poly("1+y+z", Z(), {"y", "z"}, 4));

  auto sq = poly("x^2", Z(), {"x"}, 4);
  auto shifted = series_substitute(sq, {{"x", poly("x+t", Z(), {"x", "t"}, 4)}});
  check_series_eq(shifted, poly("x^2+2*x*t+t^2", Z(), {"x", "t"}, 4));

  auto F = poly("x+y+u*x*y", Zu(), {"x", "y"}, 6);
  auto diag = series_substitute(F, {{"y", poly("x", Zu(), {"x"}, 6)}});
  check_series_eq(diag, poly("2*x+u*x^2", Zu(), {"x"}, 6));

  CHECK_THROWS_AS(series_substitute(f, {{"x", poly("1+y", Z(), {"y"}, 4)}}), DomainError);
}

TEST_CASE("substitution precision follows the replacement valuation") {
  // x -> y^2 doubles degrees: f known to 3 is known to 7 after substitution.
  auto f = poly("1+x+x^3", Z(), {"x"}, 3);
  auto g = series_substitute(f, {{"x", poly("y^2", Z(), {"y"}, 10)}});
  CHECK(g.trunc() == 7);
  check_series_eq(g, poly("1+y^2+y^6", Z(), {"y"}, 7));
}

TEST_CASE("series inversion") {
  auto x = std::vector<std::string>{"x"};
  check_series_eq(series_invert(poly("1+x", Z(), x, 6)), poly("1-x+x^2-x^3+x^4-x^5+x^6", Z(), x, 6));
  check_series_eq(series_invert(poly("1", Z(), x, 6)), poly("1", Z(), x, 6));
  auto f = poly("1+u*x+u*y", Zu(), {"x", "y"}, 5);
  auto g = series_invert(f);
  check_series_eq(f * g, poly("1", Zu(), {"x", "y"}, 5));
  check_series_eq(g.truncated(2), poly("1-u*x-u*y+u^2*x^2+2*u^2*x*y+u^2*y^2", Zu(), {"x", "y"}, 2));
  CHECK_THROWS_AS(series_invert(poly("2+x", Z(), x, 3)), DomainError);
  CHECK_THROWS_AS(series_invert(poly("u+x", Zu(), x, 3)), DomainError);
}

TEST_CASE("series reversion") {
  auto x = std::vector<std::string>{"x"};
  check_series_eq(series_reversion(poly("x", Z(), x, 6)), poly("x", Z(), x, 6));
  // Catalan numbers with alternating sign.
  check_series_eq(series_reversion(poly("x+x^2", Z(), x, 6)), poly("x-x^2+2*x^3-5*x^4+14*x^5-42*x^6", Z(), x, 6));

  // log(1+ux)/u reverts to (e^{ux}-1)/u; both sides written from their closed forms.
  const int D = 8;
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> lg, ex;
  Rational fact = 1;
  for (int k = 1; k <= D; ++k) {
    fact *= k;
    RingElement up = elem("u", Qu()).pow(k - 1);
    lg.emplace_back(TruncSeries::Exponents{k}, up.scaled(Rational(k % 2 ? 1 : -1, k)));
    ex.emplace_back(TruncSeries::Exponents{k}, up.scaled(1 / fact));
  }
  auto log_series = TruncSeries::from_coefficients(Qu(), x, D, lg);
  auto exp_series = TruncSeries::from_coefficients(Qu(), x, D, ex);
  check_series_eq(series_reversion(log_series), exp_series);
  check_series_eq(series_reversion(exp_series), log_series);

  CHECK_THROWS_AS(series_reversion(poly("1+x", Z(), x, 4)), DomainError);
  CHECK_THROWS_AS(series_reversion(poly("2*x", Z(), x, 4)), DomainError);
  CHECK_THROWS_AS(series_reversion(poly("x+y", Z(), {"x", "y"}, 4)), DomainError);
}

TEST_CASE("series square root") {
  auto x = std::vector<std::string>{"x"};
  check_series_eq(series_sqrt(poly("1", Z(), x, 5)), poly("1", Z(), x, 5));
  check_series_eq(series_sqrt(poly("1+4*x", Z(), x, 4)), poly("1+2*x-2*x^2+4*x^3-10*x^4", Z(), x, 4));
  auto de = series_sqrt(poly("1-2*delta*x^2", Qde(), x, 6));
  check_series_eq(de.truncated(4), poly("1-delta*x^2-1/2*delta^2*x^4", Qde(), x, 4));
  check_series_eq(de * de, poly("1-2*delta*x^2", Qde(), x, 6));
  CHECK_THROWS_AS(series_sqrt(poly("1+2*x", Z(), x, 3)), DomainError);
  CHECK_THROWS_AS(series_sqrt(poly("4+x", Z(), x, 3)), DomainError);
}

TEST_CASE("derivative and integral") {
  auto f = poly("1+2*x+3*x^2", Z(), {"x"}, 4);
  check_series_eq(f.derivative("x"), poly("2+6*x", Z(), {"x"}, 3));
  CHECK(f.derivative("x").trunc() == 3);
  check_series_eq(poly("1+x", Q(), {"x"}, 3).integral("x"), poly("x+1/2*x^2", Q(), {"x"}, 4));
  CHECK_THROWS_AS(poly("1+x", Z(), {"x"}, 3).integral("x"), DomainError);
}

TEST_CASE("coefficient parser") {
  CHECK(parse_coeff("-2*m1", Qm12()) == elem("m1", Qm12()).scaled(-2));
  CHECK(parse_coeff("(u+1)^2", Zu()).to_string() == "u^2+2*u+1");
  CHECK(parse_coeff(" 3/4 * m2 ", Qm12()).to_string() == "3/4*m2");
  CHECK_THROWS_AS(parse_coeff("m3", Qm12()), ParseError);
  CHECK_THROWS_AS(parse_coeff("u/2", Zu()), ParseError);
  CHECK_THROWS_AS(parse_coeff("m1/m2", Qm12()), ParseError);
  CHECK_THROWS_AS(parse_coeff("1/0", Q()), ParseError);
  try {
    parse_coeff("u+*2", Zu());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_coeff("(u+1", Zu()), ParseError);
  CHECK_THROWS_AS(parse_coeff("", Zu()), ParseError);
}

TEST_CASE("series JSON round trip is canonical") {
  auto ring = Qm12();
  auto s = poly("y^2 - 2*m1*x*y + x + 1/2*m2*x^3", ring, {"x", "y"}, 4);
  auto j = to_json(s);
  CHECK(j["terms"][0]["mono"] == nlohmann::json::array({1, 0}));
  CHECK(j["terms"][1]["coeff"] == "-2*m1");
  auto back = series_from_json(j);
  CHECK(back.series == s);
  CHECK_FALSE(back.tate.has_value());
  CHECK(to_json(back.series).dump() == j.dump());

  auto tj = nlohmann::json::parse(R"({"ring":{"base":"Z","gens":[["u",2]]},"vars":["x"],"trunc":3,
    "tate":{"low":-1,"high":2},"terms":[{"t":-1,"mono":[1],"coeff":"1"},{"mono":[0],"coeff":1},{"t":0,"mono":[1],"coeff":"u"}]})");
  auto doc = series_from_json(tj);
  REQUIRE(doc.tate.has_value());
  CHECK(doc.tate->low() == -1);
  CHECK(doc.tate->high() == 2);
  CHECK(to_json(*doc.tate)["terms"].size() == 3);
  CHECK(to_json(*doc.tate)["terms"][0]["t"] == -1);

  CHECK_THROWS_AS(series_from_text("{"), ParseError);
  CHECK_THROWS_AS(series_from_text(R"({"ring":{"base":"R"},"vars":[],"trunc":1,"terms":[]})"), FormatError);
  CHECK_THROWS_AS(series_from_text(R"({"ring":{"base":"Z"},"vars":["x"],"trunc":1,"terms":[{"mono":[1,2],"coeff":"1"}]})"),
                  FormatError);
}
