#include "support.hpp"

using namespace fgc;
using namespace fgc::test;

namespace {

TateSeries exact(const std::string& text, int e, const RingPtr& ring, const std::vector<std::string>& vars, int D) {
  return TateSeries::from_body(poly(text, ring, vars, D), e);
}

}  // namespace

TEST_CASE("inverting t gives t^-1") {
  auto t = TateSeries::t_power(Z(), {"x"}, 4, 1);
  auto inv = tate_invert(t);
  check_tate_eq(inv, TateSeries::t_power(Z(), {"x"}, 4, -1));
  CHECK(inv.high() == TateSeries::kExact);
}

TEST_CASE("inverting x+t") {
  const int D = 5;
  auto f = exact("x", 0, Z(), {"x"}, D) + exact("1", 1, Z(), {"x"}, D);
  auto inv = tate_invert(f);
  auto expected = TateSeries(Z(), {"x"}, D);
  for (int k = 0; k <= D; ++k) {
    expected = expected + exact((k % 2 ? "-x^" : "x^") + std::to_string(k), -k - 1, Z(), {"x"}, D);
  }
  check_tate_eq(inv, expected);
  check_tate_eq(f * inv, TateSeries::t_power(Z(), {"x"}, D, 0));
  CHECK(inv.valuation() == -D - 1);
}

TEST_CASE("products of Laurent bodies") {
  auto a = exact("1", 0, Z(), {"x", "y"}, 4) + exact("x", -1, Z(), {"x", "y"}, 4);
  auto b = exact("1", 0, Z(), {"x", "y"}, 4) + exact("y", -1, Z(), {"x", "y"}, 4);
  auto expected = exact("1", 0, Z(), {"x", "y"}, 4) + exact("x+y", -1, Z(), {"x", "y"}, 4) +
                  exact("x*y", -2, Z(), {"x", "y"}, 4);
  check_tate_eq(a * b, expected);
}

TEST_CASE("precision profile from a power series") {
  // (x+t)/t read from a series truncated at total degree 4.
  auto s = poly("x+t", Z(), {"x", "t"}, 4);
  auto f = TateSeries::from_power_series(s, "t", -1);
  CHECK(f.profile() == std::vector<int>{3, 2, 1, 0, -1});
  CHECK(f.high() == -1);
  CHECK(f.coefficient({1}, -1) == RingElement::constant(Z(), 1));
  CHECK(f.coefficient({2}, 1).is_zero());
  CHECK_THROWS_AS(f.coefficient({2}, 2), PrecisionError);
}

TEST_CASE("inversion of a non-monomial leading part") {
  // 1 + t is exact: its inverse needs a cap, and then f * f^-1 = 1 up to it.
  auto f = exact("1", 0, Z(), {"x"}, 3) + exact("1", 1, Z(), {"x"}, 3) + exact("x", -1, Z(), {"x"}, 3);
  CHECK_THROWS_AS(tate_invert(f), PrecisionError);
  auto inv = tate_invert(f, 6);
  auto one = TateSeries::t_power(Z(), {"x"}, 3, 0);
  check_tate_eq(f * inv, one);
  CHECK((f * inv).high() >= 0);

  // A known-to-precision leading part loses precision on inversion.
  auto g = TateSeries::from_power_series(poly("t+t^2+x", Z(), {"x", "t"}, 6), "t", 0);
  auto ginv = tate_invert(g);
  CHECK(ginv.profile()[0] == 6 - 2);
  check_tate_eq(g * ginv, TateSeries::t_power(Z(), {"x"}, 6, 0));
}

TEST_CASE("non-unit leading coefficients are rejected") {
  auto f = exact("2", -1, Z(), {"x"}, 3);
  CHECK_THROWS_AS(tate_invert(f), DomainError);
  CHECK_THROWS_AS(tate_invert(exact("x", 0, Z(), {"x"}, 3)), DomainError);
}

TEST_CASE("substitution into Tate bodies") {
  auto f = exact("1", 0, Z(), {"x"}, 4) + exact("x", -1, Z(), {"x"}, 4);
  auto g = tate_substitute(f, {{"x", poly("y+z", Z(), {"y", "z"}, 4)}});
  auto expected = exact("1", 0, Z(), {"y", "z"}, 4) + exact("y+z", -1, Z(), {"y", "z"}, 4);
  check_tate_eq(g, expected);
}
