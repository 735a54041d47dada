#include "support.hpp"

#include "fgc/charclass/charclass.hpp"

using namespace fgc;
using namespace fgc::test;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> X12{"x1", "x2"};
const std::vector<std::string> X123{"x1", "x2", "x3"};

RingPtr Zz() { return GradedRing::polynomial(Base::Integers, {{"z", 2}}); }

TruncSeries sigma(const std::string& text, const RingPtr& ring, int n, int D) {
  std::vector<std::string> vars;
  std::vector<int> weights;
  for (int k = 1; k <= n; ++k) {
    vars.push_back("s" + std::to_string(k));
    weights.push_back(k);
  }
  return poly(text, ring, vars, D, weights);
}

}  // namespace

TEST_CASE("symmetric expansion of power sums") {
  auto p2 = symmetric_expand(poly("x1^2+x2^2", Z(), X12, 6), X12);
  check_series_eq(p2, sigma("s1^2-2*s2", Z(), 2, 6));
  CHECK(p2.weights() == std::vector<int>{1, 2});

  auto p3 = symmetric_expand(poly("x1^3+x2^3+x3^3", Z(), X123, 6), X123);
  check_series_eq(p3, sigma("s1^3-3*s1*s2+3*s3", Z(), 3, 6));
}

TEST_CASE("total Chern class expansion") {
  auto R = Zz();
  auto G = symmetric_expand(poly("(1+z*x1)*(1+z*x2)", R, X12, 6), X12);
  check_series_eq(G, sigma("1+z*s1+z^2*s2", R, 2, 6));

  ExpClass c(poly("1+z*x", R, X, 6));
  auto on_classes = class_on_bundle(c, BundleData::classes(2));
  CHECK(on_classes.vars() == std::vector<std::string>{"c1", "c2"});
  check_series_eq(on_classes, poly("1+z*c1+z^2*c2", R, {"c1", "c2"}, 6, {1, 2}));
}

TEST_CASE("symmetric expansion rejects asymmetric input and keeps other variables") {
  CHECK_THROWS_AS(symmetric_expand(poly("x1+2*x2", Z(), X12, 4), X12), DomainError);
  auto G = symmetric_expand(poly("x1*t+x2*t+x1*x2", Z(), {"x1", "x2", "t"}, 4), X12);
  CHECK(G.vars() == std::vector<std::string>{"s1", "s2", "t"});
  check_series_eq(G, poly("s1*t+s2", Z(), {"s1", "s2", "t"}, 4, {1, 2, 1}));
}

TEST_CASE("symmetric expansion agrees with numeric evaluation") {
  // Independent oracle: compare p(x) with G(e_1(x), ..., e_n(x)) at integer points.
  auto p = poly("x1^4*x2+x1*x2^4+x1^4*x3+x1*x3^4+x2^4*x3+x2*x3^4 + 7*x1*x2*x3 - 2", Q(), X123, 6);
  auto G = symmetric_expand(p, X123);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    Rational a = pick(rng), b = pick(rng), c = pick(rng);
    std::map<std::string, Rational> pt{{"x1", a}, {"x2", b}, {"x3", c}};
    std::map<std::string, Rational> spt{{"s1", a + b + c}, {"s2", a * b + a * c + b * c}, {"s3", a * b * c}};
    CHECK(evaluate(p, pt) == evaluate(G, spt));
  }
}

TEST_CASE("class on bundles") {
  ExpClass one(poly("1", Z(), X, 5));
  check_series_eq(class_on_bundle(one, BundleData::roots(3)), poly("1", Z(), X123, 5));
  check_series_eq(class_on_bundle(one, BundleData::classes(2)), poly("1", Z(), {"c1", "c2"}, 5, {1, 2}));

  ExpClass c(poly("1+z*x", Zz(), X, 5));
  auto trivial = class_on_bundle(c, BundleData::roots(3));
  for (const auto& r : X123) trivial = trivial.set_zero(r);
  check_series_eq(trivial, poly("1", Zz(), X123, 5));

  CHECK_THROWS_AS(ExpClass(poly("2+x", Z(), X, 3)), DomainError);
  CHECK(ExpClass(poly("1+z*x+z^2*x^2", Zz(), X, 3)).is_homogeneous());
  CHECK_FALSE(ExpClass(poly("1+z*x^2", Zz(), X, 3)).is_homogeneous());
}

TEST_CASE("exponential property and the two bundle models agree") {
  ExpClass c = todd_series(6);
  auto V = class_on_roots(c, {"x1", "x2"});
  auto W = class_on_roots(c, {"x3"});
  check_series_eq(class_on_roots(c, X123), V * W);

  auto by_roots = symmetric_expand(class_on_roots(c, X123), X123, "c");
  check_series_eq(by_roots, class_on_bundle(c, BundleData::classes(3)));
  auto collapsed = symmetric_collapse(class_on_bundle(c, BundleData::classes(3)), {"c1", "c2", "c3"}, X123);
  check_series_eq(collapsed, class_on_roots(c, X123));
}

TEST_CASE("orientation quotients") {
  check_series_eq(orientation_quotient(poly("x", Z(), X, 5)).series(), poly("1", Z(), X, 4));
  check_series_eq(orientation_quotient(poly("x+x^2", Z(), X, 5)).series(), poly("1+x", Z(), X, 4));
  auto log = fgl_log(FormalGroupLaw::multiplicative(5, Qu()));
  check_series_eq(orientation_quotient(log).series().truncated(2), poly("1-1/2*u*x+1/3*u^2*x^2", Qu(), X, 2));
  CHECK_THROWS_AS(orientation_quotient(poly("2*x", Z(), X, 4)), DomainError);
  CHECK_THROWS_AS(orientation_quotient(poly("1+x", Z(), X, 4)), DomainError);
}

TEST_CASE("Hirzebruch series") {
  check_series_eq(hirzebruch_series(FormalGroupLaw::additive(8, Q())).series(), poly("1", Q(), X, 7));
  // ux/(e^{ux}-1) = sum B_k (ux)^k / k! with B_1 = -1/2, B_2 = 1/6, B_4 = -1/30.
  auto H = hirzebruch_series(FormalGroupLaw::multiplicative(8, Qu())).series();
  check_series_eq(H.truncated(5), poly("1-1/2*u*x+1/12*u^2*x^2-1/720*u^4*x^4", Qu(), X, 5));
  auto uni = FormalGroupLaw::universal_rational(3, 6);
  auto Hu = hirzebruch_series(uni).series();
  // exp(x) = x - m1 x^2 + ..., so x/exp(x) = 1 + m1 x + ...; at m1 = -u/2 this
  // is the -ux/2 of the multiplicative case above.
  check_series_eq(Hu.truncated(1), poly("1+m1*x", uni.ring(), X, 1));
  CHECK_THROWS_AS(hirzebruch_series(FormalGroupLaw::multiplicative(5)), DomainError);
}

TEST_CASE("Euler class of a twist") {
  check_series_eq(euler_of_twist(FormalGroupLaw::additive(5), {"x"}), poly("x+t", Z(), {"x", "t"}, 5));
  check_series_eq(euler_of_twist(FormalGroupLaw::multiplicative(6), X12),
                  poly("(x1+t+u*x1*t)*(x2+t+u*x2*t)", Zu(), {"x1", "x2", "t"}, 6));
  check_series_eq(euler_of_twist(FormalGroupLaw::additive(5), {}), poly("1", Z(), {"t"}, 5));
}

TEST_CASE("genera of projective spaces") {
  ExpClass one(poly("1", Q(), X, 8));
  for (int n = 1; n <= 6; ++n) CHECK(genus_cpn(one, n).is_zero());
  CHECK(genus_cpn(one, 0) == RingElement::constant(Q(), 1));
  // Todd genus of CP^n is 1 for every n.
  for (int n = 0; n <= 6; ++n) CHECK(genus_cpn(todd_series(8), n) == RingElement::constant(Q(), 1));
  // Signature: 1 on CP^{2k}, and the L-series is even so odd dimensions vanish.
  CHECK(genus_cpn(l_series(6), 2) == RingElement::constant(Q(), 1));
  CHECK(genus_cpn(l_series(6), 4) == RingElement::constant(Q(), 1));
  CHECK(genus_cpn(l_series(6), 3).is_zero());
  // The Hirzebruch series of the multiplicative law at u = 1 is Todd(-x).
  auto H = hirzebruch_series(FormalGroupLaw::multiplicative(6, Qu()));
  CHECK(genus_cpn(H, 4) == elem("u^4", Qu()));
  CHECK_THROWS_AS(genus_cpn(todd_series(3), 4), PrecisionError);
}
