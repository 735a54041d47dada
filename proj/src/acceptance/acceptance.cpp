#include "fgc/acceptance/acceptance.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fgc/algebra/errors.hpp"
#include "fgc/charclass/charclass.hpp"
#include "fgc/cli/cli.hpp"
#include "fgc/cnstruct/cnstruct.hpp"
#include "fgc/fgl/formal_group_law.hpp"
#include "fgc/tate/tate.hpp"

namespace fgc::acceptance {

namespace {

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  std::string detail() const { return ok() ? std::to_string(checks_) + " checks" : failure_; }

 private:
  int checks_ = 0;
  std::string failure_;
};

int cap(const Config& cfg, int stated) { return cfg.order > 0 ? std::max(2, std::min(stated, cfg.order)) : stated; }

bool same(const TateSeries& a, const TateSeries& b) { return !first_difference(a, b).has_value(); }

std::string str(int n) { return std::to_string(n); }

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> names(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int k = from; k <= to; ++k) out.push_back(prefix + str(k));
  return out;
}

// A few random monomials of degree <= degree with coefficients in [-c, c].
TruncSeries sparse_random(std::mt19937_64& rng, const RingPtr& ring, const std::vector<std::string>& vars, int degree,
                          int trunc, int terms, int c, bool constant_one) {
  std::map<TruncSeries::Exponents, long> coeffs;
  for (int k = 0; k < terms; ++k) {
    TruncSeries::Exponents e(vars.size(), 0);
    int d = draw(rng, 1, degree);
    for (int i = 0; i < d; ++i) ++e[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(vars.size()) - 1))];
    coeffs[e] += draw(rng, -c, c);
  }
  std::vector<std::pair<TruncSeries::Exponents, RingElement>> cs;
  if (constant_one) cs.emplace_back(TruncSeries::Exponents(vars.size(), 0), RingElement::constant(ring, 1));
  for (const auto& [e, v] : coeffs) {
    if (v != 0) cs.emplace_back(e, RingElement::constant(ring, v));
  }
  return TruncSeries::from_coefficients(ring, vars, trunc, cs);
}

TruncSeries random_unit(std::mt19937_64& rng, const RingPtr& ring, int trunc) {
  return sparse_random(rng, ring, {"x"}, 6, trunc, 5, 3, true);
}

TateSeries one_tate(const RingPtr& ring, const std::vector<std::string>& vars, int trunc) {
  return TateSeries::t_power(ring, vars, trunc, 0);
}

// ---------------------------------------------------------------------------

void fgl_axioms(Checker& c, const Config& cfg) {
  const int order = cap(cfg, 9);
  for (const auto& F : {FormalGroupLaw::additive(order), FormalGroupLaw::multiplicative(order),
                        FormalGroupLaw::universal_rational(6, order), FormalGroupLaw::jacobi_quartic(order)}) {
    auto r = fgl_verify(F, order);
    c.expect(r.passed(), F.name() + " fails " + (r.first_failure ? r.first_failure->axiom : "?"));
  }
  auto broken = fgl_verify(FormalGroupLaw::broken_example(order), order);
  c.expect(!broken.unital && broken.first_failure && broken.first_failure->axiom == "unital" &&
               broken.first_failure->exponents == std::vector<int>{2, 0} && broken.first_failure->lhs == "1",
           "broken law: unitality failure at x^2 not reported");
}

void total_chern(Checker& c, const Config& cfg) {
  const int D = cap(cfg, 8);
  std::mt19937_64 rng(cfg.seed);
  auto ctx = TateContext::make(LawSpec{"additive"}, D, Window{-D, 1}, 5);
  std::vector<int> ranks{0, 1, 2, 3, 4, 5, draw(rng, 0, 5), draw(rng, 0, 5)};
  for (int n : ranks) {
    auto r = total_chern_check(ctx, BundleData::roots(n), D);
    c.expect(r.passed, "rank " + str(n) + ": tch differs from the total Chern class");
  }
}

void two_formulas(Checker& c, const Config& cfg) {
  const int D = cap(cfg, 6);
  for (const auto& law : {LawSpec{"additive"}, LawSpec{"multiplicative"}, LawSpec{"universal_rational", 4}}) {
    auto ctx = TateContext::make(law, D, Window{-D, 2}, 4);
    for (int n = 0; n <= 4; ++n) {
      for (const auto& V : {BundleData::roots(n), BundleData::classes(n)}) {
        c.expect(same(tch_on_bundle(ctx, V), tch_via_class(ctx, V)),
                 law.name + " rank " + str(n) + ": Euler-class quotient and class expansion differ");
      }
    }
  }
}

void beta_unit(Checker& c, const Config&) {
  auto ctx = TateContext::make(LawSpec{"universal_rational", 4}, 1, Window{-1, 2}, 1);
  const auto& F = ctx.law();
  auto b = beta_coefficient(ctx);
  TateSeries expected = TateSeries::t_power(F.ring(), {}, 0, -1);
  for (int j = 1; j <= 3; ++j) {
    expected = expected + TateSeries::from_body(TruncSeries::constant(F.ring(), {}, 0, F.coefficient(1, j)), j - 1);
  }
  c.expect(same(b.series, expected) && b.series.high() == 2, "universal: beta != t^-1(1 + a11 t + a12 t^2 + a13 t^3)");
  c.expect(F.coefficient(1, 1) == RingElement::generator(F.ring(), "m1").scaled(-2), "universal: a11 != -2 m1");
  c.expect(b.unit && b.leading_exponent == -1, "universal: beta not a unit");

  auto mctx = TateContext::make(LawSpec{"multiplicative"}, 1, Window{-1, 4}, 1);
  auto m = beta_coefficient(mctx);
  auto ring = mctx.law().ring();
  auto u = TateSeries::from_body(TruncSeries::constant(ring, {}, 0, RingElement::generator(ring, "u")), 0);
  c.expect(same(m.series, TateSeries::t_power(ring, {}, 0, -1) + u) && m.series.top() == 0,
           "multiplicative: beta != t^-1 + u");
  c.expect(m.unit, "multiplicative: beta not a unit");
}

std::vector<TruncSeries> compose_faces(int a, int b, int n, const FormalGroupLaw& F, int D) {
  auto inner = bar_map(a, n - 1, F, D);
  auto outer = bar_map(b, n, F, D);
  Bindings bindings;
  for (int k = 0; k < n; ++k) bindings.emplace_back("x" + str(k), outer[static_cast<std::size_t>(k)]);
  std::vector<TruncSeries> out;
  for (const auto& s : inner) out.push_back(series_substitute(s, bindings).with_vars(face_variables(n)));
  return out;
}

void cocycles(Checker& c, const Config& cfg) {
  const int D = cap(cfg, 8);
  std::mt19937_64 rng(cfg.seed + 5);
  auto mult = FormalGroupLaw::multiplicative(D);
  auto ring = mult.ring();
  auto f = TruncSeries::from_coefficients(ring, {"x"}, D,
                                          {{{0}, RingElement::constant(ring, 1)}, {{1}, RingElement::generator(ring, "u")}});
  c.expect(verify_cn(CnStructure(1, mult, f), D).passed(), "1+ux is not a C^1 structure");
  c.expect(bar_differential(f, mult) == TruncSeries::one(ring, {"x1", "x2"}, D), "(1+ux) is not exactly multiplicative");

  for (const auto& F : {FormalGroupLaw::additive(D), mult}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto h = random_unit(rng, GradedRing::integers(), D);
      auto c2 = bar_differential(h, F);
      auto r2 = verify_cn(CnStructure(2, F, c2), D);
      c.expect(r2.passed(), F.name() + ": coboundary fails at level 2: " + r2.failure.value_or(""));
      auto r3 = verify_cn(CnStructure(3, F, difference(c2, F)), D);
      c.expect(r3.passed(), F.name() + ": coboundary fails at level 3: " + r3.failure.value_or(""));
    }
  }

  for (const auto& F : {FormalGroupLaw::additive(D), mult, FormalGroupLaw::universal_rational(3, D)}) {
    for (int n = 1; n <= 3; ++n) {
      for (int j = 1; j <= n + 1; ++j) {
        for (int i = 0; i < j; ++i) {
          auto lhs = compose_faces(i, j, n, F, D);
          auto rhs = compose_faces(j - 1, i, n, F, D);
          bool eq = lhs.size() == rhs.size();
          for (std::size_t k = 0; eq && k < lhs.size(); ++k) eq = lhs[k] == rhs[k];
          c.expect(eq, F.name() + ": d" + str(i) + " d" + str(j) + " != d" + str(j - 1) + " d" + str(i) +
                           " at n=" + str(n));
        }
      }
    }
  }
}

void sharp_suite(Checker& c, const Config& cfg) {
  const int D = cap(cfg, 6);
  const Window w{-6, std::min(6, D)};
  const int N = D + w.high;
  std::mt19937_64 rng(cfg.seed + 11);
  for (const char* name : {"additive", "multiplicative", "jacobi_quartic"}) {
    auto ctx = TateContext::make(LawSpec{name}, D, w, 1);
    auto F = make_law(LawSpec{name}, N);
    auto check = [&](int n, const TruncSeries& s) {
      auto g = sharp(certify(CnStructure(n, F, s), N), ctx);
      auto r = verify_cn(g, D);
      c.expect(r.passed() && r.t_high >= w.high,
               std::string(name) + ": sharp of a C^" + str(n) + " structure fails: " + r.failure.value_or("precision"));
      for (const auto& v : g.tate().xvars()) {
        c.expect(same(g.tate().set_zero(v), one_tate(g.ring(), g.tate().xvars(), D)),
                 std::string(name) + ": sharp output not normalized");
      }
    };
    for (int trial = 0; trial < 3; ++trial) {
      auto c2 = bar_differential(random_unit(rng, GradedRing::integers(), N), F);
      check(2, c2);
      check(3, difference(c2, F));
    }
  }
  for (const auto& name : law_names()) {
    if (name == "broken-example") continue;  // not a formal group law
    auto ctx = TateContext::make(LawSpec{name, 4}, D, w, 1);
    auto y = sharp0(ctx);
    auto r = verify_cn(y, D);
    c.expect(r.passed() && r.unit, name + ": sharp0 fails the unit condition");
  }
}

void invertibility(Checker& c, const Config& cfg) {
  const int D = cap(cfg, 4);
  for (const auto& name : law_names()) {
    auto ctx = TateContext::make(LawSpec{name, 4}, D, Window{-(3 + D), 2}, 3);
    for (int n = 0; n <= 3; ++n) {
      auto V = BundleData::roots(n);
      auto product = (euler_of_twist_tate(ctx, V) * tate_invert_euler(ctx, V)).x_truncated(D);
      c.expect(product.high() >= 2 && same(product, one_tate(product.ring(), product.xvars(), D)),
               name + " rank " + str(n) + ": e(V(x)L) times its inverse is not 1");
    }
  }
}

void genera(Checker& c, const Config&) {
  auto todd = todd_series(7);
  for (int n = 0; n <= 6; ++n) {
    c.expect(genus_cpn(todd, n) == RingElement::constant(todd.ring(), 1), "Todd genus of CP^" + str(n) + " != 1");
  }
  auto l = l_series(3);
  c.expect(genus_cpn(l, 2) == RingElement::constant(l.ring(), 1), "signature of CP^2 != 1");
  ExpClass one(TruncSeries::one(GradedRing::rationals(), {"x"}, 6));
  for (int n = 1; n <= 6; ++n) {
    c.expect(genus_cpn(one, n).is_zero(), "genus of CP^" + str(n) + " for the unit series != 0");
  }
  auto h = hirzebruch_series(FormalGroupLaw::additive(8, GradedRing::rationals()));
  c.expect(h.series() == TruncSeries::one(h.ring(), {"x"}, h.trunc()), "Hirzebruch series of the additive law != 1");
}

TruncSeries symmetrized(const TruncSeries& p, const std::vector<std::string>& roots) {
  std::vector<std::size_t> perm(roots.size());
  std::iota(perm.begin(), perm.end(), 0);
  TruncSeries sum(p.ring(), p.vars(), p.trunc());
  do {
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < roots.size(); ++i) rename.emplace(roots[i], roots[perm[i]]);
    sum = sum + p.renamed(rename).with_vars(p.vars());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

void properties(Checker& c, const Config& cfg) {
  std::mt19937_64 rng(cfg.seed + 23);
  const auto Z = GradedRing::integers();
  const auto Q = GradedRing::rationals();
  const int deg = cap(cfg, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = draw(rng, 1, 4);
    auto roots = names("x", 1, n);
    auto p = symmetrized(sparse_random(rng, Z, roots, deg, deg, 3, 5, false), roots);
    auto G = symmetric_expand(p, roots);
    auto back = symmetric_collapse(G, names("s", 1, n), roots);
    c.expect(agree_to(back, p, deg), "symmetric_expand does not substitute back, n=" + str(n));
  }

  const int D = cap(cfg, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto vars = trial % 2 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    auto f = sparse_random(rng, Z, vars, D, D, 4, 4, true);
    auto one = TruncSeries::one(Z, vars, D);
    c.expect(agree_to(f * series_invert(f), one, D), "f * invert(f) != 1");

    auto q = extend_scalars(f, Q);
    auto r = series_sqrt(q);
    c.expect(agree_to(r * r, q, D), "sqrt(f)^2 != f");

    auto g = sparse_random(rng, Z, {"x"}, D, D, 3, 4, false);
    g = g - g.homogeneous_part(1) - g.homogeneous_part(0) +
        TruncSeries::variable(Z, {"x"}, "x", D).scaled(Rational(trial % 3 ? 1 : -1));
    auto inv = series_reversion(g);
    auto x = TruncSeries::variable(Z, {"x"}, "x", D);
    c.expect(agree_to(series_substitute(g, {{"x", inv}}), x, D) && agree_to(series_substitute(inv, {{"x", g}}), x, D),
             "reversion does not invert composition");
  }

  const int T = cap(cfg, 5);
  for (const auto& law : {LawSpec{"multiplicative"}, LawSpec{"universal_rational", 3}}) {
    auto ctx = TateContext::make(law, T, Window{-T, 2}, 4);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = draw(rng, 1, 4);
      const int k = draw(rng, 0, n);
      auto all = names("x", 1, n);
      BundleData V = BundleData::roots(std::vector<std::string>(all.begin(), all.begin() + k));
      BundleData W = BundleData::roots(std::vector<std::string>(all.begin() + k, all.end()));
      auto sum = tch_on_bundle(ctx, BundleData::roots(all));
      c.expect(same(sum, tch_on_bundle(ctx, V) * tch_on_bundle(ctx, W)),
               law.name + ": tch(V+W) != tch(V) tch(W) for split " + str(k) + "+" + str(n - k));
    }
  }
}

std::pair<int, std::string> call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str()};
}

void determinism(Checker& c, const Config&) {
  const std::vector<std::vector<std::string>> commands{
      {"fgl", "show", "--law", "universal_rational", "--gens", "3", "--order", "6", "--json"},
      {"fgl", "verify", "--law", "jacobi_quartic", "--order", "7", "--json"},
      {"class", "genus", "--series", "todd", "--cpn", "6", "--json"},
      {"tate", "tch", "--law", "multiplicative", "--roots", "3", "--order", "4", "--json"},
      {"tate", "beta", "--law", "universal_rational", "--gens", "4", "--json"},
      {"tate", "invert-euler", "--law", "jacobi_quartic", "--roots", "2", "--order", "3", "--json"},
  };
  for (const auto& args : commands) {
    auto a = call(args);
    auto b = call(args);
    c.expect(a.first == 0, "'" + args[0] + " " + args[1] + "' exits " + str(a.first));
    c.expect(a == b && !a.second.empty(), "'" + args[0] + " " + args[1] + "' output is not reproducible");
  }
  const std::vector<std::pair<std::vector<std::string>, int>> contracts{
      {{"tate", "chern-check", "--roots", "4", "--order", "8"}, cli::kOk},
      {{"fgl", "verify", "--law", "broken-example", "--order", "4"}, cli::kFailed},
      {{"tate", "tch", "--roots", "2", "--window", "0:4"}, cli::kPrecision},
      {{"tate", "frobnicate"}, cli::kUsage},
      {{"fgl", "show", "--order", "many"}, cli::kUsage},
  };
  for (const auto& [args, expected] : contracts) {
    int code = call(args).first;
    c.expect(code == expected, "'" + args[0] + " " + args[1] + "' exits " + str(code) + ", expected " + str(expected));
  }
}

struct Criterion {
  const char* name;
  void (*run)(Checker&, const Config&);
};

const Criterion kTable[kCriteria] = {
    {"FGL axiom suite", fgl_axioms},
    {"tch of the additive law is the total Chern class", total_chern},
    {"two formulas for tch agree", two_formulas},
    {"beta is a unit", beta_unit},
    {"cocycle suite", cocycles},
    {"sharp suite", sharp_suite},
    {"twisted Euler classes invert", invertibility},
    {"genus oracles", genera},
    {"round trips and properties", properties},
    {"CLI determinism and exit codes", determinism},
};

}  // namespace

Result run_one(int id, const Config& config) {
  Result r;
  r.id = id;
  if (id < 1 || id > kCriteria) {
    r.detail = "no such criterion";
    return r;
  }
  const auto& entry = kTable[id - 1];
  r.name = entry.name;
  try {
    Checker c;
    entry.run(c, config);
    r.passed = c.ok();
    r.detail = c.detail();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::vector<Result> run_all(const Config& config) {
  std::vector<Result> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_one(id, config));
  return out;
}

}  // namespace fgc::acceptance
