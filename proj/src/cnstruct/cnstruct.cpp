#include "fgc/cnstruct/cnstruct.hpp"

#include <algorithm>

#include "fgc/algebra/errors.hpp"

namespace fgc {

namespace {

constexpr int kMaxLevel = 8;

std::string xv(int k) { return "x" + std::to_string(k); }

std::vector<std::string> slot_names(int n) {
  if (n == 0) return {"x"};
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back(xv(k));
  return names;
}

void require_level(int n) {
  if (n < 0 || n > kMaxLevel) throw DomainError("level n must lie in 0.." + std::to_string(kMaxLevel));
}

void require_unit_weights(const std::vector<int>& weights) {
  for (int w : weights) {
    if (w != 1) throw DomainError("C^n-structure variables must have weight 1");
  }
}

// Positional renaming to x1..xn; fewer variables are fine if already named so.
std::map<std::string, std::string> canonical_names(const std::vector<std::string>& vars, int n) {
  auto names = slot_names(n);
  std::map<std::string, std::string> map;
  if (vars.size() == names.size()) {
    for (std::size_t i = 0; i < vars.size(); ++i) map.emplace(vars[i], names[i]);
    return map;
  }
  for (const auto& v : vars) {
    if (std::find(names.begin(), names.end(), v) == names.end()) {
      throw DomainError("expected " + std::to_string(n ? n : 1) + " variable(s), got '" + v + "'");
    }
    map.emplace(v, v);
  }
  return map;
}

TruncSeries canonical(const TruncSeries& f, int n) {
  require_unit_weights(f.weights());
  return f.renamed(canonical_names(f.vars(), n)).with_vars(slot_names(n));
}

TateSeries canonical(const TateSeries& f, int n) {
  require_unit_weights(f.weights());
  return f.renamed(canonical_names(f.xvars(), n)).with_xvars(slot_names(n));
}

TateSeries one_like(const RingPtr& ring, const std::vector<std::string>& vars, int trunc) {
  return TateSeries::t_power(ring, vars, trunc, 0);
}

// f with slot k (1-based, named xk) replaced by images[k-1], over `vars`.
TateSeries pullback(const TateSeries& f, const std::vector<TruncSeries>& images, const std::vector<std::string>& vars) {
  Bindings bindings;
  for (std::size_t k = 0; k < images.size(); ++k) bindings.emplace_back(f.xvars()[k], images[k]);
  return tate_substitute(f, bindings).with_xvars(vars);
}

TateSeries alternating_product(const TateSeries& f, const std::vector<std::vector<TruncSeries>>& faces,
                               const std::vector<std::string>& vars, int trunc) {
  TateSeries num = one_like(f.ring(), vars, trunc);
  TateSeries den = num;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    TateSeries p = pullback(f, faces[i], vars);
    if (i % 2 == 0) {
      num = num * p;
    } else {
      den = den * p;
    }
  }
  return num * tate_invert(den);
}

std::vector<TruncSeries> extended(std::vector<TruncSeries> images, const std::vector<std::string>& vars) {
  for (auto& s : images) s = s.with_vars(vars);
  return images;
}

TateSeries defect_of(const TateSeries& f, int n, const FormalGroupLaw& F, int trunc) {
  auto vars = face_variables(n);
  if (n == 1) return one_like(f.ring(), vars, trunc);
  std::vector<std::vector<TruncSeries>> faces;
  for (int i = 0; i <= 3; ++i) {
    auto images = extended(bar_map(i, 2, F, trunc), vars);
    for (int k = 3; k <= n; ++k) images.push_back(TruncSeries::variable(f.ring(), vars, xv(k), trunc));
    faces.push_back(std::move(images));
  }
  return alternating_product(f, faces, vars, trunc);
}

struct Discrepancy {
  int degree;
  std::string text;
};

std::string monomial_text(const std::vector<std::string>& vars, const TruncSeries::Exponents& e, int t) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  if (t != 0) out += (out.empty() ? "t^" : "*t^") + std::to_string(t);
  return out.empty() ? "1" : out;
}

// Lowest x-degree at which a and b differ (within the precision of both).
std::optional<Discrepancy> discrepancy(const TateSeries& a, const TateSeries& b) {
  TateSeries diff = a - b;
  std::optional<std::pair<int, int>> best;  // (degree, t-exponent)
  for (const auto& [e, body] : diff.bodies()) {
    if (body.is_zero()) continue;
    int key = body.terms().front().key;
    if (!best || key < best->first) best = {key, e};
  }
  if (!best) return std::nullopt;
  const auto& body = diff.bodies().at(best->second);
  const auto exps = body.coefficients().front().first;
  auto lhs = a.with_xvars(diff.xvars()).coefficient(exps, best->second).to_string();
  auto rhs = b.with_xvars(diff.xvars()).coefficient(exps, best->second).to_string();
  return Discrepancy{best->first, "coefficient of " + monomial_text(diff.xvars(), exps, best->second) + " is " +
                                      lhs + ", expected " + rhs};
}

bool is_laurent_unit(const TateSeries& c) {
  if (c.is_zero()) return false;
  const auto& lead = c.bodies().begin()->second;
  return is_unit(lead.constant_term());
}

RingPtr common_ring(const FormalGroupLaw& F, const RingPtr& r) { return ring_union(F.ring(), r); }

}  // namespace

CnStructure::CnStructure(int n, const FormalGroupLaw& F, const TruncSeries& f)
    : n_(n), F_(F), f_(F.ring(), {}, 0), over_tate_(false) {
  require_level(n);
  TruncSeries g = canonical(f, n);
  if (!is_unit(g.constant_term())) throw DomainError("C^n-structure series must have a unit constant term");
  RingPtr ring = common_ring(F, g.ring());
  F_ = extend_scalars(F, ring);
  f_ = TateSeries::from_body(extend_scalars(g, ring), 0);
}

CnStructure::CnStructure(int n, const FormalGroupLaw& F, const TateSeries& f)
    : n_(n), F_(F), f_(F.ring(), {}, 0), over_tate_(true) {
  require_level(n);
  TateSeries g = canonical(f, n);
  RingPtr ring = common_ring(F, g.ring());
  F_ = extend_scalars(F, ring);
  f_ = extend_scalars(g, ring);
}

TruncSeries CnStructure::series() const {
  if (over_tate_) throw DomainError("structure has Laurent coefficients");
  return f_.body(0);
}

CnStructure CnStructure::with_verified(int order) const {
  CnStructure copy = *this;
  copy.verified_to_ = std::max(verified_to_, std::min(order, trunc()));
  return copy;
}

std::vector<std::string> face_variables(int n) {
  std::vector<std::string> vars;
  for (int k = 0; k <= n; ++k) vars.push_back(xv(k));
  return vars;
}

std::vector<TruncSeries> bar_map(int i, int n, const FormalGroupLaw& F, int trunc) {
  require_level(n);
  if (i < 0 || i > n + 1) {
    throw DomainError("face index " + std::to_string(i) + " out of range 0.." + std::to_string(n + 1));
  }
  auto vars = face_variables(n);
  const bool merge = i >= 1 && i <= n;
  if (merge && F.trunc() < trunc) {
    throw PrecisionError("law known to degree " + std::to_string(F.trunc()) + ", faces need " +
                         std::to_string(trunc));
  }
  std::vector<TruncSeries> images;
  for (int k = 1; k <= n; ++k) {
    int source = (i == 0 || (merge && k > i)) ? k : k - 1;
    if (merge && k == i) {
      images.push_back(fgl_add_vars(F, xv(i - 1), xv(i)).with_vars(vars).truncated(trunc));
    } else {
      images.push_back(TruncSeries::variable(F.ring(), vars, xv(source), trunc));
    }
  }
  return images;
}

TateSeries cocycle_defect(const CnStructure& s) {
  if (s.n() < 1) throw DomainError("cocycle condition needs n >= 1");
  int trunc = s.n() >= 2 ? std::min(s.trunc(), s.law().trunc()) : s.trunc();
  return defect_of(s.tate().x_truncated(trunc), s.n(), s.law(), trunc);
}

CnReport verify_cn(const CnStructure& s, int order) {
  CnReport r;
  r.n = s.n();
  r.order = order;
  if (order < 0) throw DomainError("order must be non-negative");
  int limit = s.n() >= 2 ? std::min(s.trunc(), s.law().trunc()) : s.trunc();
  if (order > limit) {
    throw PrecisionError("order " + std::to_string(order) + " exceeds the known degree " + std::to_string(limit));
  }
  const TateSeries f = s.tate().x_truncated(order);
  const auto& vars = f.xvars();
  const TateSeries one = one_like(f.ring(), vars, order);
  auto note = [&](const std::string& what, const Discrepancy& d) {
    if (!r.failure) r.failure = what + ": " + d.text;
  };

  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    if (auto d = discrepancy(f.swapped(i, i + 1), f)) {
      r.symmetric = false;
      note("symmetry under " + vars[i] + "<->" + vars[i + 1], *d);
    }
  }
  for (const auto& v : vars) {
    if (auto d = discrepancy(f.set_zero(v), one.set_zero(v))) {
      r.normalized = false;
      note("normalization at " + v + "=0", *d);
    }
  }
  r.t_high = f.high();
  if (s.n() == 0) {
    r.cocycle_to = order;
    r.unit = s.trunc() >= 1 && is_laurent_unit(s.tate().x_coefficient({1}));
    if (!r.unit && !r.failure) r.failure = "unit: the coefficient of x is not invertible";
    return r;
  }
  TateSeries defect = defect_of(f, s.n(), s.law(), order);
  r.t_high = std::min(r.t_high, defect.high());
  if (auto d = discrepancy(defect, one_like(f.ring(), defect.xvars(), order))) {
    r.cocycle_to = d->degree - 1;
    note("cocycle", *d);
  } else {
    r.cocycle_to = order;
  }
  return r;
}

CnStructure certify(const CnStructure& s, int order) {
  auto report = verify_cn(s, order);
  if (!report.passed()) throw DomainError("not a C^" + std::to_string(s.n()) + "-structure: " + *report.failure);
  return s.with_verified(order);
}

TruncSeries bar_differential(const TruncSeries& g, const FormalGroupLaw& F) {
  const int n = static_cast<int>(g.nvars());
  require_level(n + 1);
  if (!is_unit(g.constant_term())) throw DomainError("bar differential needs a unit series");
  RingPtr ring = common_ring(F, g.ring());
  FormalGroupLaw law = extend_scalars(F, ring);
  TruncSeries h = extend_scalars(canonical(g, n), ring);
  if (n == 0) h = h.with_vars({});
  const int trunc = std::min(h.trunc(), law.trunc());
  auto vars = face_variables(n);
  std::vector<std::vector<TruncSeries>> faces;
  for (int i = 0; i <= n + 1; ++i) faces.push_back(bar_map(i, n, law, trunc));
  TateSeries d = alternating_product(TateSeries::from_body(h.truncated(trunc), 0), faces, vars, trunc);
  std::map<std::string, std::string> shift;
  for (int k = 0; k <= n; ++k) shift.emplace(xv(k), xv(k + 1));
  return d.body(0).renamed(shift);
}

TruncSeries difference(const TruncSeries& g, const FormalGroupLaw& F) {
  const int m = static_cast<int>(g.nvars());
  if (m < 1) throw DomainError("difference needs at least one variable");
  require_level(m + 1);
  if (!is_unit(g.constant_term())) throw DomainError("difference needs a unit series");
  RingPtr ring = common_ring(F, g.ring());
  FormalGroupLaw law = extend_scalars(F, ring);
  TateSeries h = TateSeries::from_body(extend_scalars(canonical(g, m), ring), 0);
  const int trunc = std::min(h.trunc(), law.trunc());
  h = h.x_truncated(trunc);
  std::vector<std::string> vars = slot_names(m + 1);
  auto first_slot = [&](TruncSeries image) {
    std::vector<TruncSeries> images{std::move(image)};
    for (int k = 2; k <= m; ++k) images.push_back(TruncSeries::variable(ring, vars, xv(k + 1), trunc));
    return images;
  };
  auto var = [&](int k) { return TruncSeries::variable(ring, vars, xv(k), trunc); };
  TruncSeries sum = fgl_add_vars(law, "x1", "x2").with_vars(vars).truncated(trunc);
  TateSeries d = alternating_product(h, {first_slot(var(1)), first_slot(sum), first_slot(var(2))}, vars, trunc);
  return d.body(0);
}

CnStructure sharp(const CnStructure& s, const TateContext& ctx) {
  if (s.n() < 2) throw DomainError("sharp needs a structure with n >= 2");
  if (s.over_tate()) throw DomainError("sharp needs a structure with plain coefficients");
  if (s.law().name() != ctx.law().name()) {
    throw DomainError("structure is over law " + s.law().name() + ", context uses " + ctx.law().name());
  }
  const int need = ctx.trunc() + std::max(ctx.window().high, 0);
  if (s.trunc() < need) {
    throw PrecisionError("sharp: structure known to degree " + std::to_string(s.trunc()) + ", window needs " +
                         std::to_string(need));
  }
  if (s.verified_to() < need) {
    throw DomainError("sharp: input verified to degree " + std::to_string(s.verified_to()) + ", needs " +
                      std::to_string(need));
  }
  TruncSeries body = s.series().truncated(need).renamed({{xv(s.n()), ctx.t()}});
  TateSeries g = ctx.finish(TateSeries::from_power_series(body, ctx.t(), 0), "sharp");
  return CnStructure(s.n() - 1, s.law(), g);
}

CnStructure sharp0(const TateContext& ctx) {
  auto beta = beta_coefficient(ctx);
  if (!beta.unit) throw DomainError("sharp0: the coefficient of x is not a unit");
  return CnStructure(0, ctx.law(), euler_tate_series(ctx));
}

TateSeries adjoint_series(const TruncSeries& g, const TateContext& ctx) {
  if (g.nvars() > 1) throw DomainError("adjoint series needs a one-variable series");
  if (!(g.constant_term() == RingElement::constant(g.ring(), 1))) throw DomainError("adjoint series needs g(0) = 1");
  TruncSeries d = bar_differential(g, ctx.law());
  d = d.renamed({{"x1", "x"}, {"x2", ctx.t()}}).with_vars({"x", ctx.t()});
  return ctx.finish(TateSeries::from_power_series(d, ctx.t(), 0), "adjoint series");
}

}  // namespace fgc
