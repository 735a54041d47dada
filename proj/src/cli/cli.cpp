#include "fgc/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fgc/acceptance/acceptance.hpp"
#include "fgc/algebra/errors.hpp"
#include "fgc/algebra/json_io.hpp"
#include "fgc/charclass/charclass.hpp"
#include "fgc/cnstruct/cnstruct.hpp"
#include "fgc/fgl/formal_group_law.hpp"
#include "fgc/tate/tate.hpp"

namespace fgc::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical check did not pass; the report has already been printed.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  int order = 0;
  std::string law = "additive";
  int gens = 4;
  bool rational = false;
  std::string window;
  int roots = -1;
  int rank = -1;
  std::string series_json;
  std::string series = "hirzebruch";
  int cpn = -1;
  int n = -1;
  bool partial = false;
  std::uint64_t seed = 1;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

LawSpec law_spec(const Options& o) {
  if (!canonical_law_name(o.law)) {
    std::string known;
    for (const auto& n : law_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown law '" + o.law + "' (known: " + known + ")");
  }
  return LawSpec{o.law, o.gens, o.rational};
}

FormalGroupLaw over_q(FormalGroupLaw F) {
  if (F.ring()->is_q_algebra()) return F;
  return extend_scalars(F, ring_union(F.ring(), GradedRing::rationals()));
}

int order_or(const Options& o, int fallback) {
  if (o.order < 0) throw UsageError("--order must be non-negative");
  return o.order > 0 ? o.order : fallback;
}

SeriesDocument read_document(const Options& o) {
  if (o.series_json.empty()) throw UsageError("--series-json is required");
  std::ifstream in(o.series_json, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + o.series_json + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return series_from_text(text.str());
}

TruncSeries read_series(const Options& o) {
  auto doc = read_document(o);
  if (doc.tate) throw UsageError("expected a series without Laurent part");
  if (o.order > 0) {
    if (o.order > doc.series.trunc()) {
      throw PrecisionError("series known to degree " + std::to_string(doc.series.trunc()) + ", --order asks " +
                           std::to_string(o.order));
    }
    return doc.series.truncated(o.order);
  }
  return doc.series;
}

BundleData bundle(const Options& o, bool allow_classes = true) {
  if (o.roots >= 0 && o.rank >= 0) throw UsageError("give either --roots or --rank");
  if (o.roots >= 0) return BundleData::roots(o.roots);
  if (o.rank >= 0) {
    if (!allow_classes) throw UsageError("this command needs Chern roots (--roots)");
    return BundleData::classes(o.rank);
  }
  throw UsageError("--roots or --rank is required");
}

Window window_or(const Options& o, Window fallback) {
  if (o.window.empty()) return fallback;
  try {
    return parse_window(o.window);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void emit(std::ostream& out, const Options& o, const json& j, const std::string& text) {
  if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string monomial(const std::vector<std::string>& vars, const std::vector<int>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size() && i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i] + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------

void fgl_show(const Options& o, std::ostream& out) {
  auto F = make_law(law_spec(o), order_or(o, 8));
  json j = to_json(F.series());
  j["law"] = F.name();
  emit(out, o, j,
       F.name() + " over " + F.ring()->describe() + ", degree <= " + std::to_string(F.trunc()) + "\nF(x,y) = " +
           F.series().to_string() + "\n");
}

void fgl_verify_cmd(const Options& o, std::ostream& out) {
  const int order = order_or(o, 8);
  auto F = make_law(law_spec(o), order);
  auto r = fgl_verify(F, order);
  json report{{"unital", r.unital},
              {"commutative", r.commutative},
              {"associative_to", r.associative_to},
              {"homogeneous", r.homogeneous},
              {"order", r.order},
              {"passed", r.passed()}};
  std::string reason;
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    report["failure"] = {{"axiom", f.axiom}, {"mono", f.exponents}, {"lhs", f.lhs}, {"rhs", f.rhs}};
    reason = f.axiom + " fails at " + monomial({"x", "y"}, f.exponents) + ": " + f.lhs + " vs " + f.rhs;
  }
  json j = to_json(F.series());
  j["law"] = F.name();
  j["report"] = report;
  std::string text = F.name() + " to degree " + std::to_string(order) + "\nunital: " + yes(r.unital) +
                     "\ncommutative: " + yes(r.commutative) + "\nassociative to: " + std::to_string(r.associative_to) +
                     "\nhomogeneous: " + yes(r.homogeneous) + "\n";
  if (!reason.empty()) text += "first failure: " + reason + "\n";
  emit(out, o, j, text);
  if (!r.passed()) throw VerificationFailure(reason.empty() ? "law not verified" : reason);
}

void class_expand(const Options& o, std::ostream& out) {
  ExpClass c(read_series(o));
  auto V = o.roots >= 0 || o.rank >= 0 ? bundle(o) : throw UsageError("--rank or --roots is required");
  auto s = class_on_bundle(c, V);
  emit(out, o, to_json(s), "c(V) = " + s.to_string() + "\n");
}

void class_genus(const Options& o, std::ostream& out) {
  if (o.cpn < 0) throw UsageError("--cpn is required");
  const int D = std::max(order_or(o, o.cpn), o.cpn);
  std::string label = o.series;
  std::optional<ExpClass> Q;
  if (!o.series_json.empty()) {
    Q.emplace(read_series(o));
    label = "series-json";
  } else if (o.series == "todd") {
    Q = todd_series(D);
  } else if (o.series == "l") {
    Q = l_series(D);
  } else if (o.series == "one") {
    Q.emplace(TruncSeries::one(GradedRing::rationals(), {"x"}, D));
  } else if (o.series == "hirzebruch") {
    auto F = over_q(make_law(law_spec(o), D + 1));
    Q = hirzebruch_series(F);
    label = "hirzebruch(" + F.name() + ")";
  } else {
    throw UsageError("--series must be todd, l, one or hirzebruch");
  }
  auto g = genus_cpn(*Q, o.cpn);
  json j{{"series", label}, {"cpn", o.cpn}, {"ring", ring_to_json(*g.ring())}, {"genus", g.to_string()}};
  emit(out, o, j, "genus of CP^" + std::to_string(o.cpn) + " for " + label + ": " + g.to_string() + "\n");
}

void class_quotient(const Options& o, std::ostream& out) {
  TruncSeries g = [&] {
    if (!o.series_json.empty()) return read_series(o);
    return fgl_log(over_q(make_law(law_spec(o), order_or(o, 6) + 1)));
  }();
  auto q = orientation_quotient(g);
  emit(out, o, to_json(q.series()), "g(x)/x = " + q.series().to_string() + "\n");
}

json tate_json(const TateSeries& s, const TateContext& ctx) {
  json j = to_json(s);
  j["law"] = ctx.law().name();
  return j;
}

void tate_tch(const Options& o, std::ostream& out) {
  auto V = bundle(o);
  const int D = order_or(o, 6);
  auto ctx = TateContext::make(law_spec(o), D, window_or(o, Window{-(V.rank() + D), 4}), V.rank());
  auto s = tch_on_bundle(ctx, V);
  emit(out, o, tate_json(s, ctx), "tch(V) = " + s.to_string() + "\n");
}

void tate_beta(const Options& o, std::ostream& out) {
  auto ctx = TateContext::make(law_spec(o), order_or(o, 1), window_or(o, Window{-1, 4}), 1);
  auto b = beta_coefficient(ctx);
  json j = tate_json(b.series, ctx);
  j["unit"] = b.unit;
  j["leading_exponent"] = b.leading_exponent;
  j["leading"] = b.leading.to_string();
  emit(out, o, j,
       "beta = " + b.series.to_string() + "\nleading coefficient " + b.leading.to_string() + " at t^" +
           std::to_string(b.leading_exponent) + ", unit: " + yes(b.unit) + "\n");
  if (!b.unit) throw VerificationFailure("leading coefficient " + b.leading.to_string() + " is not a unit");
}

void tate_chern_check(const Options& o, std::ostream& out) {
  auto V = bundle(o, false);
  const int D = order_or(o, 6);
  auto ctx = TateContext::make(law_spec(o), D, window_or(o, Window{-(V.rank() + D), 1}), V.rank());
  auto r = total_chern_check(ctx, V, D);
  json j{{"law", ctx.law().name()}, {"rank", V.rank()}, {"order", r.order}, {"passed", r.passed}};
  std::string reason;
  if (r.mismatch) {
    const auto& m = *r.mismatch;
    j["mismatch"] = {{"mono", m.exponents}, {"t", m.t_exponent}, {"lhs", m.lhs}, {"rhs", m.rhs}};
    reason = "coefficient of " + monomial(V.names, m.exponents) + " t^" + std::to_string(m.t_exponent) + ": " + m.lhs +
             " vs " + m.rhs;
  }
  emit(out, o, j,
       "tch(V) = sum_k c_k t^-k through degree " + std::to_string(r.order) + ": " + yes(r.passed) + "\n" +
           (reason.empty() ? "" : "first mismatch: " + reason + "\n"));
  if (!r.passed) throw VerificationFailure(reason);
}

void tate_invert(const Options& o, std::ostream& out) {
  auto V = bundle(o, false);
  const int D = order_or(o, 4);
  auto ctx = TateContext::make(law_spec(o), D, window_or(o, Window{-(V.rank() + D), 4}), V.rank());
  auto s = tate_invert_euler(ctx, V);
  emit(out, o, tate_json(s, ctx), "e(V (x) L)^-1 = " + s.to_string() + "\n");
}

json report_json(const CnReport& r) {
  json j{{"n", r.n},
         {"order", r.order},
         {"symmetric", r.symmetric},
         {"normalized", r.normalized},
         {"cocycle_to", r.cocycle_to},
         {"passed", r.passed()}};
  if (r.n == 0) j["unit"] = r.unit;
  if (r.t_high != TateSeries::kExact) j["t_high"] = r.t_high;
  if (r.failure) j["failure"] = *r.failure;
  return j;
}

std::string report_text(const CnReport& r) {
  std::string s = "C^" + std::to_string(r.n) + " to degree " + std::to_string(r.order) +
                  "\nsymmetric: " + yes(r.symmetric) + "\nnormalized: " + yes(r.normalized) +
                  "\ncocycle to: " + std::to_string(r.cocycle_to) + "\n";
  if (r.n == 0) s += "unit: " + yes(r.unit) + "\n";
  if (r.t_high != TateSeries::kExact) s += "t-precision: " + std::to_string(r.t_high) + "\n";
  if (r.failure) s += "first failure: " + *r.failure + "\n";
  return s;
}

int level(const Options& o) {
  if (o.n < 0) throw UsageError("--n is required");
  return o.n;
}

void cn_verify(const Options& o, std::ostream& out) {
  const int n = level(o);
  auto doc = read_document(o);
  const int trunc = doc.series.trunc();
  auto F = make_law(law_spec(o), std::max(trunc, 1));
  CnStructure s = doc.tate ? CnStructure(n, F, *doc.tate) : CnStructure(n, F, doc.series);
  auto r = verify_cn(s, order_or(o, trunc));
  json j = report_json(r);
  j["law"] = F.name();
  emit(out, o, j, report_text(r));
  if (!r.passed()) throw VerificationFailure(*r.failure);
}

void cn_sharp(const Options& o, std::ostream& out) {
  const int n = level(o);
  auto f = read_series(o);
  const Window w = window_or(o, Window{-6, 6});
  const int high = std::max(w.high, 0);
  const int D = o.order > 0 ? o.order : f.trunc() - high;
  if (D < 0) throw PrecisionError("series of degree " + std::to_string(f.trunc()) + " cannot reach t^" +
                                  std::to_string(high));
  auto spec = law_spec(o);
  auto F = make_law(spec, D + high);
  CnStructure s(n, F, f);
  auto input = verify_cn(s, D + high);
  if (!input.passed()) {
    emit(out, o, json{{"input", report_json(input)}}, "input " + report_text(input));
    throw VerificationFailure("input: " + *input.failure);
  }
  auto ctx = TateContext::make(spec, D, w, 1);
  auto g = sharp(s.with_verified(D + high), ctx);
  auto r = verify_cn(g, D);
  json j = to_json(g.tate());
  j["law"] = F.name();
  j["n"] = g.n();
  j["report"] = report_json(r);
  emit(out, o, j, "sharp = " + g.tate().to_string() + "\n" + report_text(r));
  if (!r.passed()) throw VerificationFailure(*r.failure);
}

void cn_delta(const Options& o, std::ostream& out) {
  auto g = read_series(o);
  auto F = make_law(law_spec(o), std::max(g.trunc(), 1));
  auto d = o.partial ? difference(g, F) : bar_differential(g, F);
  emit(out, o, to_json(d), (o.partial ? "delta_1 g = " : "Delta g = ") + d.to_string() + "\n");
}

void selftest(const Options& o, std::ostream& out) {
  if (o.order < 0) throw UsageError("--order must be non-negative");
  acceptance::Config cfg{o.order, o.seed};
  auto results = acceptance::run_all(cfg);
  bool all = true;
  json list = json::array();
  std::string text;
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    text += std::string(r.passed ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + ". " + r.name + " (" +
            r.detail + ")\n";
  }
  emit(out, o, json{{"order", o.order}, {"criteria", list}, {"passed", all}}, text);
  if (!all) throw VerificationFailure("acceptance criteria failed");
}

// ---------------------------------------------------------------------------

using Handler = std::function<void(const Options&, std::ostream&)>;

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, Options& o,
               std::vector<std::pair<CLI::App*, Handler>>& table, Handler h) {
  auto* app = parent->add_subcommand(name, help);
  app->add_flag("--json", o.json, "emit JSON");
  app->add_option("--order", o.order, "truncation order");
  table.emplace_back(app, std::move(h));
  return app;
}

void law_options(CLI::App* app, Options& o) {
  app->add_option("--law", o.law, "formal group law");
  app->add_option("--gens", o.gens, "generators of the universal law")->check(CLI::Range(1, 12));
  app->add_flag("--rational", o.rational, "use rational coefficients");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::vector<std::pair<CLI::App*, Handler>> table;
  CLI::App app{"Exact calculus of formal group laws, characteristic classes and Tate series", "fgc"};
  app.require_subcommand(1);

  auto* fgl = app.add_subcommand("fgl", "formal group laws")->require_subcommand(1);
  law_options(leaf(fgl, "show", "print the law", o, table, fgl_show), o);
  law_options(leaf(fgl, "verify", "check the axioms", o, table, fgl_verify_cmd), o);

  auto* cls = app.add_subcommand("class", "characteristic classes")->require_subcommand(1);
  auto* expand = leaf(cls, "expand", "evaluate a characteristic series on a bundle", o, table, class_expand);
  expand->add_option("--series-json", o.series_json, "characteristic series");
  expand->add_option("--rank", o.rank, "bundle rank (Chern classes)");
  expand->add_option("--roots", o.roots, "bundle rank (Chern roots)");
  auto* genus = leaf(cls, "genus", "genus of a projective space", o, table, class_genus);
  law_options(genus, o);
  genus->add_option("--series", o.series, "todd, l, one or hirzebruch");
  genus->add_option("--series-json", o.series_json, "characteristic series");
  genus->add_option("--cpn", o.cpn, "dimension n of CP^n");
  auto* quotient = leaf(cls, "quotient", "g(x)/x for a parameter g", o, table, class_quotient);
  law_options(quotient, o);
  quotient->add_option("--series-json", o.series_json, "parameter g (default: the logarithm of the law)");

  auto* tate = app.add_subcommand("tate", "Euler-Tate classes")->require_subcommand(1);
  for (auto [name, help, h] : {std::tuple<const char*, const char*, Handler>{"tch", "Euler-Tate class", tate_tch},
                               {"beta", "coefficient of x in (x +_F t)/t", tate_beta},
                               {"chern-check", "compare with the total Chern class", tate_chern_check},
                               {"invert-euler", "inverse of e(V (x) L)", tate_invert}}) {
    auto* sub = leaf(tate, name, help, o, table, h);
    law_options(sub, o);
    sub->add_option("--window", o.window, "t-window low:high");
    if (std::string(name) != "beta") {
      sub->add_option("--roots", o.roots, "bundle rank (Chern roots)");
      sub->add_option("--rank", o.rank, "bundle rank (Chern classes)");
    }
  }

  auto* cn = app.add_subcommand("cn", "C^n-structures")->require_subcommand(1);
  for (auto [name, help, h] : {std::tuple<const char*, const char*, Handler>{"verify", "check a C^n-structure", cn_verify},
                               {"sharp", "specialize the last slot to the Tate variable", cn_sharp},
                               {"delta", "bar differential", cn_delta}}) {
    auto* sub = leaf(cn, name, help, o, table, h);
    law_options(sub, o);
    sub->add_option("--series-json", o.series_json, "series document");
    if (std::string(name) != "delta") sub->add_option("--n", o.n, "level n");
    if (std::string(name) == "sharp") sub->add_option("--window", o.window, "t-window low:high");
    if (std::string(name) == "delta") sub->add_flag("--partial", o.partial, "coboundary in the first slot only");
  }

  auto* self = leaf(&app, "selftest", "run the acceptance suite", o, table, selftest);
  self->add_option("--seed", o.seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fgc: error: usage: " << one_line(e.what()) << "\n";
    return kUsage;
  }

  auto report = [&](const char* kind, const std::string& what, int code) {
    err << "fgc: error: " << kind << ": " << one_line(what) << "\n";
    return code;
  };
  try {
    for (const auto& [sub, handler] : table) {
      if (sub->parsed()) {
        handler(o, out);
        return kOk;
      }
    }
    throw UsageError("no command given");
  } catch (const VerificationFailure& e) {
    return report("verification", e.what(), kFailed);
  } catch (const UsageError& e) {
    return report("usage", e.what(), kUsage);
  } catch (const PrecisionError& e) {
    return report("precision", e.what(), kPrecision);
  } catch (const ParseError& e) {
    return report("parse", e.what(), kUsage);
  } catch (const FormatError& e) {
    return report("format", e.what(), kUsage);
  } catch (const RingMismatch& e) {
    return report("ring", e.what(), kUsage);
  } catch (const DomainError& e) {
    return report("domain", e.what(), kUsage);
  } catch (const std::exception& e) {
    return report("internal", e.what(), kUsage);
  }
}

}  // namespace fgc::cli
