#include "fgc/algebra/json_io.hpp"

#include "fgc/algebra/errors.hpp"
#include "fgc/algebra/parse.hpp"

namespace fgc {

using nlohmann::json;

namespace {

bool all_ones(const std::vector<int>& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 1; });
}

json header(const GradedRing& ring, const std::vector<std::string>& vars, const std::vector<int>& weights,
            int trunc) {
  json j;
  j["ring"] = ring_to_json(ring);
  j["vars"] = vars;
  if (!all_ones(weights)) j["weights"] = weights;
  j["trunc"] = trunc;
  return j;
}

json term_json(const std::vector<int>& exps, const RingElement& c) {
  json t;
  t["mono"] = exps;
  t["coeff"] = c.to_string();
  return t;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

}  // namespace

json ring_to_json(const GradedRing& ring) {
  json j;
  j["base"] = ring.base() == Base::Integers ? "Z" : "Q";
  json gens = json::array();
  for (const auto& g : ring.generators()) gens.push_back(json::array({g.name, g.degree}));
  j["gens"] = gens;
  return j;
}

RingPtr ring_from_json(const json& j) {
  const json& base = field(j, "base");
  if (!base.is_string() || (base != "Z" && base != "Q")) throw FormatError("ring base must be \"Z\" or \"Q\"");
  const Base b = base == "Z" ? Base::Integers : Base::Rationals;
  std::vector<Generator> gens;
  if (j.contains("gens")) {
    if (!j["gens"].is_array()) throw FormatError("ring gens must be an array");
    for (const auto& g : j["gens"]) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_string() || !g[1].is_number_integer()) {
        throw FormatError("each generator must be [name, degree]");
      }
      gens.push_back(Generator{g[0].get<std::string>(), g[1].get<int>()});
    }
  }
  if (gens.empty()) return b == Base::Integers ? GradedRing::integers() : GradedRing::rationals();
  return GradedRing::polynomial(b, std::move(gens));
}

json to_json(const TruncSeries& s) {
  json j = header(*s.ring(), s.vars(), s.weights(), s.trunc());
  json terms = json::array();
  for (const auto& [e, c] : s.coefficients()) terms.push_back(term_json(e, c));
  j["terms"] = terms;
  return j;
}

json to_json(const TateSeries& s) {
  json j = header(*s.ring(), s.xvars(), s.weights(), s.trunc());
  const int high = s.high() >= TateSeries::kExact ? std::max(0, s.top()) : s.high();
  j["tate"] = json{{"low", s.low()}, {"high", high}};
  json terms = json::array();
  for (const auto& [e, body] : s.bodies()) {
    for (const auto& [exps, c] : body.coefficients()) {
      json t;
      t["t"] = e;
      t["mono"] = exps;
      t["coeff"] = c.to_string();
      terms.push_back(std::move(t));
    }
  }
  j["terms"] = terms;
  return j;
}

SeriesDocument series_from_json(const json& j) {
  RingPtr ring = ring_from_json(field(j, "ring"));
  const json& vars_json = field(j, "vars");
  if (!vars_json.is_array()) throw FormatError("vars must be an array");
  std::vector<std::string> vars;
  for (const auto& v : vars_json) {
    if (!v.is_string()) throw FormatError("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  std::vector<int> weights;
  if (j.contains("weights")) weights = j["weights"].get<std::vector<int>>();
  const int trunc = int_field(j, "trunc");

  std::optional<std::pair<int, int>> window;
  if (j.contains("tate")) {
    const json& w = j["tate"];
    window = std::make_pair(int_field(w, "low"), int_field(w, "high"));
    if (window->first > 0 || window->second < window->first) throw FormatError("tate window must have low <= 0 <= high");
  }

  const json& terms_json = field(j, "terms");
  if (!terms_json.is_array()) throw FormatError("terms must be an array");
  std::map<int, std::vector<std::pair<TruncSeries::Exponents, RingElement>>> grouped;
  for (const auto& t : terms_json) {
    const json& mono = field(t, "mono");
    if (!mono.is_array() || mono.size() != vars.size()) throw FormatError("mono length must match vars");
    TruncSeries::Exponents exps;
    for (const auto& e : mono) {
      if (!e.is_number_integer() || e.get<int>() < 0) throw FormatError("exponents must be non-negative integers");
      exps.push_back(e.get<int>());
    }
    const json& coeff = field(t, "coeff");
    RingElement c = coeff.is_string()            ? parse_coeff(coeff.get<std::string>(), ring)
                    : coeff.is_number_integer() ? RingElement::constant(ring, coeff.get<long>())
                                                 : throw FormatError("coeff must be a string or integer");
    int e = 0;
    if (t.contains("t")) {
      if (!window) throw FormatError("term has a t-exponent but the document has no tate window");
      e = int_field(t, "t");
      if (e < window->first || e > window->second) throw FormatError("t-exponent outside the tate window");
    }
    grouped[e].emplace_back(std::move(exps), std::move(c));
  }

  if (!window) {
    auto& entries = grouped[0];
    return SeriesDocument{TruncSeries::from_coefficients(ring, vars, trunc, entries, weights), std::nullopt};
  }
  std::map<int, TruncSeries> bodies;
  for (const auto& [e, entries] : grouped) {
    bodies.emplace(e, TruncSeries::from_coefficients(ring, vars, trunc, entries, weights));
  }
  TruncSeries zero(ring, vars, trunc, weights);
  TateSeries tate = TateSeries::from_parts(ring, vars, zero.weights(), trunc, bodies,
                                           std::vector<int>(static_cast<std::size_t>(trunc) + 1, window->second));
  TruncSeries plain = bodies.count(0) ? bodies.at(0) : zero;
  return SeriesDocument{plain, tate};
}

SeriesDocument series_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    return series_from_json(j);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed series document: ") + e.what());
  }
}

}  // namespace fgc
