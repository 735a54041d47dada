#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fgc/algebra/tate_series.hpp"

namespace fgc {

nlohmann::json ring_to_json(const GradedRing& ring);
RingPtr ring_from_json(const nlohmann::json& j);

/// Canonical series JSON: terms sorted by (t-exponent, graded-lex monomial).
nlohmann::json to_json(const TruncSeries& s);
nlohmann::json to_json(const TateSeries& s);

/// A decoded series document; `tate` is set when the document has a window.
struct SeriesDocument {
  TruncSeries series;
  std::optional<TateSeries> tate;
};

/// Decodes the series schema. Throws FormatError (structure) or ParseError (coefficients).
SeriesDocument series_from_json(const nlohmann::json& j);
SeriesDocument series_from_text(const std::string& text);

}  // namespace fgc
