#pragma once

#include <string_view>

#include "fgc/algebra/ring_element.hpp"

namespace fgc {

/// Parses a coefficient expression over `ring`.
///
/// Grammar: integers, generator names, + - * / ^ and parentheses. Division is
/// only by nonzero constants and only over a Q base; exponents are
/// non-negative integer literals. Throws ParseError with the offending
/// character position.
RingElement parse_coeff(std::string_view text, const RingPtr& ring);

}  // namespace fgc
