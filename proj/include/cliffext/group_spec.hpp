#pragma once

#include <string_view>

#include "cliffext/abelian.hpp"

namespace cliffext {

/// Parses `Z<d>` factors joined by `x` ("Z4xZ2", "z2 x z2"). Case-insensitive, whitespace ignored.
/// Throws ParseError carrying the byte offset of the problem; orders < 1 are rejected at the
/// offset of their factor.
FinAbGroup parse_group_spec(std::string_view text);

}  // namespace cliffext
