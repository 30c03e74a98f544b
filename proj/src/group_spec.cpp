#include "cliffext/group_spec.hpp"

#include <cctype>
#include <limits>

#include "cliffext/errors.hpp"

namespace cliffext {

FinAbGroup parse_group_spec(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::vector<std::int64_t> orders;
  skip_ws();
  if (pos == text.size()) throw ParseError("empty group spec", pos);
  while (true) {
    skip_ws();
    if (pos >= text.size()) throw ParseError("expected 'Z' after 'x'", pos);
    const std::size_t factor_start = pos;
    if (text[pos] != 'Z' && text[pos] != 'z') throw ParseError("expected 'Z'", pos);
    ++pos;
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected cyclic order after 'Z'", pos);
    std::int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (value > (std::numeric_limits<std::int32_t>::max() - 9) / 10) throw ParseError("cyclic order too large", factor_start);
      value = value * 10 + (text[pos] - '0');
      ++pos;
    }
    if (value < 1) throw ParseError("cyclic order must be >= 1", factor_start);
    orders.push_back(value);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != 'x' && text[pos] != 'X') throw ParseError("expected 'x' between factors", pos);
    ++pos;
  }
  return FinAbGroup::make(std::move(orders));
}

}  // namespace cliffext
