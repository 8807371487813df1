#include "foelkit/half_integer.hpp"

#include <charconv>

#include "foelkit/errors.hpp"

namespace foel {

namespace {

int64_t parse_int(std::string_view text, std::string_view whole) {
  int64_t out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("invalid spin value '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty spin value");
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return HalfInteger::from_int(parse_int(text, text));
  }
  const int64_t num = parse_int(text.substr(0, slash), text);
  const int64_t den = parse_int(text.substr(slash + 1), text);
  if (den != 2) {
    throw ParseError("spin value '" + std::string(text) +
                     "' must be an integer or a fraction over 2");
  }
  return HalfInteger::from_doubled(num);
}

std::string HalfInteger::str() const {
  if (doubled_ % 2 == 0) return std::to_string(doubled_ / 2);
  return std::to_string(doubled_) + "/2";
}

}  // namespace foel
