#include "pansphere/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace pansphere {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 6);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

double round_significant(double value) {
  if (!std::isfinite(value)) return value;
  const std::string s = format_number(value);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace pansphere
