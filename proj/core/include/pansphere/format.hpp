#pragma once

#include <string>

namespace pansphere {

/// Locale-independent shortest form with at most 6 significant digits.
std::string format_number(double value);
/// value rounded to 6 significant digits (what format_number prints).
double round_significant(double value);

}  // namespace pansphere
