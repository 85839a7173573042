#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pcf/field.hpp"

namespace pcf {

/// Exact value of a decimal literal such as "-1.25", "3", ".5" or "2e-3".
std::optional<Rational> parse_decimal(std::string_view text);

/// Nearest double to q (ties to even). mpq get_d truncates instead.
double to_double(const Rational& q);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace pcf
