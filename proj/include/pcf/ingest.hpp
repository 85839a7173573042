#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcf/complex.hpp"
#include "pcf/field.hpp"

namespace pcf {

/// Malformed text input; line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Points with exact coordinates, all of the same dimension.
struct PointCloud {
  std::size_t dimension = 0;
  std::vector<std::vector<Rational>> points;

  std::size_t size() const { return points.size(); }
};

/// One point per line, coordinates separated by whitespace and/or commas.
/// `#` starts a comment; blank lines are skipped.
PointCloud parse_points(std::string_view text);

/// Every simplex of dimension at most max_dim whose pairwise distances are
/// all at most 2 * max_radius (no bound when absent). Birth is half the
/// largest pairwise distance, vertices are born at 0, and distinct births
/// get contiguous levels from 1. Ties are decided on exact squared distances.
FilteredComplex vietoris_rips(const PointCloud& pc, int max_dim,
                              std::optional<Rational> max_radius = std::nullopt);

}  // namespace pcf
