#pragma once

#include <span>
#include <string>

#include "pcf/barcode.hpp"
#include "pcf/complex.hpp"

namespace pcf {

/// Array of {degree, birth_level, death_level|null, birth_value?, death_value?}.
std::string bars_json(std::span<const Barcode> bars);
/// Header degree,birth_level,death_level,birth_value,death_value; blanks for absent.
std::string bars_csv(std::span<const Barcode> bars);
/// One row per bar grouped by degree: `-` per live level, `>` for an
/// infinite tail. A legend maps levels to thresholds when births are known.
std::string bars_diagram(std::span<const Barcode> bars, std::span<const BasisElement> basis);

std::string summands_text(std::span<const Summand> summands,
                          std::span<const BasisElement> basis);
std::string summands_json(std::span<const Summand> summands,
                          std::span<const BasisElement> basis);

}  // namespace pcf
