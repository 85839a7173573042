#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcf/complex.hpp"
#include "pcf/matrix.hpp"

namespace pcf {

/// Creator/destroyer pairs (j, k) with Dcanon[j][k] = 1; every other index
/// is a singleton. Indices are 0-based basis positions.
struct Pairing {
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> singletons;
};

/// Throws std::invalid_argument if dcanon is not a Boolean quasi-monomial
/// differential, the basis does not cover it, or a pair lowers the level or
/// fails to raise the degree by one.
Pairing extract_pairing(const ColumnMatrix& dcanon, std::span<const BasisElement> basis);

/// Half-open interval [birth_level, death_level) in one degree; no death
/// means the class lives forever.
struct Barcode {
  int degree = 0;
  int birth_level = 0;
  std::optional<int> death_level;
  std::optional<double> birth_value;
  std::optional<double> death_value;

  bool is_infinite() const { return !death_level; }
  bool is_empty() const { return death_level && *death_level == birth_level; }
  bool contains(int p) const { return birth_level <= p && (!death_level || p < *death_level); }

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Sorted by (degree, birth, death) with infinite deaths last.
std::vector<Barcode> barcodes(const Pairing& pairing, std::span<const BasisElement> basis,
                              bool drop_empty = true);
void sort_bars(std::vector<Barcode>& bars);

/// Number of degree-n bars alive at level p.
std::size_t betti(std::span<const Barcode> bars, int n, int p);

struct Summand {
  enum class Kind { J, K };

  Kind kind = Kind::J;
  int degree = 0;
  int birth_level = 0;
  std::optional<int> death_level;
  /// Creator first, then destroyer for K summands.
  std::vector<Index> members;
  /// "[1,2)_0", "[1,∞)_0"; an empty interval reads "[3,3)_0".
  std::string label;
};

/// One summand per pair and singleton, ordered by smallest member.
std::vector<Summand> summands(const Pairing& pairing, std::span<const BasisElement> basis);

std::string interval_label(int degree, int birth, std::optional<int> death);

}  // namespace pcf
