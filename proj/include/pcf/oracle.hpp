#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pcf/complex.hpp"
#include "pcf/matrix.hpp"

namespace pcf {

/// Rank by dense row-echelon elimination. Shares no code with column_reduce.
std::size_t rank_gauss(const ColumnMatrix& m);

struct RankEntry {
  int degree = 0;
  int level = 0;
  std::size_t dimension = 0;  // cells of this degree at level <= p
  std::size_t rank = 0;       // rank of the boundary out of this degree
  std::size_t nullity = 0;    // dimension - rank
  std::size_t betti = 0;      // nullity - rank of the boundary into this degree
};

/// Levelwise ranks of a filtered complex at every level where it changes.
class RankProfile {
 public:
  RankProfile() = default;
  RankProfile(std::vector<int> levels, int top_degree, std::vector<RankEntry> entries);

  const std::vector<int>& levels() const { return levels_; }
  int top_degree() const { return top_degree_; }
  const std::vector<RankEntry>& entries() const { return entries_; }
  /// Homology dimension in degree n at level p; 0 below the first level and
  /// outside the degree range.
  std::size_t betti(int n, int p) const;
  /// The entry in force at level p, if any.
  const RankEntry* at(int n, int p) const;

 private:
  std::vector<int> levels_;
  int top_degree_ = -1;
  std::vector<RankEntry> entries_;  // level-major, degrees 0..top_degree
};

/// Throws InvalidComplex on an invalid complex.
RankProfile homology_dims(const FilteredComplex& fc, const FieldSpec& field);
RankProfile homology_dims(const FilteredChainComplex& cc);

/// Raised when an exhaustive search contradicts existence or uniqueness of
/// the canonical form.
class CanonicalFormViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Largest size brute_force_canonical accepts.
inline constexpr std::size_t kBruteForceMaxSize = 4;

/// Tries every unitriangular B over Z/2 and keeps each B^-1 D B that is a
/// Boolean quasi-monomial square-zero matrix. Throws std::invalid_argument
/// unless D is a differential over Z/2 of size at most 4, and
/// CanonicalFormViolation if no candidate or two different candidates survive.
ColumnMatrix brute_force_canonical(const ColumnMatrix& d);

/// Every m x m matrix over Z/2 squaring to zero, m <= 4.
std::vector<ColumnMatrix> enumerate_differentials_z2(std::size_t m);

}  // namespace pcf
