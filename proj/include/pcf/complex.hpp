#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcf/field.hpp"
#include "pcf/matrix.hpp"

namespace pcf {

using Vertex = std::uint32_t;

/// An oriented simplex [v0, ..., vk] with v0 < ... < vk.
class Simplex {
 public:
  Simplex() = default;
  /// Throws std::invalid_argument unless the vertices strictly increase.
  explicit Simplex(std::vector<Vertex> vertices);
  /// Sorts the vertices first; repeated vertices are still rejected.
  static Simplex from_unsorted(std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  int degree() const { return static_cast<int>(vertices_.size()) - 1; }
  /// Codimension-one faces; face m omits vertex m and carries sign (-1)^m.
  std::vector<Simplex> faces() const;
  /// "[0,1,2]"
  std::string label() const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct Cell {
  Simplex simplex;
  int level = 0;
  /// Real threshold this cell appears at, when known.
  std::optional<double> birth;
};

/// Simplices tagged with integer filtration levels. Construction does not
/// enforce closure or monotonicity; validate() reports what is wrong.
class FilteredComplex {
 public:
  void add(Simplex simplex, int level, std::optional<double> birth = std::nullopt);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  /// First cell holding this simplex.
  std::optional<Index> find(const Simplex& simplex) const;
  bool has_births() const;

 private:
  std::vector<Cell> cells_;
  std::map<Simplex, Index> index_;
};

struct Violation {
  enum class Rule { DuplicateSimplex, MissingFace, NonMonotone, BirthOrder };

  Index cell;
  Rule rule;
  std::string message;
};

std::vector<Violation> validate(const FilteredComplex& fc);

/// Adds every missing face at the lowest level among the cofaces that need
/// it (births likewise). Present cells are left untouched.
FilteredComplex close_under_faces(const FilteredComplex& fc);

enum class OrderingMode {
  /// Degree nondecreasing, level nondecreasing within a degree.
  DegreeMajor,
  /// Level nondecreasing, degree nondecreasing within a level.
  LevelMajor,
};

struct BasisElement {
  Index index = 0;
  int degree = 0;
  int level = 0;
  std::string label;
  std::optional<double> birth;
};

struct AdaptedBasis {
  OrderingMode mode = OrderingMode::DegreeMajor;
  /// order[i] is the cell placed at basis position i.
  std::vector<Index> order;
  std::vector<BasisElement> elements;
  /// Present in DegreeMajor mode only.
  std::optional<DegreePartition> partition;
};

class InvalidComplex : public std::invalid_argument {
 public:
  explicit InvalidComplex(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Deterministic adapted order, ties broken lexicographically on vertices.
/// Throws InvalidComplex when validate() is not empty.
AdaptedBasis adapted_basis(const FilteredComplex& fc, OrderingMode mode);

/// Signed incidence matrix of the simplicial boundary in the given basis.
/// Graded for DegreeMajor bases, ungraded otherwise.
GradedDifferential boundary_matrix(const FilteredComplex& fc, const AdaptedBasis& basis,
                                   const FieldSpec& field);

/// No two cells share both degree and level.
bool is_nondegenerate(const FilteredComplex& fc);

/// A generator of an abstract filtered chain complex; its boundary refers to
/// other generators by position.
struct Generator {
  std::string label;
  int degree = 0;
  int level = 0;
  Column boundary;
};

/// A filtered chain complex given by generators stored in a degree-major
/// adapted order. Used where a differential need not come from simplices.
class FilteredChainComplex {
 public:
  FilteredChainComplex() = default;
  /// Throws std::invalid_argument if the generators are not in degree-major
  /// order, a boundary leaves the complex, lowers the degree by anything
  /// other than one, reaches a later level, or does not square to zero.
  FilteredChainComplex(FieldSpec field, std::vector<Generator> generators);

  const FieldSpec& field() const { return field_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  std::vector<BasisElement> basis() const;
  /// Boundary in the stored order.
  GradedDifferential boundary_matrix() const;
  /// The subcomplex spanned by generators of level at most p.
  GradedDifferential at_level(int p) const;
  bool is_nondegenerate() const;

 private:
  DegreePartition partition() const;

  FieldSpec field_;
  std::vector<Generator> generators_;
};

/// The nondegenerate filtered complex whose level-p stage is the upper-left
/// p x p block of D: generator p (1-based) has level p and the degree the
/// partition assigns it. Requires a graded differential.
FilteredChainComplex complex_from_matrix(const GradedDifferential& d);

}  // namespace pcf
