#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcf/field.hpp"

namespace pcf {

// Indices are 0-based here; the interchange formats and printed output are
// 1-based.
using Index = std::size_t;

struct Entry {
  Index row;
  Scalar value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// A sparse column: entries sorted by strictly increasing row, none zero.
using Column = std::vector<Entry>;

/// Column-oriented sparse matrix over an exact field.
class ColumnMatrix {
 public:
  ColumnMatrix() = default;
  ColumnMatrix(std::size_t rows, std::size_t cols, FieldSpec field);

  static ColumnMatrix identity(std::size_t n, FieldSpec field);
  /// Row-major integer literal, mostly for fixtures and tests.
  static ColumnMatrix from_rows(FieldSpec field,
                                const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  bool is_square() const { return rows_ == cols(); }
  const FieldSpec& field() const { return field_; }

  const Column& column(Index j) const;
  /// Replaces column j. Throws std::invalid_argument if the column is not
  /// sorted, holds zeros, leaves the row range or uses another field.
  void set_column(Index j, Column column);

  Scalar at(Index i, Index j) const;
  void set(Index i, Index j, const Scalar& value);

  /// Row of the bottommost nonzero entry of column j.
  std::optional<Index> pivot(Index j) const;
  bool is_zero_column(Index j) const { return column(j).empty(); }

  /// column(target) += factor * column(source)
  void add_scaled_column(Index target, const Scalar& factor, Index source);
  void scale_column(Index j, const Scalar& factor);

  bool is_zero() const;
  std::size_t nonzeros() const;

  /// Row-major dense copy, for printing and the dense oracle kernels.
  std::vector<std::vector<Scalar>> to_dense() const;

  friend bool operator==(const ColumnMatrix&, const ColumnMatrix&) = default;

 private:
  void check_column_index(Index j) const;

  std::size_t rows_ = 0;
  FieldSpec field_;
  std::vector<Column> columns_;
};

/// Throws std::invalid_argument on shape or field mismatch.
ColumnMatrix operator*(const ColumnMatrix& a, const ColumnMatrix& b);
ColumnMatrix operator-(const ColumnMatrix& a, const ColumnMatrix& b);
ColumnMatrix transpose(const ColumnMatrix& m);

/// Consecutive blocks of basis elements sharing a degree.
class DegreePartition {
 public:
  struct Block {
    int degree;
    std::size_t size;
    friend bool operator==(const Block&, const Block&) = default;
  };

  DegreePartition() = default;
  /// Throws std::invalid_argument unless degrees strictly increase.
  explicit DegreePartition(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t dimension() const;
  int degree_of(Index i) const;
  /// Per-element degrees, in order.
  std::vector<int> degrees() const;
  /// The partition induced on the first p elements; emptied blocks are dropped.
  DegreePartition truncated(std::size_t p) const;

  friend bool operator==(const DegreePartition&, const DegreePartition&) = default;

 private:
  std::vector<Block> blocks_;
};

class InvalidDifferential : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A square matrix D with D*D = 0. With a degree partition it is
/// additionally block-superdiagonal: every nonzero entry sends a degree n+1
/// column to a degree n row. Without one it is an ungraded differential.
class GradedDifferential {
 public:
  GradedDifferential() = default;
  /// Validates the invariants; throws InvalidDifferential.
  GradedDifferential(ColumnMatrix matrix, std::optional<DegreePartition> partition);

  static GradedDifferential ungraded(ColumnMatrix matrix) {
    return GradedDifferential(std::move(matrix), std::nullopt);
  }

  const ColumnMatrix& matrix() const { return matrix_; }
  const std::optional<DegreePartition>& partition() const { return partition_; }
  bool is_graded() const { return partition_.has_value(); }
  std::size_t dimension() const { return matrix_.cols(); }
  const FieldSpec& field() const { return matrix_.field(); }

  friend bool operator==(const GradedDifferential&, const GradedDifferential&) = default;

 private:
  ColumnMatrix matrix_;
  std::optional<DegreePartition> partition_;
};

/// image[new_position] = old_index. As a matrix P sends e_new to
/// e_{image[new]}, so (P^-1 M P)[a][b] = M[image[a]][image[b]].
struct Permutation {
  std::vector<Index> image;

  static Permutation identity(std::size_t n);
  bool is_valid() const;
  std::size_t size() const { return image.size(); }
  ColumnMatrix matrix(const FieldSpec& field) const;
  /// P^-1 * M * P for square M.
  ColumnMatrix conjugate(const ColumnMatrix& m) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Structural predicates.
bool is_boolean(const ColumnMatrix& m);
bool is_quasi_monomial(const ColumnMatrix& m);
bool is_upper_triangular(const ColumnMatrix& m);
bool is_unitriangular(const ColumnMatrix& m);
/// Upper-triangular with nonzero diagonal.
bool is_triangular_invertible(const ColumnMatrix& m);
bool is_differential(const ColumnMatrix& m);
/// Block sum of 1x1 zero blocks and 2x2 blocks [[0,1],[0,0]].
bool is_jordan(const ColumnMatrix& m);
bool is_almost_jordan(const ColumnMatrix& m);
bool is_column_reduced(const ColumnMatrix& m);
bool is_block_diagonal(const ColumnMatrix& m, const DegreePartition& partition);
bool is_block_superdiagonal(const ColumnMatrix& m, const DegreePartition& partition);

struct ColumnReduction {
  ColumnMatrix reduced;    // R = M * V
  ColumnMatrix transform;  // V, unitriangular
};

enum class ReductionStrategy {
  /// Left-to-right sweep: each nonzero column clears its pivot row to the right.
  Sweep,
  /// Each column is reduced against earlier columns sharing its pivot row.
  PivotLookup,
};

ColumnReduction column_reduce(const ColumnMatrix& m,
                              ReductionStrategy strategy = ReductionStrategy::Sweep);

/// Boolean matrix with a 1 at every column pivot of a column-reduced R.
/// Throws std::invalid_argument if R is not column-reduced.
ColumnMatrix pivot_matrix(const ColumnMatrix& reduced);

/// Rescales the columns of Vhat so kernel columns have unit diagonal while
/// conjugation still yields exactly Dcanon.
ColumnMatrix normalize(const ColumnMatrix& vhat, const ColumnMatrix& dcanon);

/// Ascending scan emitting each pivot pair (row, column) together and every
/// untouched index alone. Throws std::invalid_argument unless dcanon is a
/// Boolean quasi-monomial differential.
Permutation jordan_permutation(const ColumnMatrix& dcanon);

/// The p x p upper-left block with the induced partition.
GradedDifferential upper_left(const GradedDifferential& d, std::size_t p);

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReductionResult {
  ColumnMatrix R;
  ColumnMatrix V;
  ColumnMatrix Vhat;
  ColumnMatrix Dcanon;
  ColumnMatrix B;
  Permutation P;
};

/// Factors D = B * Dcanon * B^-1 through column reduction. Every invariant
/// of the result is checked by exact multiplication before returning; a
/// failed check throws VerificationError.
ReductionResult standard_reduction(const GradedDifferential& d,
                                   ReductionStrategy strategy = ReductionStrategy::Sweep);

/// Names the first failed invariant of `result` for `d`, or nullopt.
std::optional<std::string> check_reduction(const GradedDifferential& d,
                                           const ReductionResult& result);

}  // namespace pcf
