#include "pcf/matrix.hpp"

#include <algorithm>
#include <string>

namespace pcf {

namespace {

// a + factor * b, both sorted; zero sums dropped.
Column axpy(const Column& a, const Scalar& factor, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->row < ib->row)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->row < ia->row) {
      out.push_back({ib->row, factor * ib->value});
      ++ib;
    } else {
      Scalar sum = ia->value + factor * ib->value;
      if (!sum.is_zero()) out.push_back({ia->row, std::move(sum)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

void require_same_field(const ColumnMatrix& a, const ColumnMatrix& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("matrices over " + a.field().to_string() + " and " +
                        b.field().to_string());
  }
}

std::string shape(const ColumnMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

// --- ColumnMatrix ----------------------------------------------------------

ColumnMatrix::ColumnMatrix(std::size_t rows, std::size_t cols, FieldSpec field)
    : rows_(rows), field_(field), columns_(cols) {}

ColumnMatrix ColumnMatrix::identity(std::size_t n, FieldSpec field) {
  ColumnMatrix m(n, n, field);
  for (Index j = 0; j < n; ++j) m.columns_[j].push_back({j, Scalar::one(field)});
  return m;
}

ColumnMatrix ColumnMatrix::from_rows(FieldSpec field,
                                     const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ColumnMatrix m(rows.size(), cols, field);
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix literal");
    for (Index j = 0; j < cols; ++j) {
      Scalar v = Scalar::from_int(field, rows[i][j]);
      if (!v.is_zero()) m.columns_[j].push_back({i, std::move(v)});
    }
  }
  return m;
}

void ColumnMatrix::check_column_index(Index j) const {
  if (j >= columns_.size()) {
    throw std::out_of_range("column " + std::to_string(j) + " out of range for " +
                            shape(*this) + " matrix");
  }
}

const Column& ColumnMatrix::column(Index j) const {
  check_column_index(j);
  return columns_[j];
}

void ColumnMatrix::set_column(Index j, Column column) {
  check_column_index(j);
  for (std::size_t k = 0; k < column.size(); ++k) {
    const Entry& e = column[k];
    if (e.row >= rows_) throw std::invalid_argument("row index out of range");
    if (k > 0 && column[k - 1].row >= e.row) {
      throw std::invalid_argument("column rows not strictly increasing");
    }
    if (e.value.is_zero()) throw std::invalid_argument("explicit zero in sparse column");
    if (!(e.value.field() == field_)) throw FieldMismatch("entry field differs from matrix");
  }
  columns_[j] = std::move(column);
}

Scalar ColumnMatrix::at(Index i, Index j) const {
  const Column& col = column(j);
  auto it = std::lower_bound(col.begin(), col.end(), i,
                             [](const Entry& e, Index row) { return e.row < row; });
  if (it != col.end() && it->row == i) return it->value;
  return Scalar::zero(field_);
}

void ColumnMatrix::set(Index i, Index j, const Scalar& value) {
  check_column_index(j);
  if (i >= rows_) throw std::out_of_range("row index out of range");
  if (!(value.field() == field_)) throw FieldMismatch("entry field differs from matrix");
  Column& col = columns_[j];
  auto it = std::lower_bound(col.begin(), col.end(), i,
                             [](const Entry& e, Index row) { return e.row < row; });
  bool present = it != col.end() && it->row == i;
  if (value.is_zero()) {
    if (present) col.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    col.insert(it, {i, value});
  }
}

std::optional<Index> ColumnMatrix::pivot(Index j) const {
  const Column& col = column(j);
  if (col.empty()) return std::nullopt;
  return col.back().row;
}

void ColumnMatrix::add_scaled_column(Index target, const Scalar& factor, Index source) {
  check_column_index(target);
  check_column_index(source);
  if (factor.is_zero()) return;
  columns_[target] = axpy(columns_[target], factor, columns_[source]);
}

void ColumnMatrix::scale_column(Index j, const Scalar& factor) {
  check_column_index(j);
  if (factor.is_zero()) {
    columns_[j].clear();
    return;
  }
  for (Entry& e : columns_[j]) e.value *= factor;
}

bool ColumnMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const Column& c) { return c.empty(); });
}

std::size_t ColumnMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const Column& c : columns_) n += c.size();
  return n;
}

std::vector<std::vector<Scalar>> ColumnMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> dense(rows_,
                                         std::vector<Scalar>(cols(), Scalar::zero(field_)));
  for (Index j = 0; j < cols(); ++j) {
    for (const Entry& e : columns_[j]) dense[e.row][j] = e.value;
  }
  return dense;
}

ColumnMatrix operator*(const ColumnMatrix& a, const ColumnMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("cannot multiply " + shape(a) + " by " + shape(b));
  }
  ColumnMatrix out(a.rows(), b.cols(), a.field());
  for (Index j = 0; j < b.cols(); ++j) {
    Column acc;
    for (const Entry& e : b.column(j)) acc = axpy(acc, e.value, a.column(e.row));
    out.set_column(j, std::move(acc));
  }
  return out;
}

ColumnMatrix operator-(const ColumnMatrix& a, const ColumnMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("cannot subtract " + shape(b) + " from " + shape(a));
  }
  ColumnMatrix out(a.rows(), a.cols(), a.field());
  Scalar minus_one = -Scalar::one(a.field());
  for (Index j = 0; j < a.cols(); ++j) {
    out.set_column(j, axpy(a.column(j), minus_one, b.column(j)));
  }
  return out;
}

ColumnMatrix transpose(const ColumnMatrix& m) {
  std::vector<Column> rows(m.rows());
  for (Index j = 0; j < m.cols(); ++j) {
    for (const Entry& e : m.column(j)) rows[e.row].push_back({j, e.value});
  }
  ColumnMatrix out(m.cols(), m.rows(), m.field());
  for (Index i = 0; i < m.rows(); ++i) out.set_column(i, std::move(rows[i]));
  return out;
}

// --- DegreePartition -------------------------------------------------------

DegreePartition::DegreePartition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t b = 1; b < blocks_.size(); ++b) {
    if (blocks_[b - 1].degree >= blocks_[b].degree) {
      throw std::invalid_argument("degree partition degrees must strictly increase");
    }
  }
}

std::size_t DegreePartition::dimension() const {
  std::size_t n = 0;
  for (const Block& b : blocks_) n += b.size;
  return n;
}

int DegreePartition::degree_of(Index i) const {
  for (const Block& b : blocks_) {
    if (i < b.size) return b.degree;
    i -= b.size;
  }
  throw std::out_of_range("index beyond degree partition");
}

std::vector<int> DegreePartition::degrees() const {
  std::vector<int> out;
  out.reserve(dimension());
  for (const Block& b : blocks_) out.insert(out.end(), b.size, b.degree);
  return out;
}

DegreePartition DegreePartition::truncated(std::size_t p) const {
  std::vector<Block> out;
  for (const Block& b : blocks_) {
    std::size_t take = std::min(p, b.size);
    if (take == 0) break;
    out.push_back({b.degree, take});
    p -= take;
  }
  return DegreePartition(std::move(out));
}

// --- GradedDifferential ----------------------------------------------------

GradedDifferential::GradedDifferential(ColumnMatrix matrix,
                                       std::optional<DegreePartition> partition)
    : matrix_(std::move(matrix)), partition_(std::move(partition)) {
  if (!matrix_.is_square()) {
    throw InvalidDifferential("differential must be square, got " + shape(matrix_));
  }
  if (partition_) {
    if (partition_->dimension() != matrix_.cols()) {
      throw InvalidDifferential("degree partition covers " +
                                std::to_string(partition_->dimension()) +
                                " elements but matrix has dimension " +
                                std::to_string(matrix_.cols()));
    }
    if (!is_block_superdiagonal(matrix_, *partition_)) {
      throw InvalidDifferential("matrix is not block-superdiagonal for its degrees");
    }
  }
  if (!is_differential(matrix_)) throw InvalidDifferential("matrix does not square to zero");
}

// --- Permutation -----------------------------------------------------------

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.image.resize(n);
  for (Index i = 0; i < n; ++i) p.image[i] = i;
  return p;
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(image.size(), false);
  for (Index old : image) {
    if (old >= image.size() || seen[old]) return false;
    seen[old] = true;
  }
  return true;
}

ColumnMatrix Permutation::matrix(const FieldSpec& field) const {
  ColumnMatrix p(size(), size(), field);
  for (Index b = 0; b < size(); ++b) p.set_column(b, {{image[b], Scalar::one(field)}});
  return p;
}

ColumnMatrix Permutation::conjugate(const ColumnMatrix& m) const {
  if (!m.is_square() || m.cols() != size() || !is_valid()) {
    throw std::invalid_argument("permutation does not fit matrix");
  }
  std::vector<Index> position(size());
  for (Index b = 0; b < size(); ++b) position[image[b]] = b;
  ColumnMatrix out(size(), size(), m.field());
  for (Index b = 0; b < size(); ++b) {
    Column col;
    for (const Entry& e : m.column(image[b])) col.push_back({position[e.row], e.value});
    std::sort(col.begin(), col.end(),
              [](const Entry& x, const Entry& y) { return x.row < y.row; });
    out.set_column(b, std::move(col));
  }
  return out;
}

// --- predicates ------------------------------------------------------------

bool is_boolean(const ColumnMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (const Entry& e : m.column(j)) {
      if (!e.value.is_one()) return false;
    }
  }
  return true;
}

bool is_quasi_monomial(const ColumnMatrix& m) {
  std::vector<bool> row_used(m.rows(), false);
  for (Index j = 0; j < m.cols(); ++j) {
    const Column& col = m.column(j);
    if (col.size() > 1) return false;
    for (const Entry& e : col) {
      if (row_used[e.row]) return false;
      row_used[e.row] = true;
    }
  }
  return true;
}

bool is_upper_triangular(const ColumnMatrix& m) {
  if (!m.is_square()) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    auto p = m.pivot(j);
    if (p && *p > j) return false;
  }
  return true;
}

bool is_unitriangular(const ColumnMatrix& m) {
  if (!is_upper_triangular(m)) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    const Column& col = m.column(j);
    if (col.empty() || col.back().row != j || !col.back().value.is_one()) return false;
  }
  return true;
}

bool is_triangular_invertible(const ColumnMatrix& m) {
  if (!is_upper_triangular(m)) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    if (m.pivot(j) != j) return false;
  }
  return true;
}

bool is_differential(const ColumnMatrix& m) { return m.is_square() && (m * m).is_zero(); }

bool is_jordan(const ColumnMatrix& m) {
  if (!m.is_square()) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    const Column& col = m.column(j);
    if (col.empty()) continue;
    if (col.size() != 1 || j == 0 || col.front().row != j - 1 || !col.front().value.is_one()) {
      return false;
    }
    // Two overlapping K blocks would chain (j-2, j-1) and (j-1, j).
    if (!m.column(j - 1).empty()) return false;
  }
  return true;
}

bool is_almost_jordan(const ColumnMatrix& m) {
  if (!m.is_square() || !is_boolean(m) || !is_quasi_monomial(m) || !is_differential(m)) {
    return false;
  }
  return is_jordan(jordan_permutation(m).conjugate(m));
}

bool is_column_reduced(const ColumnMatrix& m) {
  std::vector<bool> pivot_rows(m.rows(), false);
  for (Index j = 0; j < m.cols(); ++j) {
    if (auto p = m.pivot(j)) {
      if (pivot_rows[*p]) return false;
      pivot_rows[*p] = true;
    }
  }
  return true;
}

namespace {

template <typename Accept>
bool entries_satisfy(const ColumnMatrix& m, const DegreePartition& partition, Accept accept) {
  if (!m.is_square() || partition.dimension() != m.cols()) return false;
  std::vector<int> degree = partition.degrees();
  for (Index j = 0; j < m.cols(); ++j) {
    for (const Entry& e : m.column(j)) {
      if (!accept(degree[e.row], degree[j])) return false;
    }
  }
  return true;
}

}  // namespace

bool is_block_diagonal(const ColumnMatrix& m, const DegreePartition& partition) {
  return entries_satisfy(m, partition, [](int row, int col) { return row == col; });
}

bool is_block_superdiagonal(const ColumnMatrix& m, const DegreePartition& partition) {
  return entries_satisfy(m, partition, [](int row, int col) { return row + 1 == col; });
}

// --- reduction -------------------------------------------------------------

namespace {

void sweep(ColumnMatrix& r, ColumnMatrix& v) {
  for (Index k = 0; k < r.cols(); ++k) {
    auto pivot = r.pivot(k);
    if (!pivot) continue;
    Scalar pivot_value = r.column(k).back().value;
    for (Index j = k + 1; j < r.cols(); ++j) {
      Scalar entry = r.at(*pivot, j);
      if (entry.is_zero()) continue;
      Scalar factor = -(entry / pivot_value);
      r.add_scaled_column(j, factor, k);
      v.add_scaled_column(j, factor, k);
    }
  }
}

void pivot_lookup(ColumnMatrix& r, ColumnMatrix& v) {
  std::vector<std::optional<Index>> owner(r.rows());
  for (Index j = 0; j < r.cols(); ++j) {
    auto pivot = r.pivot(j);
    while (pivot && owner[*pivot]) {
      Index l = *owner[*pivot];
      Scalar factor = -(r.column(j).back().value / r.column(l).back().value);
      r.add_scaled_column(j, factor, l);
      v.add_scaled_column(j, factor, l);
      pivot = r.pivot(j);
    }
    if (pivot) owner[*pivot] = j;
  }
}

}  // namespace

ColumnReduction column_reduce(const ColumnMatrix& m, ReductionStrategy strategy) {
  ColumnReduction out{m, ColumnMatrix::identity(m.cols(), m.field())};
  if (strategy == ReductionStrategy::Sweep) {
    sweep(out.reduced, out.transform);
  } else {
    pivot_lookup(out.reduced, out.transform);
  }
  return out;
}

ColumnMatrix pivot_matrix(const ColumnMatrix& reduced) {
  if (!is_column_reduced(reduced)) {
    throw std::invalid_argument("pivot matrix requires a column-reduced matrix");
  }
  ColumnMatrix out(reduced.rows(), reduced.cols(), reduced.field());
  for (Index j = 0; j < reduced.cols(); ++j) {
    if (auto p = reduced.pivot(j)) out.set_column(j, {{*p, Scalar::one(reduced.field())}});
  }
  return out;
}

ColumnMatrix normalize(const ColumnMatrix& vhat, const ColumnMatrix& dcanon) {
  const std::size_t m = vhat.cols();
  if (!vhat.is_square() || !dcanon.is_square() || dcanon.cols() != m) {
    throw std::invalid_argument("normalize: shape mismatch");
  }
  const FieldSpec& field = vhat.field();
  std::vector<Scalar> scale(m, Scalar::one(field));
  for (Index j = 0; j < m; ++j) {
    if (!dcanon.is_zero_column(j)) continue;
    Scalar diagonal = vhat.at(j, j);
    if (diagonal.is_zero()) {
      throw VerificationError("normalize: zero diagonal entry in column " +
                              std::to_string(j + 1));
    }
    scale[j] = inverse(diagonal);
  }
  for (Index k = 0; k < m; ++k) {
    const Column& col = dcanon.column(k);
    if (col.empty()) continue;
    if (col.size() != 1 || !dcanon.is_zero_column(col.front().row)) {
      throw std::invalid_argument("normalize: canonical form is not quasi-monomial differential");
    }
    scale[k] = scale[col.front().row];
  }
  ColumnMatrix b = vhat;
  for (Index j = 0; j < m; ++j) b.scale_column(j, scale[j]);
  return b;
}

Permutation jordan_permutation(const ColumnMatrix& dcanon) {
  if (!dcanon.is_square() || !is_boolean(dcanon) || !is_quasi_monomial(dcanon) ||
      !is_differential(dcanon)) {
    throw std::invalid_argument(
        "jordan permutation requires a Boolean quasi-monomial differential matrix");
  }
  const std::size_t m = dcanon.cols();
  std::vector<std::optional<Index>> row_partner(m), column_partner(m);
  for (Index k = 0; k < m; ++k) {
    for (const Entry& e : dcanon.column(k)) {
      row_partner[e.row] = k;
      column_partner[k] = e.row;
    }
  }
  Permutation p;
  p.image.reserve(m);
  std::vector<bool> consumed(m, false);
  for (Index j = 0; j < m; ++j) {
    if (consumed[j]) continue;
    if (row_partner[j]) {
      p.image.push_back(j);
      p.image.push_back(*row_partner[j]);
      consumed[*row_partner[j]] = true;
    } else if (column_partner[j]) {
      // Only reachable when the pivot lies below the diagonal.
      p.image.push_back(*column_partner[j]);
      p.image.push_back(j);
      consumed[*column_partner[j]] = true;
    } else {
      p.image.push_back(j);
    }
    consumed[j] = true;
  }
  if (!is_jordan(p.conjugate(dcanon))) {
    throw VerificationError("jordan permutation failed to produce a Jordan matrix");
  }
  return p;
}

GradedDifferential upper_left(const GradedDifferential& d, std::size_t p) {
  if (p > d.dimension()) {
    throw std::out_of_range("upper-left size " + std::to_string(p) + " exceeds dimension " +
                            std::to_string(d.dimension()));
  }
  ColumnMatrix sub(p, p, d.field());
  for (Index j = 0; j < p; ++j) {
    Column col;
    for (const Entry& e : d.matrix().column(j)) {
      if (e.row < p) col.push_back(e);
    }
    sub.set_column(j, std::move(col));
  }
  std::optional<DegreePartition> partition;
  if (d.partition()) partition = d.partition()->truncated(p);
  return GradedDifferential(std::move(sub), std::move(partition));
}

std::optional<std::string> check_reduction(const GradedDifferential& d,
                                           const ReductionResult& r) {
  const ColumnMatrix& dm = d.matrix();
  if (!(dm * r.V == r.R)) return "D*V != R";
  if (!is_column_reduced(r.R)) return "R is not column-reduced";
  if (!is_unitriangular(r.V)) return "V is not unitriangular";
  if (!is_triangular_invertible(r.Vhat)) return "Vhat is not triangular invertible";
  if (!(dm * r.Vhat == r.R)) return "D*Vhat != R";
  if (!(r.Vhat * r.Dcanon == r.R)) return "Vhat*Dcanon != R";
  if (!(r.Dcanon == pivot_matrix(r.R))) return "Dcanon is not the pivot matrix of R";
  if (!is_boolean(r.Dcanon) || !is_quasi_monomial(r.Dcanon)) {
    return "Dcanon is not Boolean quasi-monomial";
  }
  if (!is_differential(r.Dcanon)) return "Dcanon does not square to zero";
  if (!is_triangular_invertible(r.B)) return "B is not triangular invertible";
  if (!(dm * r.B == r.B * r.Dcanon)) return "D*B != B*Dcanon";
  for (Index j = 0; j < r.B.cols(); ++j) {
    if (r.Dcanon.is_zero_column(j) && !r.B.at(j, j).is_one()) return "B is not normalized";
  }
  if (r.P.size() != dm.cols() || !r.P.is_valid()) return "P is not a permutation";
  if (!is_jordan(r.P.conjugate(r.Dcanon))) return "P^-1*Dcanon*P is not Jordan";
  if (const auto& partition = d.partition()) {
    if (!is_block_diagonal(r.V, *partition)) return "V is not block-diagonal";
    if (!is_block_diagonal(r.Vhat, *partition)) return "Vhat is not block-diagonal";
    if (!is_block_diagonal(r.B, *partition)) return "B is not block-diagonal";
    if (!is_block_superdiagonal(r.Dcanon, *partition)) {
      return "Dcanon is not block-superdiagonal";
    }
  }
  return std::nullopt;
}

ReductionResult standard_reduction(const GradedDifferential& d, ReductionStrategy strategy) {
  const ColumnMatrix& dm = d.matrix();
  const std::size_t m = dm.cols();
  auto [reduced, transform] = column_reduce(dm, strategy);

  ReductionResult result;
  result.Dcanon = pivot_matrix(reduced);

  // Column k of Vhat is the column of R pivoting in row k, else column k of V.
  std::vector<std::optional<Index>> pivot_owner(m);
  for (Index j = 0; j < m; ++j) {
    if (auto p = reduced.pivot(j)) pivot_owner[*p] = j;
  }
  result.Vhat = ColumnMatrix(m, m, dm.field());
  for (Index k = 0; k < m; ++k) {
    result.Vhat.set_column(k, pivot_owner[k] ? reduced.column(*pivot_owner[k])
                                             : transform.column(k));
  }
  result.R = std::move(reduced);
  result.V = std::move(transform);
  result.B = normalize(result.Vhat, result.Dcanon);
  result.P = jordan_permutation(result.Dcanon);

  if (auto failure = check_reduction(d, result)) {
    throw VerificationError("standard reduction invariant failed: " + *failure);
  }
  return result;
}

}  // namespace pcf
