#include "pcf/oracle.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <map>
#include <set>

namespace pcf {

namespace {

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  auto inv = [p](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    const std::uint64_t scale = inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c] * scale % p;
      for (std::size_t k = c; k < cols; ++k) {
        a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(std::vector<std::vector<Rational>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[rank][k] != 0) a[r][k] -= f * a[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

/// A chain generator as the oracle sees it: faces by global id.
struct Cochain {
  int degree;
  int level;
  std::vector<std::pair<std::size_t, long long>> boundary;
};

/// Rank of the boundary from degree-n cells at level <= p, as a dense block.
std::size_t boundary_rank(const std::vector<Cochain>& cells, int n, int p,
                          const FieldSpec& field,
                          const std::vector<std::vector<Scalar>>* exact_values) {
  std::map<std::size_t, std::size_t> row_of;
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].level > p) continue;
    if (cells[i].degree == n - 1) row_of.emplace(i, row_of.size());
    if (cells[i].degree == n) columns.push_back(i);
  }
  if (row_of.empty() || columns.empty()) return 0;
  if (field.is_rationals()) {
    std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Cochain& cell = cells[columns[c]];
      for (std::size_t e = 0; e < cell.boundary.size(); ++e) {
        Rational v = exact_values ? (*exact_values)[columns[c]][e].rational()
                                  : Rational(static_cast<long>(cell.boundary[e].second));
        a[row_of.at(cell.boundary[e].first)][c] = v;
      }
    }
    return rank_rational(std::move(a));
  }
  const std::uint64_t q = field.characteristic();
  std::vector<std::vector<std::uint64_t>> a(row_of.size(),
                                            std::vector<std::uint64_t>(columns.size(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Cochain& cell = cells[columns[c]];
    for (std::size_t e = 0; e < cell.boundary.size(); ++e) {
      std::uint64_t v;
      if (exact_values) {
        v = (*exact_values)[columns[c]][e].residue();
      } else {
        long long s = cell.boundary[e].second % static_cast<long long>(q);
        v = static_cast<std::uint64_t>(s < 0 ? s + static_cast<long long>(q) : s);
      }
      a[row_of.at(cell.boundary[e].first)][c] = v;
    }
  }
  return rank_mod_p(std::move(a), q);
}

RankProfile profile(const std::vector<Cochain>& cells, const FieldSpec& field,
                    const std::vector<std::vector<Scalar>>* exact_values) {
  std::set<int> level_set;
  int top = -1;
  for (const Cochain& c : cells) {
    level_set.insert(c.level);
    top = std::max(top, c.degree);
  }
  std::vector<int> levels(level_set.begin(), level_set.end());
  std::vector<RankEntry> entries;
  for (int p : levels) {
    std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
    for (int n = 1; n <= top; ++n) {
      rank[static_cast<std::size_t>(n)] = boundary_rank(cells, n, p, field, exact_values);
    }
    for (int n = 0; n <= top; ++n) {
      RankEntry e;
      e.degree = n;
      e.level = p;
      e.dimension = static_cast<std::size_t>(std::count_if(
          cells.begin(), cells.end(),
          [&](const Cochain& c) { return c.degree == n && c.level <= p; }));
      e.rank = rank[static_cast<std::size_t>(n)];
      e.nullity = e.dimension - e.rank;
      e.betti = e.nullity - rank[static_cast<std::size_t>(n + 1)];
      entries.push_back(e);
    }
  }
  return RankProfile(std::move(levels), top, std::move(entries));
}

}  // namespace

std::size_t rank_gauss(const ColumnMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto dense = m.to_dense();
  if (m.field().is_rationals()) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = dense[i][j].rational();
    }
    return rank_rational(std::move(a));
  }
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = dense[i][j].residue();
  }
  return rank_mod_p(std::move(a), m.field().characteristic());
}

RankProfile::RankProfile(std::vector<int> levels, int top_degree, std::vector<RankEntry> entries)
    : levels_(std::move(levels)), top_degree_(top_degree), entries_(std::move(entries)) {}

const RankEntry* RankProfile::at(int n, int p) const {
  if (n < 0 || n > top_degree_) return nullptr;
  auto it = std::upper_bound(levels_.begin(), levels_.end(), p);
  if (it == levels_.begin()) return nullptr;
  std::size_t level_index = static_cast<std::size_t>(it - levels_.begin()) - 1;
  return &entries_[level_index * static_cast<std::size_t>(top_degree_ + 1) +
                   static_cast<std::size_t>(n)];
}

std::size_t RankProfile::betti(int n, int p) const {
  const RankEntry* e = at(n, p);
  return e ? e->betti : 0;
}

RankProfile homology_dims(const FilteredComplex& fc, const FieldSpec& field) {
  if (auto violations = validate(fc); !violations.empty()) {
    throw InvalidComplex(std::move(violations));
  }
  std::map<std::vector<Vertex>, std::size_t> id;
  for (std::size_t i = 0; i < fc.size(); ++i) id.emplace(fc.cells()[i].simplex.vertices(), i);
  std::vector<Cochain> cells;
  for (const Cell& c : fc.cells()) {
    Cochain cochain{c.simplex.degree(), c.level, {}};
    const auto& v = c.simplex.vertices();
    if (v.size() > 1) {
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<Vertex> face;
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (k != drop) face.push_back(v[k]);
        }
        cochain.boundary.emplace_back(id.at(face), drop % 2 ? -1 : 1);
      }
    }
    cells.push_back(std::move(cochain));
  }
  return profile(cells, field, nullptr);
}

RankProfile homology_dims(const FilteredChainComplex& cc) {
  std::vector<Cochain> cells;
  std::vector<std::vector<Scalar>> values;
  for (const Generator& g : cc.generators()) {
    Cochain cochain{g.degree, g.level, {}};
    std::vector<Scalar> vals;
    for (const Entry& e : g.boundary) {
      cochain.boundary.emplace_back(e.row, 0);
      vals.push_back(e.value);
    }
    cells.push_back(std::move(cochain));
    values.push_back(std::move(vals));
  }
  return profile(cells, cc.field(), &values);
}

namespace {

// Row bitmasks: bit j of row i is entry (i, j).
using Bits = std::array<std::uint8_t, kBruteForceMaxSize>;

Bits multiply(const Bits& a, const Bits& b, std::size_t m) {
  Bits c{};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i] >> k & 1) c[i] ^= b[k];
    }
  }
  return c;
}

bool is_zero(const Bits& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint8_t r) { return r == 0; });
}

bool square_zero_quasi_monomial(const Bits& a, std::size_t m) {
  std::uint8_t columns_seen = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] & (a[i] - 1)) return false;  // two ones in a row
    if (columns_seen & a[i]) return false;  // two ones in a column
    columns_seen |= a[i];
  }
  return is_zero(multiply(a, a, m));
}

/// Inverse of a unitriangular matrix by back substitution.
Bits unitriangular_inverse(const Bits& b, std::size_t m) {
  Bits inv{};
  for (std::size_t i = m; i-- > 0;) {
    std::uint8_t row = static_cast<std::uint8_t>(1u << i);
    for (std::size_t k = i + 1; k < m; ++k) {
      if (b[i] >> k & 1) row ^= inv[k];
    }
    inv[i] = row;
  }
  return inv;
}

}  // namespace

ColumnMatrix brute_force_canonical(const ColumnMatrix& d) {
  const std::size_t m = d.rows();
  if (!d.is_square() || m > kBruteForceMaxSize) {
    throw std::invalid_argument("brute force needs a square matrix of size at most 4");
  }
  if (d.field() != FieldSpec::prime(2)) throw std::invalid_argument("brute force runs over Z/2");
  Bits dbits{};
  for (std::size_t j = 0; j < m; ++j) {
    for (const Entry& e : d.column(j)) dbits[e.row] |= static_cast<std::uint8_t>(1u << j);
  }
  if (!is_zero(multiply(dbits, dbits, m))) throw std::invalid_argument("D does not square to zero");

  std::vector<std::pair<std::size_t, std::size_t>> upper;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) upper.emplace_back(i, j);
  }
  std::optional<Bits> found;
  for (std::uint32_t mask = 0; mask < (1u << upper.size()); ++mask) {
    Bits b{};
    for (std::size_t i = 0; i < m; ++i) b[i] = static_cast<std::uint8_t>(1u << i);
    for (std::size_t t = 0; t < upper.size(); ++t) {
      if (mask >> t & 1) b[upper[t].first] |= static_cast<std::uint8_t>(1u << upper[t].second);
    }
    Bits c = multiply(multiply(unitriangular_inverse(b, m), dbits, m), b, m);
    if (!square_zero_quasi_monomial(c, m)) continue;
    if (found && *found != c) throw CanonicalFormViolation("two distinct canonical conjugates");
    found = c;
  }
  if (!found) throw CanonicalFormViolation("no triangular conjugate is almost-Jordan");

  const FieldSpec z2 = FieldSpec::prime(2);
  ColumnMatrix out(m, m, z2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if ((*found)[i] >> j & 1) out.set(i, j, Scalar::one(z2));
    }
  }
  return out;
}

std::vector<ColumnMatrix> enumerate_differentials_z2(std::size_t m) {
  if (m > kBruteForceMaxSize) throw std::invalid_argument("enumeration needs m <= 4");
  const FieldSpec z2 = FieldSpec::prime(2);
  std::vector<ColumnMatrix> out;
  const std::size_t cells = m * m;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    Bits a{};
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = static_cast<std::uint8_t>(mask >> (i * m) & ((1u << m) - 1));
    }
    if (!is_zero(multiply(a, a, m))) continue;
    ColumnMatrix d(m, m, z2);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (a[i] >> j & 1) d.set(i, j, Scalar::one(z2));
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace pcf
