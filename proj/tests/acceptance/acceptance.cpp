// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Every comparison is exact.

#include <algorithm>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcf/barcode.hpp"
#include "pcf/complex.hpp"
#include "pcf/io.hpp"
#include "pcf/matrix.hpp"
#include "pcf/oracle.hpp"
#include "support/testing.hpp"

namespace {

using namespace pcf;
using pcf::testing::q;
using pcf::testing::zp;

/// Collects failure notes for one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

FilteredComplex load(const std::string& name) {
  return parse_complex(read_input(std::string(PCF_FIXTURES) + "/" + name));
}

ColumnMatrix ones_at(std::size_t n, std::initializer_list<std::pair<Index, Index>> entries) {
  ColumnMatrix m(n, n, q());
  for (auto [i, j] : entries) m.set(i - 1, j - 1, Scalar::one(q()));
  return m;
}

const ColumnMatrix& triangle_b() {
  static const ColumnMatrix b = ColumnMatrix::from_rows(q(), {{1, -1, -1, 0, 0, 0, 0},
                                                              {0, 1, 0, 0, 0, 0, 0},
                                                              {0, 0, 1, 0, 0, 0, 0},
                                                              {0, 0, 0, 1, 1, -1, 0},
                                                              {0, 0, 0, 0, 1, -1, 0},
                                                              {0, 0, 0, 0, 0, 1, 0},
                                                              {0, 0, 0, 0, 0, 0, -1}});
  return b;
}

std::multiset<pcf::testing::BarKey> bar_keys(const std::vector<Barcode>& bars) {
  std::multiset<pcf::testing::BarKey> keys;
  for (const Barcode& b : bars) keys.insert({b.degree, b.birth_level, b.death_level.value_or(-1)});
  return keys;
}

std::vector<Barcode> bars_of(const ColumnMatrix& d, const AdaptedBasis& basis) {
  GradedDifferential g(d, basis.partition);
  ReductionResult r = standard_reduction(g);
  return barcodes(extract_pairing(r.Dcanon, basis.elements), basis.elements);
}

void level_major_triangle(Check& c) {
  FilteredComplex fc = load("triangle.complex");
  GradedDifferential d = boundary_matrix(fc, adapted_basis(fc, OrderingMode::LevelMajor), q());
  c.require(d.matrix() == ColumnMatrix::from_rows(q(), {{0, 0, -1, 0, 0, -1, 0},
                                                        {0, 0, 1, 0, -1, 0, 0},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 1, 1, 0},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 0, 0, -1},
                                                        {0, 0, 0, 0, 0, 0, 0}}),
            "boundary matrix differs");
  ReductionResult r = standard_reduction(d);
  c.require(r.Dcanon == ones_at(7, {{2, 3}, {4, 5}, {6, 7}}), "canonical form differs");
}

void degree_major_triangle(Check& c) {
  FilteredComplex fc = load("triangle.complex");
  AdaptedBasis basis = adapted_basis(fc, OrderingMode::DegreeMajor);
  GradedDifferential d = boundary_matrix(fc, basis, q());
  c.require(d.matrix() == ColumnMatrix::from_rows(q(), {{0, 0, 0, -1, 0, -1, 0},
                                                        {0, 0, 0, 1, -1, 0, 0},
                                                        {0, 0, 0, 0, 1, 1, 0},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 0, 0, -1},
                                                        {0, 0, 0, 0, 0, 0, 0}}),
            "boundary matrix differs");
  ReductionResult r = standard_reduction(d);
  c.require(r.Dcanon == ones_at(7, {{2, 4}, {3, 5}, {6, 7}}), "canonical form differs");
  c.require(r.B == triangle_b(), "B differs");
  c.require(is_block_diagonal(r.B, *basis.partition), "B is not block-diagonal");
  c.require(is_triangular_invertible(r.B), "B is not triangular");
  c.require(d.matrix() * r.B == r.B * r.Dcanon, "D*B != B*Dcanon");
}

void small_column_reduction(Check& c) {
  ColumnMatrix m = ColumnMatrix::from_rows(q(), {{1, -2, 0, -8}, {2, -4, 6, 2}, {1, -2, 2, -2}});
  ColumnReduction red = column_reduce(m);
  c.require(red.reduced ==
                ColumnMatrix::from_rows(q(), {{1, 0, -2, 0}, {2, 0, 2, 0}, {1, 0, 0, 0}}),
            "R differs");
  c.require(red.transform == ColumnMatrix::from_rows(
                                 q(), {{1, 2, -2, 8}, {0, 1, 0, 0}, {0, 0, 1, -3}, {0, 0, 0, 1}}),
            "V differs");
  std::vector<Index> nonzero;
  for (Index j = 0; j < red.reduced.cols(); ++j) {
    if (!red.reduced.is_zero_column(j)) nonzero.push_back(j);
  }
  ColumnMatrix image(3, nonzero.size(), q());
  for (Index k = 0; k < nonzero.size(); ++k) image.set_column(k, red.reduced.column(nonzero[k]));
  c.require(rank_gauss(image) == 2, "nonzero columns of R do not have rank 2");
}

void vhat_and_normalization(Check& c) {
  FilteredComplex fc = load("triangle.complex");
  GradedDifferential d = boundary_matrix(fc, adapted_basis(fc, OrderingMode::DegreeMajor), q());
  ReductionResult r = standard_reduction(d);
  c.require(r.Vhat == ColumnMatrix::from_rows(q(), {{1, -1, -1, 0, 0, 0, 0},
                                                    {0, 1, 0, 0, 0, 0, 0},
                                                    {0, 0, 1, 0, 0, 0, 0},
                                                    {0, 0, 0, 1, 1, 1, 0},
                                                    {0, 0, 0, 0, 1, 1, 0},
                                                    {0, 0, 0, 0, 0, -1, 0},
                                                    {0, 0, 0, 0, 0, 0, 1}}),
            "Vhat differs");
  ColumnMatrix t = ColumnMatrix::identity(7, q());
  t.set(5, 5, Scalar::from_int(q(), -1));
  t.set(6, 6, Scalar::from_int(q(), -1));
  c.require(pcf::testing::inverse(r.Vhat) * r.B == t, "T is not diag(1,1,1,1,1,-1,-1)");
  c.require(r.B == r.Vhat * t, "B != Vhat*T");
  c.require(r.B == triangle_b(), "B differs from the degree-major B");
}

void permutation_and_summands(Check& c) {
  Permutation p = jordan_permutation(ones_at(7, {{2, 4}, {3, 5}, {6, 7}}));
  c.require(p.image == std::vector<Index>{0, 1, 3, 2, 4, 5, 6}, "order is not 1,2,4,3,5,6,7");
  FilteredComplex fc = load("triangle.complex");
  AdaptedBasis basis = adapted_basis(fc, OrderingMode::DegreeMajor);
  ReductionResult r = standard_reduction(boundary_matrix(fc, basis, q()));
  std::multiset<std::string> labels;
  for (const Summand& s : summands(extract_pairing(r.Dcanon, basis.elements), basis.elements)) {
    labels.insert(s.label);
  }
  c.require(labels == std::multiset<std::string>{"[1,∞)_0", "[1,2)_0", "[3,4)_0", "[5,6)_1"},
            "summand labels differ");
}

void two_holes(Check& c) {
  FilteredComplex fc = load("two_holes.complex");
  AdaptedBasis basis = adapted_basis(fc, OrderingMode::DegreeMajor);
  std::vector<Barcode> degree1;
  for (const Barcode& b : bars_of(boundary_matrix(fc, basis, q()).matrix(), basis)) {
    if (b.degree == 1) degree1.push_back(b);
  }
  c.require(degree1.size() == 2, "expected two degree-1 bars, got " + std::to_string(degree1.size()));
  for (const Barcode& b : degree1) {
    c.require(b.birth_level == 3 && b.death_level == 4, "degree-1 bar is not [3,4)");
  }
}

void exhaustive_uniqueness(Check& c) {
  std::size_t total = 0;
  std::size_t agree = 0;
  for (std::size_t m = 1; m <= kBruteForceMaxSize; ++m) {
    for (const ColumnMatrix& d : enumerate_differentials_z2(m)) {
      ++total;
      try {
        ColumnMatrix brute = brute_force_canonical(d);
        ReductionResult r = standard_reduction(GradedDifferential::ungraded(d));
        if (brute == r.Dcanon) ++agree;
      } catch (const std::exception& e) {
        c.require(false, e.what());
      }
    }
  }
  c.require(total == 343, "expected 343 square-zero matrices, found " + std::to_string(total));
  c.require(agree == total, std::to_string(total - agree) + " of " + std::to_string(total) +
                                " disagree");
}

void property_suite(Check& c) {
  pcf::testing::Rng rng(0x5eed);
  const FieldSpec fields[] = {q(), zp(2), zp(5)};
  std::size_t differentials = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const FieldSpec& field = fields[trial % 3];
    GradedDifferential d = pcf::testing::random_graded_differential(field, rng, 12);
    ReductionResult r = standard_reduction(d);
    if (auto failure = check_reduction(d, r)) {
      c.require(false, "reduction invariant: " + *failure);
    }
    // Independent restatement of the central identities.
    c.require(d.matrix() * r.V == r.R, "D*V != R");
    c.require(r.Vhat * r.Dcanon == r.R, "Vhat*Dcanon != R");
    c.require(d.matrix() * r.B == r.B * r.Dcanon, "D*B != B*Dcanon");
    c.require(is_block_diagonal(r.B, *d.partition()), "B not block-diagonal");
    c.require(is_jordan(r.P.conjugate(r.Dcanon)), "P does not give a Jordan matrix");
    ++differentials;
  }
  c.require(differentials >= 500, "too few differentials");

  std::size_t complexes = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const FieldSpec& field = fields[trial % 3];
    std::size_t n = static_cast<std::size_t>(pcf::testing::uniform(rng, 1, 10));
    std::optional<Rational> radius;
    if (trial % 2) radius = Rational(pcf::testing::uniform(rng, 1, 8), 2);
    FilteredComplex fc = vietoris_rips(pcf::testing::random_points(rng, n), 2, radius);
    AdaptedBasis basis = adapted_basis(fc, OrderingMode::DegreeMajor);
    std::vector<Barcode> bars = bars_of(boundary_matrix(fc, basis, field).matrix(), basis);
    RankProfile oracle = homology_dims(fc, field);
    for (int level : oracle.levels()) {
      for (int degree = 0; degree <= 2; ++degree) {
        if (betti(bars, degree, level) != oracle.betti(degree, level)) {
          c.require(false, "betti mismatch in degree " + std::to_string(degree) + " at level " +
                               std::to_string(level));
        }
      }
    }
    ++complexes;
  }
  c.require(complexes >= 500, "too few complexes");
}

void conjugation_invariance(Check& c) {
  pcf::testing::Rng rng(0xc0de);
  for (int trial = 0; trial < 100; ++trial) {
    FieldSpec field = trial % 2 ? q() : zp(5);
    FilteredComplex fc =
        trial == 0 ? load("two_holes.complex")
                   : vietoris_rips(pcf::testing::random_points(
                                       rng, static_cast<std::size_t>(pcf::testing::uniform(rng, 2, 9))),
                                   2);
    AdaptedBasis basis = adapted_basis(fc, OrderingMode::DegreeMajor);
    ColumnMatrix d = boundary_matrix(fc, basis, field).matrix();
    ColumnMatrix u = pcf::testing::random_triangular(d.rows(), field, rng, true, basis.partition);
    ColumnMatrix conj = pcf::testing::inverse(u) * d * u;
    if (bar_keys(bars_of(conj, basis)) != bar_keys(bars_of(d, basis))) {
      c.require(false, "barcode changed under conjugation in trial " + std::to_string(trial));
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "level-major triangle boundary and canonical form", level_major_triangle},
      {2, "degree-major triangle boundary, canonical form and B", degree_major_triangle},
      {3, "3x4 rational column reduction and image rank", small_column_reduction},
      {4, "Vhat, normalization T and B = Vhat*T", vhat_and_normalization},
      {5, "Jordan permutation and summand labels", permutation_and_summands},
      {6, "two degree-1 bars [3,4) for the two-holes complex", two_holes},
      {7, "exhaustive uniqueness over zp:2 up to size 4", exhaustive_uniqueness},
      {8, "random differentials and Rips homology agreement", property_suite},
      {9, "barcodes invariant under unipotent conjugation", conjugation_invariance},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "PASS " : "FAIL ") << criterion.number << " " << criterion.name
              << "\n";
    for (std::size_t i = 0; i < check.failures().size() && i < 5; ++i) {
      std::cout << "     " << check.failures()[i] << "\n";
    }
    failed += !check.ok();
  }
  std::cout << (9 - failed) << "/9 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
