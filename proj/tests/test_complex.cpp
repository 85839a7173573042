#include <doctest.h>

#include "pcf/complex.hpp"
#include "pcf/io.hpp"
#include "pcf/matrix.hpp"
#include "support/testing.hpp"

using namespace pcf;
using pcf::testing::q;
using pcf::testing::zp;

namespace {

FilteredComplex load(const std::string& name) {
  return parse_complex(read_input(std::string(PCF_FIXTURES) + "/" + name));
}

std::vector<std::string> labels(const AdaptedBasis& basis) {
  std::vector<std::string> out;
  for (const BasisElement& e : basis.elements) out.push_back(e.label);
  return out;
}

}  // namespace

TEST_CASE("simplices") {
  Simplex s({0, 1, 2});
  CHECK(s.degree() == 2);
  CHECK(s.label() == "[0,1,2]");
  auto faces = s.faces();
  REQUIRE(faces.size() == 3);
  CHECK(faces[0] == Simplex({1, 2}));
  CHECK(faces[1] == Simplex({0, 2}));
  CHECK(faces[2] == Simplex({0, 1}));
  CHECK(Simplex({4}).faces().empty());
  CHECK(Simplex::from_unsorted({3, 1}) == Simplex({1, 3}));
  CHECK_THROWS_AS(Simplex({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Simplex::from_unsorted({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), std::invalid_argument);
}

TEST_CASE("validation reports each broken rule") {
  CHECK(validate(load("two_holes.complex")).empty());
  CHECK(validate(load("triangle.complex")).empty());

  FilteredComplex missing;
  missing.add(Simplex({0}), 1);
  missing.add(Simplex({1}), 1);
  missing.add(Simplex({2}), 1);
  missing.add(Simplex({0, 1}), 1);
  missing.add(Simplex({1, 2}), 1);
  missing.add(Simplex({0, 1, 2}), 1);
  auto v = validate(missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Violation::Rule::MissingFace);
  CHECK(v[0].cell == 5);

  FilteredComplex early;
  early.add(Simplex({0}), 1);
  early.add(Simplex({1}), 2);
  early.add(Simplex({0, 1}), 1);
  v = validate(early);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Violation::Rule::NonMonotone);
  CHECK(v[0].cell == 2);

  FilteredComplex dup;
  dup.add(Simplex({0}), 1);
  dup.add(Simplex({0}), 2);
  v = validate(dup);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Violation::Rule::DuplicateSimplex);

  FilteredComplex births;
  births.add(Simplex({0}), 1, 0.0);
  births.add(Simplex({1}), 2, 0.0);
  births.add(Simplex({2}), 1, 0.5);
  v = validate(births);
  CHECK(v.size() == 2);
  for (const Violation& x : v) CHECK(x.rule == Violation::Rule::BirthOrder);

  CHECK(validate(FilteredComplex{}).empty());
}

TEST_CASE("face completion uses the earliest coface") {
  FilteredComplex fc;
  fc.add(Simplex({0, 1, 2}), 5, 2.0);
  fc.add(Simplex({1, 2}), 3, 1.0);
  fc.add(Simplex({0, 1, 3}), 4, 1.5);
  FilteredComplex closed = close_under_faces(fc);
  CHECK(validate(closed).empty());
  CHECK(closed.size() == 11);
  CHECK(closed.cells()[*closed.find(Simplex({0, 1}))].level == 4);
  CHECK(closed.cells()[*closed.find(Simplex({0, 2}))].level == 5);
  CHECK(closed.cells()[*closed.find(Simplex({1}))].level == 3);
  CHECK(closed.cells()[*closed.find(Simplex({1}))].birth == 1.0);
  CHECK(closed.cells()[*closed.find(Simplex({3}))].level == 4);
  CHECK(closed.cells()[*closed.find(Simplex({1, 2}))].level == 3);
  CHECK(close_under_faces(closed).size() == closed.size());
}

TEST_CASE("adapted bases in both orderings") {
  FilteredComplex fc = load("triangle.complex");
  AdaptedBasis level = adapted_basis(fc, OrderingMode::LevelMajor);
  CHECK(labels(level) ==
        std::vector<std::string>{"[0]", "[1]", "[0,1]", "[2]", "[1,2]", "[0,2]", "[0,1,2]"});
  CHECK_FALSE(level.partition.has_value());

  AdaptedBasis degree = adapted_basis(fc, OrderingMode::DegreeMajor);
  CHECK(labels(degree) ==
        std::vector<std::string>{"[0]", "[1]", "[2]", "[0,1]", "[1,2]", "[0,2]", "[0,1,2]"});
  REQUIRE(degree.partition.has_value());
  CHECK(degree.partition->blocks() ==
        std::vector<DegreePartition::Block>{{0, 3}, {1, 3}, {2, 1}});
  std::vector<int> levels;
  for (const BasisElement& e : degree.elements) levels.push_back(e.level);
  CHECK(levels == std::vector<int>{1, 1, 3, 2, 4, 5, 6});

  FilteredComplex one;
  one.add(Simplex({7}), 1);
  CHECK(labels(adapted_basis(one, OrderingMode::LevelMajor)) == std::vector<std::string>{"[7]"});
  CHECK(labels(adapted_basis(one, OrderingMode::DegreeMajor)) == std::vector<std::string>{"[7]"});

  FilteredComplex bad;
  bad.add(Simplex({0, 1}), 1);
  CHECK_THROWS_AS(adapted_basis(bad, OrderingMode::DegreeMajor), InvalidComplex);
}

TEST_CASE("boundary matrices of the triangle") {
  FilteredComplex fc = load("triangle.complex");
  GradedDifferential level =
      boundary_matrix(fc, adapted_basis(fc, OrderingMode::LevelMajor), q());
  CHECK_FALSE(level.is_graded());
  CHECK(level.matrix() == ColumnMatrix::from_rows(q(), {{0, 0, -1, 0, 0, -1, 0},
                                                        {0, 0, 1, 0, -1, 0, 0},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 1, 1, 0},
                                                        {0, 0, 0, 0, 0, 0, 1},
                                                        {0, 0, 0, 0, 0, 0, -1},
                                                        {0, 0, 0, 0, 0, 0, 0}}));
  GradedDifferential degree =
      boundary_matrix(fc, adapted_basis(fc, OrderingMode::DegreeMajor), q());
  CHECK(degree.is_graded());
  CHECK(degree.matrix() == ColumnMatrix::from_rows(q(), {{0, 0, 0, -1, 0, -1, 0},
                                                         {0, 0, 0, 1, -1, 0, 0},
                                                         {0, 0, 0, 0, 1, 1, 0},
                                                         {0, 0, 0, 0, 0, 0, 1},
                                                         {0, 0, 0, 0, 0, 0, 1},
                                                         {0, 0, 0, 0, 0, 0, -1},
                                                         {0, 0, 0, 0, 0, 0, 0}}));
  // Over Z/2 every sign is 1.
  GradedDifferential mod2 =
      boundary_matrix(fc, adapted_basis(fc, OrderingMode::DegreeMajor), zp(2));
  CHECK(is_boolean(mod2.matrix()));
  CHECK(mod2.matrix().nonzeros() == 9);

  FilteredComplex one;
  one.add(Simplex({0}), 1);
  CHECK(boundary_matrix(one, adapted_basis(one, OrderingMode::DegreeMajor), q()).matrix() ==
        ColumnMatrix(1, 1, q()));
}

TEST_CASE("nondegeneracy") {
  CHECK_FALSE(is_nondegenerate(load("triangle.complex")));
  CHECK(is_nondegenerate(FilteredComplex{}));
  FilteredComplex distinct;
  distinct.add(Simplex({0}), 1);
  distinct.add(Simplex({1}), 2);
  distinct.add(Simplex({0, 1}), 3);
  CHECK(is_nondegenerate(distinct));
}

TEST_CASE("complexes from matrices") {
  FilteredComplex fc = load("triangle.complex");
  GradedDifferential d = boundary_matrix(fc, adapted_basis(fc, OrderingMode::DegreeMajor), q());
  FilteredChainComplex cc = complex_from_matrix(d);
  CHECK(cc.size() == 7);
  CHECK(cc.is_nondegenerate());
  CHECK(cc.boundary_matrix() == d);
  for (std::size_t p = 0; p <= 7; ++p) {
    CHECK(cc.at_level(static_cast<int>(p)) == upper_left(d, p));
  }
  CHECK(cc.at_level(100) == d);
  CHECK(cc.at_level(-3).dimension() == 0);
  std::vector<int> levels;
  for (const Generator& g : cc.generators()) levels.push_back(g.level);
  CHECK(levels == std::vector<int>{1, 2, 3, 4, 5, 6, 7});

  CHECK(complex_from_matrix(GradedDifferential(ColumnMatrix(0, 0, q()), DegreePartition{}))
            .size() == 0);
  CHECK_THROWS_AS(complex_from_matrix(GradedDifferential::ungraded(ColumnMatrix(2, 2, q()))),
                  std::invalid_argument);

  pcf::testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    GradedDifferential r = pcf::testing::random_graded_differential(trial % 2 ? q() : zp(5), rng, 12);
    CHECK(complex_from_matrix(r).boundary_matrix() == r);
  }
}

TEST_CASE("abstract chain complexes reject bad boundaries") {
  FieldSpec f = q();
  Scalar one = Scalar::one(f);
  CHECK_THROWS_AS(FilteredChainComplex(f, {{"x", 1, 1, {}}, {"y", 0, 1, {}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FilteredChainComplex(f, {{"x", 0, 1, {}}, {"y", 2, 1, {{0, one}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FilteredChainComplex(f, {{"x", 0, 2, {}}, {"y", 1, 1, {{0, one}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FilteredChainComplex(f, {{"x", 0, 1, {}}, {"y", 1, 1, {{5, one}}}}),
                  std::invalid_argument);
  CHECK_NOTHROW(FilteredChainComplex(f, {{"x", 0, 1, {}}, {"y", 1, 1, {{0, one}}}}));
}

TEST_CASE("level-respecting basis changes of nondegenerate complexes are triangular") {
  // In a nondegenerate complex each degree gains at most one generator per
  // level, so an automorphism preserving every level and degree is
  // block-diagonal upper-triangular in the natural order.
  pcf::testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    GradedDifferential d = pcf::testing::random_graded_differential(q(), rng, 10);
    FilteredChainComplex cc = complex_from_matrix(d);
    const std::size_t n = cc.size();
    ColumnMatrix b(n, n, q());
    for (std::size_t j = 0; j < n; ++j) {
      b.set(j, j, pcf::testing::random_scalar(q(), rng, true));
      for (std::size_t i = 0; i < n; ++i) {
        const Generator& gi = cc.generators()[i];
        const Generator& gj = cc.generators()[j];
        if (i == j || gi.degree != gj.degree || gi.level > gj.level) continue;
        if (pcf::testing::uniform(rng, 0, 1)) {
          Scalar s = pcf::testing::random_scalar(q(), rng);
          if (!s.is_zero()) b.set(i, j, s);
        }
      }
    }
    CHECK(is_triangular_invertible(b));
    CHECK(is_block_diagonal(b, *d.partition()));
  }
}
