#include <doctest.h>

#include "pcf/io.hpp"
#include "support/testing.hpp"

using namespace pcf;
using pcf::testing::q;
using pcf::testing::zp;

TEST_CASE("complex files") {
  FilteredComplex fc = parse_complex("# c\n0 0\n0 1\n0.5 1 0\n");
  REQUIRE(fc.size() == 3);
  CHECK(fc.cells()[2].simplex == Simplex({0, 1}));
  CHECK(fc.cells()[2].level == 2);
  CHECK(fc.cells()[2].birth == 0.5);
  CHECK(write_complex(fc) == "0 0\n0 1\n0.5 0 1\n");

  // Faces are not inserted; validation sees the gap.
  FilteredComplex open = parse_complex("1 0 1\n");
  CHECK(open.size() == 1);
  CHECK_FALSE(validate(open).empty());

  // Exact comparison: 0.1 + 0.2 style rounding never merges or splits levels.
  FilteredComplex exact = parse_complex("0.3 0\n0.30 1\n0.300000000000000001 2\n");
  CHECK(exact.cells()[0].level == exact.cells()[1].level);
  CHECK(exact.cells()[2].level == 2);

  auto line_of = [](const char* text) {
    try {
      parse_complex(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("0 0\n1 0\n") == 2);
  CHECK(line_of("0 0\n\nx 1\n") == 3);
  CHECK(line_of("0 -1\n") == 1);
  CHECK(line_of("0\n") == 1);
  CHECK(line_of("0 1 1\n") == 1);
  CHECK(parse_complex("").empty());
}

TEST_CASE("matrix interchange round trips") {
  NamedMatrix nm = parse_matrix(read_input(std::string(PCF_FIXTURES) + "/triangle_degree_major.matrix"));
  CHECK(nm.matrix.rows() == 7);
  CHECK(nm.partition->blocks() == std::vector<DegreePartition::Block>{{0, 3}, {1, 3}, {2, 1}});
  CHECK(nm.matrix.at(5, 6) == Scalar::from_int(q(), -1));
  std::string text = write_matrix(nm.matrix, "d", nm.partition);
  NamedMatrix again = parse_matrix(text);
  CHECK(again.name == "d");
  CHECK(again.matrix == nm.matrix);
  CHECK(again.partition == nm.partition);

  ColumnMatrix m(2, 3, zp(7));
  m.set(1, 2, Scalar::from_int(zp(7), 5));
  CHECK(write_matrix(m) == "matrix 2 3 zp:7\n2 3 5\n");
  CHECK(parse_matrix(write_matrix(m)).matrix == m);

  ColumnMatrix r(1, 1, q());
  r.set(0, 0, Scalar::parse(q(), "-3/4"));
  CHECK(write_matrix(r) == "matrix 1 1 q\n1 1 -3/4\n");
}

TEST_CASE("matrix documents with several matrices") {
  auto all = parse_matrices("name a\nmatrix 1 1 q\n1 1 2\nname b\nmatrix 2 2 zp:3\n");
  REQUIRE(all.size() == 2);
  CHECK(all[0].name == "a");
  CHECK(all[1].name == "b");
  CHECK(all[1].matrix.is_zero());
  CHECK_THROWS_AS(parse_matrix("matrix 1 1 q\nmatrix 1 1 q\n"), ParseError);
}

TEST_CASE("matrix parse errors name the line") {
  auto line_of = [](const char* text) {
    try {
      parse_matrices(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{99};
  };
  CHECK(line_of("1 1 1\n") == 1);
  CHECK(line_of("matrix 2 2 q\n3 1 1\n") == 2);
  CHECK(line_of("matrix 2 2 q\n1 1 1\n1 1 2\n") == 3);
  CHECK(line_of("matrix 2 2 r\n") == 1);
  CHECK(line_of("matrix 2 2 zp:4\n") == 1);
  CHECK(line_of("matrix 2 2 q\n1 1 1/0\n") == 2);
  CHECK(line_of("matrix 2 2 q\ndegrees 0:1\n") == 2);
  CHECK(line_of("matrix 2 2 q\n1 1 1\ndegrees 0:2\n") == 3);
  CHECK(line_of("matrix 2 2 q\ndegrees 1:1 0:1\n") == 2);
  CHECK(line_of("matrix 2 2 q\n# ok\n1 1\n") == 3);
  CHECK(line_of("matrix 2 x q\n") == 1);
  CHECK(line_of(read_input(std::string(PCF_FIXTURES) + "/malformed.matrix").c_str()) == 3);
}

TEST_CASE("input sniffing") {
  CHECK(looks_like_matrix("# x\nmatrix 1 1 q\n"));
  CHECK(looks_like_matrix("name d\nmatrix 1 1 q\n"));
  CHECK_FALSE(looks_like_matrix("0 0\n"));
  CHECK_FALSE(looks_like_matrix(""));
  CHECK_THROWS_AS(read_input("/nonexistent/file"), ParseError);
}
