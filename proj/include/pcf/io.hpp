#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcf/complex.hpp"
#include "pcf/ingest.hpp"
#include "pcf/matrix.hpp"

namespace pcf {

// Filtered-complex files: one record `f v0 v1 ... vk` per line, `#` comments.
// Levels rank the distinct exact values of f ascending from 1. Faces are not
// inserted; a repeated simplex is a parse error.
FilteredComplex parse_complex(std::string_view text);
/// Writes births when every cell has one, levels otherwise.
std::string write_complex(const FilteredComplex& fc);

// Matrix interchange:
//   name <id>                   (optional)
//   matrix <rows> <cols> <field>  field is q or zp:<p>
//   degrees n1:s1 n2:s2 ...     (optional)
//   r c value                   1-based, one per nonzero entry
struct NamedMatrix {
  std::string name;
  ColumnMatrix matrix;
  std::optional<DegreePartition> partition;
};

/// All matrices in a document, in order.
std::vector<NamedMatrix> parse_matrices(std::string_view text);
/// Exactly one matrix; throws ParseError otherwise.
NamedMatrix parse_matrix(std::string_view text);
/// Entries are written in row-major order.
std::string write_matrix(const ColumnMatrix& m, const std::string& name = {},
                         const std::optional<DegreePartition>& partition = std::nullopt);

/// Reads a whole file, or standard input for "-". Throws ParseError.
std::string read_input(const std::string& path);

/// True when the first meaningful line starts a matrix document.
bool looks_like_matrix(std::string_view text);

}  // namespace pcf
