#include "pcf/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "pcf/decimal.hpp"

namespace pcf {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

/// Non-empty lines split on whitespace, comments removed.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (i < line.size()) {
      while (i < line.size() && space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !space(line[i])) ++i;
      if (start < i) parsed.tokens.push_back(line.substr(start, i - start));
    }
    if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("bad ") + what + ": '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

FilteredComplex parse_complex(std::string_view text) {
  struct Record {
    std::size_t line;
    Rational value;
    Simplex simplex;
  };
  std::vector<Record> records;
  std::set<Simplex> seen;
  for (const Line& line : tokenize(text)) {
    if (line.tokens.size() < 2) throw ParseError(line.number, "expected 'f v0 ... vk'");
    auto value = parse_decimal(line.tokens[0]);
    if (!value) {
      throw ParseError(line.number,
                       "bad filtration value: '" + std::string(line.tokens[0]) + "'");
    }
    std::vector<Vertex> vertices;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
      vertices.push_back(parse_int<Vertex>(line.tokens[k], line.number, "vertex id"));
    }
    Simplex simplex;
    try {
      simplex = Simplex::from_unsorted(std::move(vertices));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
    if (!seen.insert(simplex).second) {
      throw ParseError(line.number, "duplicate simplex " + simplex.label());
    }
    records.push_back({line.number, std::move(*value), std::move(simplex)});
  }
  std::map<Rational, int> level_of;
  for (const Record& r : records) level_of.emplace(r.value, 0);
  int level = 0;
  for (auto& [v, l] : level_of) l = ++level;

  FilteredComplex fc;
  for (Record& r : records) {
    fc.add(std::move(r.simplex), level_of.at(r.value), to_double(r.value));
  }
  return fc;
}

std::string write_complex(const FilteredComplex& fc) {
  const bool births = fc.has_births();
  std::string out;
  for (const Cell& c : fc.cells()) {
    out += births ? format_double(*c.birth) : std::to_string(c.level);
    for (Vertex v : c.simplex.vertices()) out += ' ' + std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<NamedMatrix> parse_matrices(std::string_view text) {
  std::vector<NamedMatrix> out;
  std::optional<std::string> pending_name;
  bool open = false;  // last matrix may still take degrees and entries
  bool has_entries = false;
  for (const Line& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "name") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'name <id>'");
      pending_name = std::string(t[1]);
      open = false;
    } else if (t[0] == "matrix") {
      if (t.size() != 4) throw ParseError(line.number, "expected 'matrix <rows> <cols> <field>'");
      auto rows = parse_int<std::size_t>(t[1], line.number, "row count");
      auto cols = parse_int<std::size_t>(t[2], line.number, "column count");
      FieldSpec field;
      try {
        field = FieldSpec::parse(t[3]);
      } catch (const std::exception& e) {
        throw ParseError(line.number, e.what());
      }
      out.push_back({pending_name.value_or(""), ColumnMatrix(rows, cols, field), std::nullopt});
      pending_name.reset();
      open = true;
      has_entries = false;
    } else if (t[0] == "degrees") {
      if (!open || has_entries || out.back().partition) {
        throw ParseError(line.number, "'degrees' must follow a matrix header");
      }
      std::vector<DegreePartition::Block> blocks;
      for (std::size_t k = 1; k < t.size(); ++k) {
        auto colon = t[k].find(':');
        if (colon == std::string_view::npos) {
          throw ParseError(line.number, "expected n:size, got '" + std::string(t[k]) + "'");
        }
        int degree = parse_int<int>(t[k].substr(0, colon), line.number, "degree");
        auto size = parse_int<std::size_t>(t[k].substr(colon + 1), line.number, "block size");
        blocks.push_back({degree, size});
      }
      try {
        DegreePartition partition(std::move(blocks));
        if (partition.dimension() != out.back().matrix.cols()) {
          throw std::invalid_argument("degree blocks do not cover the matrix");
        }
        out.back().partition = std::move(partition);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, e.what());
      }
    } else {
      if (!open) throw ParseError(line.number, "entry outside a matrix");
      if (t.size() != 3) throw ParseError(line.number, "expected 'row col value'");
      NamedMatrix& nm = out.back();
      auto r = parse_int<std::size_t>(t[0], line.number, "row");
      auto c = parse_int<std::size_t>(t[1], line.number, "column");
      if (r < 1 || r > nm.matrix.rows() || c < 1 || c > nm.matrix.cols()) {
        throw ParseError(line.number, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") outside the matrix");
      }
      Scalar value;
      try {
        value = Scalar::parse(nm.matrix.field(), t[2]);
      } catch (const std::exception& e) {
        throw ParseError(line.number, e.what());
      }
      if (!nm.matrix.at(r - 1, c - 1).is_zero()) {
        throw ParseError(line.number, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") given twice");
      }
      nm.matrix.set(r - 1, c - 1, value);
      has_entries = true;
    }
  }
  if (pending_name) throw ParseError(0, "name without a matrix");
  return out;
}

NamedMatrix parse_matrix(std::string_view text) {
  auto all = parse_matrices(text);
  if (all.size() != 1) {
    throw ParseError(0, "expected one matrix, found " + std::to_string(all.size()));
  }
  return std::move(all.front());
}

std::string write_matrix(const ColumnMatrix& m, const std::string& name,
                         const std::optional<DegreePartition>& partition) {
  std::string out;
  if (!name.empty()) out += "name " + name + "\n";
  out += "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
         m.field().to_string() + "\n";
  if (partition) {
    out += "degrees";
    for (const auto& b : partition->blocks()) {
      out += " " + std::to_string(b.degree) + ":" + std::to_string(b.size);
    }
    out += "\n";
  }
  auto dense = m.to_dense();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!dense[i][j].is_zero()) {
        out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
               dense[i][j].to_string() + "\n";
      }
    }
  }
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    buffer << in.rdbuf();
  }
  return buffer.str();
}

bool looks_like_matrix(std::string_view text) {
  auto lines = tokenize(text);
  return !lines.empty() && (lines[0].tokens[0] == "matrix" || lines[0].tokens[0] == "name");
}

}  // namespace pcf
