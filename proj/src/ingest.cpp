#include "pcf/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "pcf/decimal.hpp"

namespace pcf {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

PointCloud parse_points(std::string_view text) {
  PointCloud pc;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<Rational> coords;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
    while (i < line.size()) {
      while (i < line.size() && is_sep(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_sep(line[i])) ++i;
      if (start == i) break;
      std::string_view token = line.substr(start, i - start);
      auto value = parse_decimal(token);
      if (!value) throw ParseError(line_no, "not a number: '" + std::string(token) + "'");
      coords.push_back(std::move(*value));
    }
    if (coords.empty()) continue;
    if (pc.points.empty()) {
      pc.dimension = coords.size();
    } else if (coords.size() != pc.dimension) {
      throw ParseError(line_no, "expected " + std::to_string(pc.dimension) +
                                    " coordinates, found " + std::to_string(coords.size()));
    }
    pc.points.push_back(std::move(coords));
  }
  return pc;
}

FilteredComplex vietoris_rips(const PointCloud& pc, int max_dim,
                              std::optional<Rational> max_radius) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  const std::size_t n = pc.size();
  std::vector<std::vector<Rational>> dist2(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      Rational s = 0;
      for (std::size_t k = 0; k < pc.dimension; ++k) {
        Rational d = pc.points[a][k] - pc.points[b][k];
        s += d * d;
      }
      dist2[a][b] = dist2[b][a] = s;
    }
  }
  std::optional<Rational> bound;  // on squared distance
  if (max_radius) bound = 4 * *max_radius * *max_radius;
  auto close = [&](std::size_t a, std::size_t b) { return !bound || dist2[a][b] <= *bound; };

  struct Candidate {
    std::vector<Vertex> vertices;
    Rational diam2;
  };
  std::vector<Candidate> found;
  std::vector<Vertex> current;
  // Grow cliques in increasing vertex order; diam2 is the running maximum.
  std::function<void(std::size_t, const Rational&)> grow = [&](std::size_t next,
                                                                const Rational& diam2) {
    found.push_back({current, diam2});
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t v = next; v < n; ++v) {
      Rational d = diam2;
      bool ok = true;
      for (Vertex u : current) {
        if (!close(u, v)) {
          ok = false;
          break;
        }
        if (dist2[u][v] > d) d = dist2[u][v];
      }
      if (!ok) continue;
      current.push_back(static_cast<Vertex>(v));
      grow(v + 1, d);
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    current = {static_cast<Vertex>(v)};
    grow(v + 1, Rational(0));
  }

  std::map<Rational, int> level_of;
  for (const Candidate& c : found) level_of.emplace(c.diam2, 0);
  int level = 0;
  for (auto& [d, l] : level_of) l = ++level;

  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  FilteredComplex fc;
  for (Candidate& c : found) {
    double birth = std::sqrt(to_double(c.diam2)) / 2;
    int l = level_of.at(c.diam2);
    fc.add(Simplex(std::move(c.vertices)), l, birth);
  }
  return fc;
}

}  // namespace pcf
