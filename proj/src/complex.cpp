#include "pcf/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace pcf {

// --- Simplex ---------------------------------------------------------------

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("simplex needs at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i]) {
      throw std::invalid_argument("simplex vertices must strictly increase: " + label());
    }
  }
}

Simplex Simplex::from_unsorted(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return Simplex(std::move(vertices));
}

std::vector<Simplex> Simplex::faces() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  for (std::size_t m = 0; m < vertices_.size(); ++m) {
    Simplex face;
    face.vertices_ = vertices_;
    face.vertices_.erase(face.vertices_.begin() + static_cast<std::ptrdiff_t>(m));
    out.push_back(std::move(face));
  }
  return out;
}

std::string Simplex::label() const {
  std::string s = "[";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vertices_[i]);
  }
  return s + "]";
}

// --- FilteredComplex -------------------------------------------------------

void FilteredComplex::add(Simplex simplex, int level, std::optional<double> birth) {
  index_.try_emplace(simplex, cells_.size());
  cells_.push_back({std::move(simplex), level, birth});
}

std::optional<Index> FilteredComplex::find(const Simplex& simplex) const {
  auto it = index_.find(simplex);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FilteredComplex::has_births() const {
  return !cells_.empty() && std::all_of(cells_.begin(), cells_.end(),
                                        [](const Cell& c) { return c.birth.has_value(); });
}

std::vector<Violation> validate(const FilteredComplex& fc) {
  std::vector<Violation> out;
  const auto& cells = fc.cells();
  for (Index i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    if (fc.find(cell.simplex) != i) {
      out.push_back({i, Violation::Rule::DuplicateSimplex,
                     "duplicate simplex " + cell.simplex.label()});
      continue;
    }
    for (const Simplex& face : cell.simplex.faces()) {
      auto f = fc.find(face);
      if (!f) {
        out.push_back({i, Violation::Rule::MissingFace,
                       cell.simplex.label() + " is missing face " + face.label()});
      } else if (cells[*f].level > cell.level) {
        out.push_back({i, Violation::Rule::NonMonotone,
                       cell.simplex.label() + " at level " + std::to_string(cell.level) +
                           " has face " + face.label() + " at later level " +
                           std::to_string(cells[*f].level)});
      }
    }
  }

  // Levels must order the births strictly: equal births share a level and a
  // larger birth never sits at a lower or equal level.
  std::map<double, std::pair<int, int>> level_range;  // birth -> (min, max) level
  std::map<double, Index> first_cell;
  for (Index i = 0; i < cells.size(); ++i) {
    if (!cells[i].birth) continue;
    double b = *cells[i].birth;
    auto [it, inserted] = level_range.try_emplace(b, cells[i].level, cells[i].level);
    if (inserted) {
      first_cell[b] = i;
    } else {
      it->second.first = std::min(it->second.first, cells[i].level);
      it->second.second = std::max(it->second.second, cells[i].level);
    }
  }
  std::optional<int> previous_max;
  for (const auto& [birth, range] : level_range) {
    Index i = first_cell[birth];
    if (range.first != range.second) {
      out.push_back({i, Violation::Rule::BirthOrder,
                     "birth " + std::to_string(birth) + " spans several levels"});
    }
    if (previous_max && range.first <= *previous_max) {
      out.push_back({i, Violation::Rule::BirthOrder,
                     "birth " + std::to_string(birth) +
                         " is not at a later level than smaller births"});
    }
    previous_max = range.second;
  }
  return out;
}

FilteredComplex close_under_faces(const FilteredComplex& fc) {
  struct Required {
    int level;
    std::optional<double> birth;
  };
  std::map<Simplex, Required> added;
  int top = -1;
  for (const Cell& c : fc.cells()) top = std::max(top, c.simplex.degree());

  auto require = [&](const Simplex& face, int level, std::optional<double> birth) {
    if (fc.find(face)) return;
    auto [it, inserted] = added.try_emplace(face, Required{level, birth});
    if (!inserted) {
      it->second.level = std::min(it->second.level, level);
      if (birth) it->second.birth = it->second.birth ? std::min(*it->second.birth, *birth) : birth;
    }
  };

  for (int degree = top; degree >= 1; --degree) {
    for (const Cell& c : fc.cells()) {
      if (c.simplex.degree() != degree) continue;
      for (const Simplex& face : c.simplex.faces()) require(face, c.level, c.birth);
    }
    std::vector<std::pair<Simplex, Required>> fresh;
    for (const auto& [s, r] : added) {
      if (s.degree() == degree) fresh.emplace_back(s, r);
    }
    for (const auto& [s, r] : fresh) {
      for (const Simplex& face : s.faces()) require(face, r.level, r.birth);
    }
  }

  FilteredComplex out = fc;
  std::vector<std::pair<Simplex, Required>> extra(added.begin(), added.end());
  std::stable_sort(extra.begin(), extra.end(), [](const auto& a, const auto& b) {
    return a.first.degree() < b.first.degree();
  });
  for (auto& [s, r] : extra) out.add(s, r.level, r.birth);
  return out;
}

// --- adapted bases ---------------------------------------------------------

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string s = "invalid filtered complex:";
  for (const Violation& v : violations) s += "\n  " + v.message;
  return s;
}

}  // namespace

InvalidComplex::InvalidComplex(std::vector<Violation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

AdaptedBasis adapted_basis(const FilteredComplex& fc, OrderingMode mode) {
  if (auto violations = validate(fc); !violations.empty()) {
    throw InvalidComplex(std::move(violations));
  }
  const auto& cells = fc.cells();
  AdaptedBasis basis;
  basis.mode = mode;
  basis.order.resize(cells.size());
  std::iota(basis.order.begin(), basis.order.end(), Index{0});
  auto key = [&](Index i) {
    const Cell& c = cells[i];
    return mode == OrderingMode::DegreeMajor
               ? std::tuple(c.simplex.degree(), c.level, std::cref(c.simplex))
               : std::tuple(c.level, c.simplex.degree(), std::cref(c.simplex));
  };
  std::sort(basis.order.begin(), basis.order.end(),
            [&](Index a, Index b) { return key(a) < key(b); });

  for (Index pos = 0; pos < basis.order.size(); ++pos) {
    const Cell& c = cells[basis.order[pos]];
    basis.elements.push_back({pos, c.simplex.degree(), c.level, c.simplex.label(), c.birth});
  }
  if (mode == OrderingMode::DegreeMajor) {
    std::vector<DegreePartition::Block> blocks;
    for (const BasisElement& e : basis.elements) {
      if (blocks.empty() || blocks.back().degree != e.degree) {
        blocks.push_back({e.degree, 0});
      }
      ++blocks.back().size;
    }
    basis.partition = DegreePartition(std::move(blocks));
  }
  return basis;
}

GradedDifferential boundary_matrix(const FilteredComplex& fc, const AdaptedBasis& basis,
                                   const FieldSpec& field) {
  const std::size_t m = fc.size();
  if (basis.order.size() != m || basis.elements.size() != m) {
    throw std::invalid_argument("basis does not cover the complex");
  }
  std::vector<Index> position(m, m);
  for (Index pos = 0; pos < m; ++pos) {
    Index cell = basis.order[pos];
    if (cell >= m || position[cell] != m) {
      throw std::invalid_argument("basis order is not a permutation of the cells");
    }
    position[cell] = pos;
  }

  const Scalar one = Scalar::one(field);
  const Scalar minus_one = -one;
  ColumnMatrix d(m, m, field);
  for (Index pos = 0; pos < m; ++pos) {
    const Simplex& s = fc.cells()[basis.order[pos]].simplex;
    Column col;
    auto faces = s.faces();
    for (std::size_t k = 0; k < faces.size(); ++k) {
      auto f = fc.find(faces[k]);
      if (!f) throw std::invalid_argument("face " + faces[k].label() + " missing from complex");
      const Scalar& sign = k % 2 == 0 ? one : minus_one;
      if (!sign.is_zero()) col.push_back({position[*f], sign});
    }
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    d.set_column(pos, std::move(col));
  }
  std::optional<DegreePartition> partition;
  if (basis.mode == OrderingMode::DegreeMajor) partition = basis.partition;
  return GradedDifferential(std::move(d), std::move(partition));
}

bool is_nondegenerate(const FilteredComplex& fc) {
  std::set<std::pair<int, int>> seen;
  for (const Cell& c : fc.cells()) {
    if (!seen.emplace(c.simplex.degree(), c.level).second) return false;
  }
  return true;
}

// --- abstract filtered chain complexes -------------------------------------

FilteredChainComplex::FilteredChainComplex(FieldSpec field, std::vector<Generator> generators)
    : field_(field), generators_(std::move(generators)) {
  for (Index j = 0; j < generators_.size(); ++j) {
    const Generator& g = generators_[j];
    if (j > 0) {
      const Generator& prev = generators_[j - 1];
      if (std::tie(prev.degree, prev.level) > std::tie(g.degree, g.level)) {
        throw std::invalid_argument("generators are not in degree-major adapted order");
      }
    }
    for (const Entry& e : g.boundary) {
      if (e.row >= generators_.size()) {
        throw std::invalid_argument("boundary of " + g.label + " leaves the complex");
      }
      const Generator& face = generators_[e.row];
      if (face.degree + 1 != g.degree) {
        throw std::invalid_argument("boundary of " + g.label + " does not lower degree by one");
      }
      if (face.level > g.level) {
        throw std::invalid_argument("boundary of " + g.label + " reaches a later level");
      }
    }
  }
  boundary_matrix();  // checks the square vanishes
}

std::vector<BasisElement> FilteredChainComplex::basis() const {
  std::vector<BasisElement> out;
  for (Index i = 0; i < generators_.size(); ++i) {
    const Generator& g = generators_[i];
    out.push_back({i, g.degree, g.level, g.label, std::nullopt});
  }
  return out;
}

DegreePartition FilteredChainComplex::partition() const {
  std::vector<DegreePartition::Block> blocks;
  for (const Generator& g : generators_) {
    if (blocks.empty() || blocks.back().degree != g.degree) blocks.push_back({g.degree, 0});
    ++blocks.back().size;
  }
  return DegreePartition(std::move(blocks));
}

GradedDifferential FilteredChainComplex::boundary_matrix() const {
  ColumnMatrix d(size(), size(), field_);
  for (Index j = 0; j < size(); ++j) d.set_column(j, generators_[j].boundary);
  return GradedDifferential(std::move(d), partition());
}

GradedDifferential FilteredChainComplex::at_level(int p) const {
  std::vector<Index> kept;
  std::vector<Index> position(size(), size());
  for (Index i = 0; i < size(); ++i) {
    if (generators_[i].level <= p) {
      position[i] = kept.size();
      kept.push_back(i);
    }
  }
  ColumnMatrix d(kept.size(), kept.size(), field_);
  std::vector<DegreePartition::Block> blocks;
  for (Index j = 0; j < kept.size(); ++j) {
    const Generator& g = generators_[kept[j]];
    Column col;
    for (const Entry& e : g.boundary) col.push_back({position[e.row], e.value});
    d.set_column(j, std::move(col));
    if (blocks.empty() || blocks.back().degree != g.degree) blocks.push_back({g.degree, 0});
    ++blocks.back().size;
  }
  return GradedDifferential(std::move(d), DegreePartition(std::move(blocks)));
}

bool FilteredChainComplex::is_nondegenerate() const {
  std::set<std::pair<int, int>> seen;
  for (const Generator& g : generators_) {
    if (!seen.emplace(g.degree, g.level).second) return false;
  }
  return true;
}

FilteredChainComplex complex_from_matrix(const GradedDifferential& d) {
  if (!d.partition()) {
    throw std::invalid_argument("complex_from_matrix needs a degree partition");
  }
  std::vector<int> degrees = d.partition()->degrees();
  std::vector<Generator> generators;
  for (Index j = 0; j < d.dimension(); ++j) {
    generators.push_back({"e" + std::to_string(j + 1), degrees[j], static_cast<int>(j + 1),
                          d.matrix().column(j)});
  }
  return FilteredChainComplex(d.field(), std::move(generators));
}

}  // namespace pcf
