#include "pcf/barcode.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcf {

Pairing extract_pairing(const ColumnMatrix& dcanon, std::span<const BasisElement> basis) {
  const std::size_t m = dcanon.cols();
  if (!dcanon.is_square() || basis.size() != m) {
    throw std::invalid_argument("basis does not match the canonical matrix");
  }
  if (!is_boolean(dcanon) || !is_quasi_monomial(dcanon) || !is_differential(dcanon)) {
    throw std::invalid_argument("canonical matrix is not a Boolean quasi-monomial differential");
  }
  Pairing out;
  std::vector<bool> used(m, false);
  for (Index k = 0; k < m; ++k) {
    const Column& col = dcanon.column(k);
    if (col.empty()) continue;
    Index j = col.front().row;
    const BasisElement& creator = basis[j];
    const BasisElement& destroyer = basis[k];
    if (creator.degree + 1 != destroyer.degree) {
      throw std::invalid_argument("pair (" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                  ") does not raise the degree by one");
    }
    if (creator.level > destroyer.level) {
      throw std::invalid_argument("pair (" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                  ") dies before it is born");
    }
    used[j] = used[k] = true;
    out.pairs.emplace_back(j, k);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (Index i = 0; i < m; ++i) {
    if (!used[i]) out.singletons.push_back(i);
  }
  return out;
}

void sort_bars(std::vector<Barcode>& bars) {
  std::sort(bars.begin(), bars.end(), [](const Barcode& a, const Barcode& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth_level != b.birth_level) return a.birth_level < b.birth_level;
    if (a.death_level.has_value() != b.death_level.has_value()) return a.death_level.has_value();
    return a.death_level < b.death_level;
  });
}

std::vector<Barcode> barcodes(const Pairing& pairing, std::span<const BasisElement> basis,
                              bool drop_empty) {
  std::vector<Barcode> bars;
  for (auto [j, k] : pairing.pairs) {
    const BasisElement& c = basis[j];
    const BasisElement& d = basis[k];
    Barcode bar{c.degree, c.level, d.level, c.birth, d.birth};
    if (drop_empty && bar.is_empty()) continue;
    bars.push_back(bar);
  }
  for (Index s : pairing.singletons) {
    const BasisElement& e = basis[s];
    bars.push_back({e.degree, e.level, std::nullopt, e.birth, std::nullopt});
  }
  sort_bars(bars);
  return bars;
}

std::size_t betti(std::span<const Barcode> bars, int n, int p) {
  return static_cast<std::size_t>(std::count_if(
      bars.begin(), bars.end(), [&](const Barcode& b) { return b.degree == n && b.contains(p); }));
}

std::string interval_label(int degree, int birth, std::optional<int> death) {
  return "[" + std::to_string(birth) + "," + (death ? std::to_string(*death) : "∞") + ")_" +
         std::to_string(degree);
}

std::vector<Summand> summands(const Pairing& pairing, std::span<const BasisElement> basis) {
  std::vector<Summand> out;
  for (auto [j, k] : pairing.pairs) {
    Summand s{Summand::Kind::K, basis[j].degree, basis[j].level, basis[k].level, {j, k}, {}};
    s.label = interval_label(s.degree, s.birth_level, s.death_level);
    out.push_back(std::move(s));
  }
  for (Index i : pairing.singletons) {
    Summand s{Summand::Kind::J, basis[i].degree, basis[i].level, std::nullopt, {i}, {}};
    s.label = interval_label(s.degree, s.birth_level, s.death_level);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const Summand& a, const Summand& b) { return a.members[0] < b.members[0]; });
  return out;
}

}  // namespace pcf
