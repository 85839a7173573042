#include "pcf/report.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>

#include "pcf/decimal.hpp"

namespace pcf {

namespace {

std::string interval_text(const Barcode& b) {
  return "[" + std::to_string(b.birth_level) + "," +
         (b.death_level ? std::to_string(*b.death_level) : "inf") + ")";
}

}  // namespace

std::string bars_json(std::span<const Barcode> bars) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Barcode& b : bars) {
    nlohmann::ordered_json bar;
    bar["degree"] = b.degree;
    bar["birth_level"] = b.birth_level;
    bar["death_level"] = b.death_level ? nlohmann::ordered_json(*b.death_level) : nullptr;
    if (b.birth_value) bar["birth_value"] = *b.birth_value;
    if (b.death_level && b.death_value) bar["death_value"] = *b.death_value;
    out.push_back(std::move(bar));
  }
  return out.dump(2) + "\n";
}

std::string bars_csv(std::span<const Barcode> bars) {
  std::string out = "degree,birth_level,death_level,birth_value,death_value\n";
  for (const Barcode& b : bars) {
    out += std::to_string(b.degree) + "," + std::to_string(b.birth_level) + ",";
    if (b.death_level) out += std::to_string(*b.death_level);
    out += ",";
    if (b.birth_value) out += format_double(*b.birth_value);
    out += ",";
    if (b.death_level && b.death_value) out += format_double(*b.death_value);
    out += "\n";
  }
  return out;
}

std::string bars_diagram(std::span<const Barcode> bars, std::span<const BasisElement> basis) {
  if (bars.empty()) return "no bars\n";
  int lo = bars.front().birth_level;
  int hi = lo;
  for (const Barcode& b : bars) {
    lo = std::min(lo, b.birth_level);
    hi = std::max(hi, b.death_level.value_or(b.birth_level + 1));
  }
  // Columns cover levels lo..hi-1; infinite bars get a trailing '>'.
  std::string out;
  std::optional<int> degree;
  for (const Barcode& b : bars) {
    if (degree != b.degree) {
      degree = b.degree;
      out += "degree " + std::to_string(b.degree) + "\n";
    }
    std::string row = "  ";
    for (int p = lo; p < hi; ++p) row += b.contains(p) ? '-' : ' ';
    if (b.is_infinite()) row += '>';
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + std::string(static_cast<std::size_t>(hi - lo) + 4 - row.size(), ' ') +
           interval_text(b) + "\n";
  }
  std::map<int, double> threshold;
  for (const BasisElement& e : basis) {
    if (e.birth) threshold.emplace(e.level, *e.birth);
  }
  if (!threshold.empty()) {
    out += "levels\n";
    for (auto [level, r] : threshold) {
      out += "  " + std::to_string(level) + ": " + format_double(r) + "\n";
    }
  }
  return out;
}

std::string summands_text(std::span<const Summand> summands,
                          std::span<const BasisElement> basis) {
  std::string out;
  for (const Summand& s : summands) {
    out += s.label + (s.kind == Summand::Kind::J ? "  J" : "  K");
    const char* roles[] = {"creator", "destroyer"};
    for (std::size_t r = 0; r < s.members.size(); ++r) {
      const BasisElement& e = basis[s.members[r]];
      out += std::string("  ") + (s.kind == Summand::Kind::J ? "generator" : roles[r]) + " " +
             std::to_string(e.index + 1) + ":" + e.label + " (degree " + std::to_string(e.degree) +
             ", level " + std::to_string(e.level) + ")";
    }
    out += "\n";
  }
  return out;
}

std::string summands_json(std::span<const Summand> summands,
                          std::span<const BasisElement> basis) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Summand& s : summands) {
    nlohmann::ordered_json item;
    item["label"] = s.label;
    item["kind"] = s.kind == Summand::Kind::J ? "J" : "K";
    item["degree"] = s.degree;
    item["birth_level"] = s.birth_level;
    item["death_level"] = s.death_level ? nlohmann::ordered_json(*s.death_level) : nullptr;
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (Index i : s.members) {
      const BasisElement& e = basis[i];
      members.push_back({{"index", e.index + 1},
                         {"label", e.label},
                         {"degree", e.degree},
                         {"level", e.level}});
    }
    item["members"] = std::move(members);
    out.push_back(std::move(item));
  }
  return out.dump(2) + "\n";
}

}  // namespace pcf
