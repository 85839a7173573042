// Command-line front end: reduce, barcodes, decompose, verify, rips.
// Exit codes: 0 success, 2 input error, 3 verification failure.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "pcf/barcode.hpp"
#include "pcf/complex.hpp"
#include "pcf/decimal.hpp"
#include "pcf/ingest.hpp"
#include "pcf/io.hpp"
#include "pcf/matrix.hpp"
#include "pcf/oracle.hpp"
#include "pcf/report.hpp"

namespace {

using namespace pcf;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kVerificationFailure = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input = "-";
  std::string field = "q";
  std::uint64_t prime = 2;
  std::string ordering = "degree";
  std::string format = "text";
  bool drop_empty = true;
  bool close = false;
  bool emit_certificate = false;
  bool points = false;
  int max_dim = 2;
  std::optional<std::string> max_radius;
  std::optional<std::string> certificate;
  std::optional<std::size_t> exhaustive;
};

FieldSpec field_of(const RunConfig& cfg) {
  if (cfg.field == "q") return FieldSpec::rationals();
  if (cfg.field == "zp") return FieldSpec::prime(cfg.prime);
  return FieldSpec::parse(cfg.field);
}

OrderingMode ordering_of(const RunConfig& cfg) {
  return cfg.ordering == "level" ? OrderingMode::LevelMajor : OrderingMode::DegreeMajor;
}

std::optional<Rational> radius_of(const RunConfig& cfg) {
  if (!cfg.max_radius) return std::nullopt;
  auto r = parse_decimal(*cfg.max_radius);
  if (!r || *r < 0) throw InputError("--max-radius must be a non-negative number");
  return r;
}

/// A filtration ready for reduction: the boundary plus per-element metadata.
struct Loaded {
  GradedDifferential d;
  std::vector<BasisElement> basis;
};

Loaded load_complex(const FilteredComplex& input, const RunConfig& cfg) {
  FilteredComplex fc = cfg.close ? close_under_faces(input) : input;
  AdaptedBasis basis = adapted_basis(fc, ordering_of(cfg));
  return {boundary_matrix(fc, basis, field_of(cfg)), basis.elements};
}

GradedDifferential differential_from(const NamedMatrix& nm) {
  if (nm.partition) return GradedDifferential(nm.matrix, nm.partition);
  return GradedDifferential::ungraded(nm.matrix);
}

/// Matrix documents, complex files and (with --points) point clouds.
Loaded load(const RunConfig& cfg, bool need_levels) {
  std::string text = read_input(cfg.input);
  if (cfg.points) {
    return load_complex(vietoris_rips(parse_points(text), cfg.max_dim, radius_of(cfg)), cfg);
  }
  if (looks_like_matrix(text)) {
    NamedMatrix nm = parse_matrix(text);
    GradedDifferential d = differential_from(nm);
    if (!need_levels) return {d, {}};
    if (!d.is_graded()) {
      throw InputError("barcodes of a matrix need a 'degrees' line");
    }
    FilteredChainComplex cc = complex_from_matrix(d);
    return {cc.boundary_matrix(), cc.basis()};
  }
  return load_complex(parse_complex(text), cfg);
}

nlohmann::ordered_json dense_json(const ColumnMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : m.to_dense()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Scalar& s : row) r.push_back(s.to_string());
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string order_line(const Permutation& p) {
  std::string s = "# order:";
  for (Index i : p.image) s += " " + std::to_string(i + 1);
  return s + "\n";
}

int cmd_reduce(const RunConfig& cfg) {
  Loaded in = load(cfg, false);
  ReductionResult r = standard_reduction(in.d);
  const auto& partition = in.d.partition();
  if (cfg.format == "json") {
    nlohmann::ordered_json out;
    out["field"] = in.d.field().to_string();
    if (!in.basis.empty()) {
      nlohmann::ordered_json basis = nlohmann::ordered_json::array();
      for (const BasisElement& e : in.basis) {
        basis.push_back({{"label", e.label}, {"degree", e.degree}, {"level", e.level}});
      }
      out["basis"] = std::move(basis);
    }
    out["Dcanon"] = dense_json(r.Dcanon);
    out["B"] = dense_json(r.B);
    nlohmann::ordered_json order = nlohmann::ordered_json::array();
    for (Index i : r.P.image) order.push_back(i + 1);
    out["P"] = std::move(order);
    if (cfg.emit_certificate) {
      out["D"] = dense_json(in.d.matrix());
      out["R"] = dense_json(r.R);
      out["V"] = dense_json(r.V);
      out["Vhat"] = dense_json(r.Vhat);
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::string text;
  if (!in.basis.empty()) {
    text += "# basis:";
    for (const BasisElement& e : in.basis) {
      text += " " + std::to_string(e.index + 1) + "=" + e.label;
    }
    text += "\n";
  }
  if (cfg.emit_certificate) text += write_matrix(in.d.matrix(), "D", partition);
  text += write_matrix(r.Dcanon, "Dcanon", partition);
  text += write_matrix(r.B, "B", partition);
  text += order_line(r.P);
  text += write_matrix(r.P.matrix(in.d.field()), "P");
  if (cfg.emit_certificate) {
    text += write_matrix(r.R, "R");
    text += write_matrix(r.V, "V", partition);
    text += write_matrix(r.Vhat, "Vhat", partition);
  }
  std::cout << text;
  return kOk;
}

struct Decomposition {
  Loaded in;
  Pairing pairing;
};

Decomposition decompose(const RunConfig& cfg) {
  if (cfg.ordering != "degree") {
    throw InputError("barcodes and summands use degree-major ordering only");
  }
  Loaded in = load(cfg, true);
  ReductionResult r = standard_reduction(in.d);
  Pairing pairing = extract_pairing(r.Dcanon, in.basis);
  return {std::move(in), std::move(pairing)};
}

int cmd_barcodes(const RunConfig& cfg) {
  Decomposition dec = decompose(cfg);
  auto bars = barcodes(dec.pairing, dec.in.basis, cfg.drop_empty);
  if (cfg.format == "json") {
    std::cout << bars_json(bars);
  } else if (cfg.format == "csv") {
    std::cout << bars_csv(bars);
  } else {
    std::cout << bars_diagram(bars, dec.in.basis);
  }
  return kOk;
}

int cmd_decompose(const RunConfig& cfg) {
  Decomposition dec = decompose(cfg);
  auto parts = summands(dec.pairing, dec.in.basis);
  if (cfg.format == "json") {
    std::cout << summands_json(parts, dec.in.basis);
  } else if (cfg.format == "csv") {
    throw InputError("decompose supports text and json");
  } else {
    std::cout << summands_text(parts, dec.in.basis);
  }
  return kOk;
}

/// Runs the reduction plus every independent cross-check; returns the failures.
std::vector<std::string> cross_check(const GradedDifferential& d) {
  std::vector<std::string> failures;
  ReductionResult r;
  try {
    r = standard_reduction(d);
  } catch (const VerificationError& e) {
    return {e.what()};
  }
  std::size_t nonzero = 0;
  for (Index j = 0; j < r.R.cols(); ++j) nonzero += !r.R.is_zero_column(j);
  const std::size_t rank = rank_gauss(d.matrix());
  if (rank_gauss(r.R) != nonzero || nonzero != rank) {
    failures.push_back("nonzero columns of R do not match rank(D) = " + std::to_string(rank));
  }
  ReductionResult lookup = standard_reduction(d, ReductionStrategy::PivotLookup);
  if (lookup.Dcanon != r.Dcanon) failures.push_back("reduction strategies disagree");
  if (d.field() == FieldSpec::prime(2) && d.dimension() <= kBruteForceMaxSize) {
    try {
      if (brute_force_canonical(d.matrix()) != r.Dcanon) {
        failures.push_back("exhaustive search found a different canonical form");
      }
    } catch (const CanonicalFormViolation& e) {
      failures.push_back(e.what());
    }
  }
  return failures;
}

int check_certificate(const GradedDifferential& d, const std::string& path) {
  auto matrices = parse_matrices(read_input(path));
  const NamedMatrix* dcanon = nullptr;
  const NamedMatrix* b = nullptr;
  const NamedMatrix* p = nullptr;
  for (const NamedMatrix& nm : matrices) {
    if (nm.name == "Dcanon") dcanon = &nm;
    if (nm.name == "B") b = &nm;
    if (nm.name == "P") p = &nm;
  }
  if (!dcanon || !b || !p) throw InputError("certificate needs Dcanon, B and P");
  if (dcanon->matrix.field() != d.field() || dcanon->matrix.rows() != d.dimension() ||
      b->matrix.rows() != d.dimension() || p->matrix.rows() != d.dimension()) {
    throw InputError("certificate does not match the matrix");
  }
  std::vector<std::string> failures;
  if (!is_triangular_invertible(b->matrix)) failures.push_back("B is not triangular");
  if (d.matrix() * b->matrix != b->matrix * dcanon->matrix) failures.push_back("D*B != B*Dcanon");
  if (!is_almost_jordan(dcanon->matrix)) failures.push_back("Dcanon is not almost-Jordan");
  if (standard_reduction(d).Dcanon != dcanon->matrix) {
    failures.push_back("Dcanon differs from the canonical form");
  }
  // P has one 1 per column; P^-1 Dcanon P = P^T Dcanon P must be Jordan.
  if (!is_boolean(p->matrix) || !is_quasi_monomial(p->matrix) ||
      p->matrix.nonzeros() != d.dimension() ||
      !is_jordan(transpose(p->matrix) * dcanon->matrix * p->matrix)) {
    failures.push_back("P does not conjugate Dcanon to Jordan form");
  }
  for (const std::string& f : failures) std::cerr << "FAIL " << f << "\n";
  if (!failures.empty()) return kVerificationFailure;
  std::cout << "certificate verified\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.exhaustive) {
    std::size_t m = *cfg.exhaustive;
    if (m > kBruteForceMaxSize) throw InputError("--exhaustive accepts sizes up to 4");
    std::size_t checked = 0;
    for (std::size_t size = 1; size <= m; ++size) {
      for (const ColumnMatrix& d : enumerate_differentials_z2(size)) {
        auto failures = cross_check(GradedDifferential::ungraded(d));
        if (!failures.empty()) {
          std::cerr << "FAIL " << failures.front() << "\n" << write_matrix(d);
          return kVerificationFailure;
        }
        ++checked;
      }
    }
    std::cout << "verified " << checked << " square-zero matrices over zp:2\n";
    return kOk;
  }
  std::string text = read_input(cfg.input);
  if (!looks_like_matrix(text)) throw InputError("verify expects a matrix document");
  GradedDifferential d = differential_from(parse_matrix(text));
  if (cfg.certificate) return check_certificate(d, *cfg.certificate);
  auto failures = cross_check(d);
  for (const std::string& f : failures) std::cerr << "FAIL " << f << "\n";
  if (!failures.empty()) return kVerificationFailure;
  std::cout << "verified " << d.dimension() << "x" << d.dimension() << " over "
            << d.field().to_string() << "\n";
  return kOk;
}

int cmd_rips(const RunConfig& cfg) {
  PointCloud pc = parse_points(read_input(cfg.input));
  std::cout << write_complex(vietoris_rips(pc, cfg.max_dim, radius_of(cfg)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact persistence canonical forms, barcodes and decompositions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "q, zp or zp:<p>")->default_val("q");
    sub->add_option("--prime", cfg.prime, "prime for --field zp")->default_val(2);
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "input file, - for stdin")->default_val("-");
  };
  auto add_complex = [&](CLI::App* sub) {
    sub->add_option("--ordering", cfg.ordering, "adapted basis order")
        ->check(CLI::IsMember({"degree", "level"}))
        ->default_val("degree");
    sub->add_flag("--close", cfg.close, "insert missing faces at the earliest coface level");
  };
  auto add_rips = [&](CLI::App* sub) {
    sub->add_option("--max-dim", cfg.max_dim, "largest simplex dimension")
        ->check(CLI::NonNegativeNumber)
        ->default_val(2);
    sub->add_option("--max-radius", cfg.max_radius, "radius bound, unbounded when absent");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "print Dcanon, B and P");
  add_input(reduce);
  add_field(reduce);
  add_complex(reduce);
  reduce->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
  reduce->add_flag("--emit-certificate", cfg.emit_certificate, "also print D, R, V and Vhat");

  CLI::App* bars = app.add_subcommand("barcodes", "print the barcode");
  CLI::App* dec = app.add_subcommand("decompose", "list the indecomposable summands");
  for (CLI::App* sub : {bars, dec}) {
    add_input(sub);
    add_field(sub);
    add_complex(sub);
    add_rips(sub);
    sub->add_flag("--points", cfg.points, "input is a point cloud; build its Rips complex");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}));
  }
  bars->add_flag("--drop-empty,!--keep-empty", cfg.drop_empty,
                 "omit bars that are born and die at the same level")
      ->default_val(true);

  CLI::App* verify = app.add_subcommand("verify", "reduce and cross-check with the oracles");
  add_input(verify);
  verify->add_option("--certificate", cfg.certificate, "check a saved reduce output instead");
  verify->add_option("--exhaustive", cfg.exhaustive,
                     "check every square-zero matrix over zp:2 up to this size");

  CLI::App* rips = app.add_subcommand("rips", "print the Rips filtration of a point cloud");
  add_input(rips);
  add_rips(rips);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*reduce) return cmd_reduce(cfg);
    if (*bars) return cmd_barcodes(cfg);
    if (*dec) return cmd_decompose(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_rips(cfg);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const CanonicalFormViolation& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
