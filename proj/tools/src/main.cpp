#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Eigenvalues>

#include "blochcp/bloch.hpp"
#include "blochcp/channels.hpp"
#include "blochcp/diagonal_af.hpp"
#include "blochcp/pauli_basis.hpp"
#include "blochcp/spec_io.hpp"
#include "blochcp/svd_reduction.hpp"
#include "blochcp/types.hpp"

namespace {

using namespace blochcp;
using nlohmann::json;

// Verdicts whose margin lies within this band of zero are labeled boundary;
// criterion/oracle agreement is not enforced there, since the two margins
// differ by a factor of two and tolerance-edge flips are expected.
constexpr double kBoundaryBand = 1e-7;

constexpr int kExitNotCp = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInconsistent = 3;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double uniform01(std::mt19937_64& gen) { return (gen() >> 11) * 0x1.0p-53; }

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

json json_real_vector(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json json_real_matrix(const RealMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json json_complex_matrix(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    out.push_back(row);
  }
  return out;
}

json json_terms(const SignedOperatorSum& ch) {
  json out = json::array();
  for (const auto& term : ch.terms()) {
    out.push_back({{"weight", term.weight},
                   {"element", json_complex_matrix(term.element)}});
  }
  return out;
}

void print_complex_matrix(const ComplexMatrix& m, const char* indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::printf("%s", indent);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::printf("(%+.6g%+.6gi) ", m(i, j).real(), m(i, j).imag());
    }
    std::printf("\n");
  }
}

void print_real_matrix(const RealMatrix& m, const char* indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::printf("%s", indent);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::printf("%+.10g ", m(i, j));
    }
    std::printf("\n");
  }
}

void write_json_report(const std::string& path, const json& report) {
  std::ofstream out(path);
  out << report.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write report to " + path);
}

SignedOperatorSum channel_from_spec(const ChannelSpecFile& spec) {
  switch (spec.kind) {
    case SpecKind::diagonal:
      return kraus_from_spec(*spec.diagonal);
    case SpecKind::bloch_matrix:
      return decompose_unital(*spec.matrix);
    case SpecKind::operator_sum:
      return *spec.operator_sum;
  }
  throw std::logic_error("unreachable spec kind");
}

// Bloch rotation realized by conjugation with u, for lift self-checks.
Eigen::Matrix3d rotation_of_unitary(const Eigen::Matrix2cd& u) {
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) =
          trace_product(pauli(i + 1), u * pauli(j + 1) * u.adjoint()).real() /
          2.0;
    }
  }
  return r;
}

int run_check(const std::string& path, double tol, bool oracle,
              const std::string& out_path) {
  const ChannelSpecFile spec = load_channel_spec(path);
  const auto start = std::chrono::steady_clock::now();
  json report{{"command", "check"},
              {"input", path},
              {"kind", kind_name(spec.kind)},
              {"n", spec.n},
              {"tol", tol}};

  bool is_cp = false;
  bool boundary = false;
  bool disagree = false;

  std::printf("kind: %s (n=%d)\n", kind_name(spec.kind), spec.n);

  if (spec.kind == SpecKind::operator_sum) {
    // The sign criterion needs linearly independent elements; the verdict
    // itself always comes from the Choi spectrum here.
    const CpReport r = certify(*spec.operator_sum, tol);
    is_cp = r.is_cp;
    boundary = std::abs(r.min_choi_eigenvalue) <= kBoundaryBand;
    double min_weight = 0.0;
    for (const auto& term : spec.operator_sum->terms()) {
      min_weight = std::min(min_weight, term.weight);
    }
    report["criterion"] = {
        {"name", "weight_signs"},
        {"applicable", r.elements_independent},
        {"all_weights_nonnegative",
         r.sign_verdict ? json(*r.sign_verdict) : json(nullptr)},
        {"min_weight", min_weight}};
    report["oracle"] = {{"enabled", true},
                        {"min_choi_eigenvalue", r.min_choi_eigenvalue},
                        {"is_cp", r.is_cp},
                        {"agrees", !r.sign_verdict || *r.sign_verdict == is_cp}};
    report["trace_preserving"] = r.is_trace_preserving;
    report["unital"] = r.is_unital;
    if (r.sign_verdict && *r.sign_verdict != is_cp && !boundary) {
      disagree = true;
    }
    std::printf("terms: %zu\n", spec.operator_sum->terms().size());
    std::printf("trace preserving: %s, unital: %s\n",
                r.is_trace_preserving ? "yes" : "no",
                r.is_unital ? "yes" : "no");
    if (r.sign_verdict) {
      std::printf("sign criterion: %s\n", *r.sign_verdict
                                              ? "all weights nonnegative"
                                              : "a weight is negative");
    } else {
      std::printf("sign criterion: not applicable (dependent elements)\n");
    }
    std::printf("min Choi eigenvalue: %.17g\n", r.min_choi_eigenvalue);
  } else {
    RealVector d;
    RealMatrix bloch;
    if (spec.kind == SpecKind::diagonal) {
      d = spec.diagonal->d;
      bloch = RealMatrix(d.asDiagonal());
      report["criterion"]["name"] = "beta_nonneg";
    } else {
      const RotationFactorization f = signed_svd(*spec.matrix);
      d = f.d;
      bloch = *spec.matrix;
      report["criterion"]["name"] = "signed_svd_beta";
      report["criterion"]["d"] = json_real_vector(d);
      std::printf("signed diagonal: %.17g %.17g %.17g\n", d[0], d[1], d[2]);
    }
    const DiagonalVerdict v =
        is_cp_diagonal(DiagonalSpec(spec.n, d), tol);
    is_cp = v.is_cp;
    const double margin = v.min_beta();
    boundary = std::abs(margin) <= kBoundaryBand;
    report["criterion"]["min_beta"] = margin;
    report["criterion"]["betas"] = json_real_vector(v.betas);
    std::printf("criterion: min beta = %.17g\n", margin);
    if (v.betas.size() <= 16) {
      std::printf("betas:");
      for (Eigen::Index i = 0; i < v.betas.size(); ++i) {
        std::printf(" %.17g", v.betas[i]);
      }
      std::printf("\n");
    }
    if (oracle) {
      const double min_eig = min_eigenvalue(choi_from_bloch_matrix(bloch, spec.n));
      const bool oracle_cp = min_eig >= -tol;
      const bool agrees = oracle_cp == is_cp;
      disagree = !agrees && !boundary;
      report["oracle"] = {{"enabled", true},
                          {"min_choi_eigenvalue", min_eig},
                          {"is_cp", oracle_cp},
                          {"agrees", agrees}};
      std::printf("oracle: min Choi eigenvalue = %.17g (%s)\n", min_eig,
                  agrees ? "agrees" : "DISAGREES");
    } else {
      report["oracle"] = {{"enabled", false}};
    }
  }

  report["is_cp"] = is_cp;
  report["boundary"] = boundary;
  report["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  std::printf("verdict: %s%s\n",
              is_cp ? "quantum operation" : "not a quantum operation",
              boundary ? " (boundary)" : "");
  if (!out_path.empty()) write_json_report(out_path, report);
  if (disagree) {
    std::fprintf(stderr,
                 "error: criterion and oracle disagree outside the boundary "
                 "band\n");
    return kExitInconsistent;
  }
  return is_cp ? 0 : kExitNotCp;
}

int run_kraus(const std::string& path, double tol, bool fold,
              const std::string& out_path) {
  const ChannelSpecFile spec = load_channel_spec(path);
  SignedOperatorSum ch = channel_from_spec(spec);
  bool folded_tp = false;
  if (fold) {
    double min_weight = 0.0;
    for (const auto& term : ch.terms()) {
      min_weight = std::min(min_weight, term.weight);
    }
    if (min_weight < -tol) {
      std::fprintf(stderr,
                   "error: weight %.17g is negative; the map is not a quantum "
                   "operation and its weights cannot be folded\n",
                   min_weight);
      return kExitNotCp;
    }
    std::vector<SignedOperatorSum::Term> clamped;
    clamped.reserve(ch.terms().size());
    for (const auto& term : ch.terms()) {
      clamped.push_back({std::max(term.weight, 0.0), term.element});
    }
    ch = fold_weights(SignedOperatorSum(ch.qubit_count(), std::move(clamped)));
    folded_tp = is_trace_preserving(ch);
  }
  std::printf("kind: %s (n=%d), %zu term(s)%s\n", kind_name(spec.kind), spec.n,
              ch.terms().size(), fold ? ", weights folded" : "");
  int index = 0;
  for (const auto& term : ch.terms()) {
    std::printf("term %d: weight %.17g\n", index++, term.weight);
    print_complex_matrix(term.element, "  ");
  }
  if (fold) {
    std::printf("sum of K^dagger K equals identity: %s\n",
                folded_tp ? "yes" : "no");
  }
  if (!out_path.empty()) {
    json report{{"command", "kraus"},  {"input", path},
                {"kind", kind_name(spec.kind)}, {"n", spec.n},
                {"folded", fold},      {"terms", json_terms(ch)}};
    if (fold) report["trace_preserving"] = folded_tp;
    write_json_report(out_path, report);
  }
  return 0;
}

int run_sweep(int n, int grid, long random_count, std::uint64_t seed,
              double tol, bool oracle, const std::string& out_path) {
  check_qubit_count(n);
  if ((grid > 0) == (random_count > 0)) {
    std::fprintf(stderr, "error: choose exactly one of --grid or --random\n");
    return kExitBadInput;
  }
  if (grid > 0 && n != 1) {
    std::fprintf(stderr, "error: grid sweeps are single qubit; use --random "
                         "for more qubits\n");
    return kExitBadInput;
  }
  if (grid == 1) {
    std::fprintf(stderr, "error: --grid needs at least 2 points per axis\n");
    return kExitBadInput;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return kExitBadInput;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  const int axes = basis_size(n) - 1;
  for (int i = 0; i < axes; ++i) out << "d" << (i + 1) << ",";
  out << "min_beta,is_cp,label,min_choi_eigenvalue,agrees\n";

  long total = 0, cp_count = 0, boundary_count = 0, disagreements = 0;
  std::mt19937_64 gen(seed);

  const auto emit = [&](const RealVector& d) {
    const DiagonalSpec spec(n, d);
    const BetaVector betas = af_betas(spec);
    const double margin = betas.minCoeff();
    const bool is_cp = margin >= -tol;
    const bool boundary = std::abs(margin) <= kBoundaryBand;
    const char* label = boundary ? "boundary" : (is_cp ? "cp" : "not_cp");
    for (int i = 0; i < axes; ++i) out << fmt(d[i]) << ",";
    out << fmt(margin) << "," << (is_cp ? 1 : 0) << "," << label << ",";
    if (oracle) {
      const double min_eig =
          min_eigenvalue(choi_from_bloch_matrix(RealMatrix(d.asDiagonal()), n));
      const bool agrees = (min_eig >= -tol) == is_cp;
      if (!agrees && !boundary) ++disagreements;
      out << fmt(min_eig) << "," << (agrees ? 1 : 0) << "\n";
    } else {
      out << ",\n";
    }
    ++total;
    if (is_cp) ++cp_count;
    if (boundary) ++boundary_count;
  };

  if (grid > 0) {
    RealVector d(3);
    for (int k1 = 0; k1 < grid; ++k1) {
      d[0] = -1.0 + 2.0 * k1 / (grid - 1);
      for (int k2 = 0; k2 < grid; ++k2) {
        d[1] = -1.0 + 2.0 * k2 / (grid - 1);
        for (int k3 = 0; k3 < grid; ++k3) {
          d[2] = -1.0 + 2.0 * k3 / (grid - 1);
          emit(d);
        }
      }
    }
  } else {
    RealVector d(axes);
    for (long s = 0; s < random_count; ++s) {
      for (int i = 0; i < axes; ++i) d[i] = 2.0 * uniform01(gen) - 1.0;
      emit(d);
    }
  }

  std::fprintf(stderr,
               "swept %ld map(s): %ld cp, %ld in boundary band, %ld "
               "disagreement(s)\n",
               total, cp_count, boundary_count, disagreements);
  return disagreements > 0 ? kExitInconsistent : 0;
}

int run_factor(const std::string& path, const std::string& out_path) {
  const ChannelSpecFile spec = load_channel_spec(path);
  if (spec.kind != SpecKind::bloch_matrix) {
    std::fprintf(stderr,
                 "error: factor needs a bloch_matrix_3x3 spec, got %s\n",
                 kind_name(spec.kind));
    return kExitBadInput;
  }
  const RotationFactorization f = signed_svd(*spec.matrix);
  const UnitaryLift lift_b = rotation_to_unitary(f.b);
  const UnitaryLift lift_a = rotation_to_unitary(f.a);

  const double lift_residual =
      std::max((rotation_of_unitary(lift_b.u) - f.b).cwiseAbs().maxCoeff(),
               (rotation_of_unitary(lift_a.u) - f.a).cwiseAbs().maxCoeff());
  if (f.residual() > 1e-8 || lift_residual > 1e-8) {
    std::fprintf(stderr,
                 "error: factorization self-check failed (reassembly %.3g, "
                 "lift %.3g)\n",
                 f.residual(), lift_residual);
    return kExitInconsistent;
  }

  std::printf("determinant: %.17g\n", spec.matrix->determinant());
  std::printf("b (proper rotation):\n");
  print_real_matrix(f.b, "  ");
  std::printf("d (signed diagonal): %.17g %.17g %.17g\n", f.d[0], f.d[1],
              f.d[2]);
  std::printf("a (proper rotation):\n");
  print_real_matrix(f.a, "  ");
  std::printf("reassembly residual: %.3g\n", f.residual());
  std::printf("u_b (special unitary lift of b):\n");
  print_complex_matrix(lift_b.u, "  ");
  std::printf("u_a (special unitary lift of a):\n");
  print_complex_matrix(lift_a.u, "  ");

  if (!out_path.empty()) {
    write_json_report(out_path,
                      json{{"command", "factor"},
                           {"input", path},
                           {"determinant", spec.matrix->determinant()},
                           {"b", json_real_matrix(f.b)},
                           {"d", json_real_vector(f.d)},
                           {"a", json_real_matrix(f.a)},
                           {"residual", f.residual()},
                           {"u_b", json_complex_matrix(lift_b.u)},
                           {"u_a", json_complex_matrix(lift_a.u)}});
  }
  return 0;
}

int run_choi(const std::string& path, double tol,
             const std::string& out_path) {
  const ChannelSpecFile spec = load_channel_spec(path);
  const SignedOperatorSum ch = channel_from_spec(spec);
  const ComplexMatrix choi = choi_matrix(ch);
  const double min_eig = min_eigenvalue(choi);
  const bool is_cp = min_eig >= -tol;
  std::printf("kind: %s (n=%d)\n", kind_name(spec.kind), spec.n);
  std::printf("Choi matrix (%ldx%ld):\n", static_cast<long>(choi.rows()),
              static_cast<long>(choi.cols()));
  print_complex_matrix(choi, "  ");
  std::printf("min eigenvalue: %.17g\n", min_eig);
  std::printf("verdict: %s\n",
              is_cp ? "quantum operation" : "not a quantum operation");
  if (!out_path.empty()) {
    write_json_report(out_path, json{{"command", "choi"},
                                     {"input", path},
                                     {"kind", kind_name(spec.kind)},
                                     {"n", spec.n},
                                     {"tol", tol},
                                     {"min_eigenvalue", min_eig},
                                     {"is_cp", is_cp},
                                     {"matrix", json_complex_matrix(choi)}});
  }
  return is_cp ? 0 : kExitNotCp;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certify Bloch-representation superoperators as quantum operations"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  double tol = kDefaultCpTol;
  bool oracle = true;
  bool fold = false;
  int sweep_n = 1;
  int grid = 0;
  long random_count = 0;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand(
      "check", "Decide whether a channel is a quantum operation");
  check->add_option("file", file, "channel spec (JSON)")->required();
  check->add_option("--tol", tol, "complete-positivity tolerance")
      ->capture_default_str();
  check->add_flag("--oracle,!--no-oracle", oracle,
                  "cross-check against the independent Choi oracle");
  check->add_option("--out", out_path, "write a JSON report");

  auto* kraus = app.add_subcommand(
      "kraus", "Emit an operator-sum decomposition of the channel");
  kraus->add_option("file", file, "channel spec (JSON)")->required();
  kraus->add_option("--tol", tol, "complete-positivity tolerance")
      ->capture_default_str();
  kraus->add_flag("--fold-weights", fold,
                  "scale elements by sqrt(weight); fails on negative weights");
  kraus->add_option("--out", out_path, "write the terms as JSON");

  auto* sweep = app.add_subcommand(
      "sweep", "Scan diagonal channels and report CP verdicts as CSV");
  sweep->add_option("--n", sweep_n, "qubit count")->capture_default_str();
  sweep->add_option("--grid", grid,
                    "points per axis of a [-1,1]^3 grid (single qubit)");
  sweep->add_option("--random", random_count,
                    "number of uniform samples from [-1,1]^(4^n-1)");
  sweep->add_option("--seed", seed, "sampling seed")->capture_default_str();
  sweep->add_option("--tol", tol, "complete-positivity tolerance")
      ->capture_default_str();
  sweep->add_flag("--oracle,!--no-oracle", oracle,
                  "cross-check each verdict against the Choi oracle");
  sweep->add_option("--out", out_path, "write the CSV here instead of stdout");

  auto* factor = app.add_subcommand(
      "factor", "Factor a 3x3 Bloch matrix into rotations and a signed "
                "diagonal, with special unitary lifts");
  factor->add_option("file", file, "bloch_matrix spec (JSON)")->required();
  factor->add_option("--out", out_path, "write a JSON report");

  auto* choi = app.add_subcommand(
      "choi", "Print the Choi matrix and its minimum eigenvalue");
  choi->add_option("file", file, "channel spec (JSON)")->required();
  choi->add_option("--tol", tol, "complete-positivity tolerance")
      ->capture_default_str();
  choi->add_option("--out", out_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*check) return run_check(file, tol, oracle, out_path);
    if (*kraus) return run_kraus(file, tol, fold, out_path);
    if (*sweep)
      return run_sweep(sweep_n, grid, random_count, seed, tol, oracle,
                       out_path);
    if (*factor) return run_factor(file, out_path);
    if (*choi) return run_choi(file, tol, out_path);
  } catch (const SpecParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  }
  return kExitBadInput;
}
