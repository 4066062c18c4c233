#include "blochcp/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "blochcp/pauli_basis.hpp"

namespace blochcp {
namespace {

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

}  // namespace

SignedOperatorSum::SignedOperatorSum(int n, std::vector<Term> terms)
    : n_(n), dim_(qubit_dim(n)) {
  terms_.reserve(terms.size());
  for (auto& term : terms) {
    if (term.element.rows() != dim_ || term.element.cols() != dim_) {
      throw std::invalid_argument(
          "operator element must be " + std::to_string(dim_) + "x" +
          std::to_string(dim_) + " for " + std::to_string(n_) + " qubits");
    }
    if (!std::isfinite(term.weight)) {
      throw std::invalid_argument("operator weight must be finite");
    }
    if (term.weight == 0.0 || max_abs(term.element) == 0.0) continue;
    terms_.push_back(std::move(term));
  }
}

ComplexMatrix apply_channel(const SignedOperatorSum& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
    throw std::invalid_argument("state has wrong dimension for channel");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& term : ch.terms()) {
    out += term.weight * (term.element * rho * term.element.adjoint());
  }
  return out;
}

ComplexMatrix choi_matrix(const SignedOperatorSum& ch) {
  const int d2 = ch.dim() * ch.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(d2, d2);
  for (const auto& term : ch.terms()) {
    const ComplexVector v = vec(term.element);
    choi.noalias() += term.weight * (v * v.adjoint());
  }
  return choi;
}

ComplexMatrix choi_from_bloch_matrix(const RealMatrix& m, int n) {
  const int dim = qubit_dim(n);
  const int size = basis_size(n) - 1;
  if (m.rows() != size || m.cols() != size) {
    throw std::invalid_argument("Bloch matrix must be " +
                                std::to_string(size) + "x" +
                                std::to_string(size) + " for " +
                                std::to_string(n) + " qubits");
  }
  const auto basis = basis_matrices(n);
  ComplexMatrix choi = ComplexMatrix::Zero(dim * dim, dim * dim);
  ComplexVector coords(size);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      // Coordinates of the matrix unit E_jk: tr(lambda_q E_jk) = lambda_q(k,j).
      for (int q = 0; q < size; ++q) coords[q] = basis[q + 1](k, j);
      const ComplexVector image_coords = m.cast<Complex>() * coords;
      ComplexMatrix image = ComplexMatrix::Zero(dim, dim);
      if (j == k) {
        image = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
      }
      for (int p = 0; p < size; ++p) {
        image += (0.5 * image_coords[p]) * basis[p + 1];
      }
      choi.block(j * dim, k * dim, dim, dim) = image;
    }
  }
  return choi;
}

CpVerdict is_completely_positive(const SignedOperatorSum& ch, double tol) {
  const ComplexMatrix choi = choi_matrix(ch);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      choi, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return CpVerdict{min_eig >= -tol, min_eig};
}

bool is_trace_preserving(const SignedOperatorSum& ch, double tol) {
  ComplexMatrix sum = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& term : ch.terms()) {
    sum.noalias() += term.weight * (term.element.adjoint() * term.element);
  }
  return approx_equal(sum, ComplexMatrix::Identity(ch.dim(), ch.dim()), tol);
}

bool is_unital(const SignedOperatorSum& ch, double tol) {
  ComplexMatrix sum = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& term : ch.terms()) {
    sum.noalias() += term.weight * (term.element * term.element.adjoint());
  }
  return approx_equal(sum, ComplexMatrix::Identity(ch.dim(), ch.dim()), tol);
}

bool elements_linearly_independent(const SignedOperatorSum& ch,
                                   double rank_tol) {
  const auto& terms = ch.terms();
  const int count = static_cast<int>(terms.size());
  if (count == 0) return true;
  if (count > ch.dim() * ch.dim()) return false;
  ComplexMatrix gram(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i; j < count; ++j) {
      const Complex g = vec(terms[i].element).dot(vec(terms[j].element));
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      gram, Eigen::EigenvaluesOnly);
  const double max_eig = solver.eigenvalues().maxCoeff();
  const double min_eig = solver.eigenvalues().minCoeff();
  if (max_eig <= 0.0) return false;
  return min_eig > rank_tol * max_eig;
}

std::optional<bool> sign_verdict(const SignedOperatorSum& ch,
                                 double rank_tol) {
  if (!elements_linearly_independent(ch, rank_tol)) return std::nullopt;
  for (const auto& term : ch.terms()) {
    if (term.weight < 0.0) return false;
  }
  return true;
}

RealMatrix bloch_matrix(const SignedOperatorSum& ch, double tol) {
  if (!is_trace_preserving(ch, tol)) {
    throw std::domain_error(
        "Bloch matrix requires a trace-preserving map");
  }
  if (!is_unital(ch, tol)) {
    throw std::domain_error("Bloch matrix requires a unital map");
  }
  const int n = ch.qubit_count();
  const auto basis = basis_matrices(n);
  const int size = basis_size(n) - 1;
  RealMatrix m(size, size);
  for (int j = 0; j < size; ++j) {
    const ComplexMatrix image = apply_channel(ch, basis[j + 1]);
    for (int i = 0; i < size; ++i) {
      m(i, j) = trace_product(basis[i + 1], image).real() / 2.0;
    }
  }
  return m;
}

CpReport certify(const SignedOperatorSum& ch, double tol, double rank_tol) {
  CpReport report;
  const CpVerdict cp = is_completely_positive(ch, tol);
  report.is_cp = cp.is_cp;
  report.min_choi_eigenvalue = cp.min_eigenvalue;
  report.is_trace_preserving = is_trace_preserving(ch);
  report.is_unital = is_unital(ch);
  report.elements_independent = elements_linearly_independent(ch, rank_tol);
  report.sign_verdict = sign_verdict(ch, rank_tol);
  return report;
}

SignedOperatorSum fold_weights(const SignedOperatorSum& ch) {
  std::vector<SignedOperatorSum::Term> terms;
  terms.reserve(ch.terms().size());
  for (const auto& term : ch.terms()) {
    if (term.weight < 0.0) {
      throw std::domain_error(
          "cannot fold a negative weight into an operator element");
    }
    terms.push_back({1.0, std::sqrt(term.weight) * term.element});
  }
  return SignedOperatorSum(ch.qubit_count(), std::move(terms));
}

}  // namespace blochcp
