#include "blochcp/bloch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "blochcp/pauli_basis.hpp"

namespace blochcp {

BlochVector::BlochVector(int qubits, RealVector coords)
    : n(qubits), r(std::move(coords)) {
  check_qubit_count(n);
  const int expected = basis_size(n) - 1;
  if (r.size() != expected) {
    throw std::invalid_argument(
        "Bloch vector for " + std::to_string(n) + " qubits needs " +
        std::to_string(expected) + " coordinates, got " +
        std::to_string(r.size()));
  }
}

double bloch_scale(int n) {
  const double dim = qubit_dim(n);
  return std::sqrt(dim * (dim - 1.0) / 2.0);
}

ComplexMatrix density_from_bloch(const BlochVector& v) {
  const int dim = qubit_dim(v.n);
  const double c = bloch_scale(v.n);
  ComplexMatrix rho = ComplexMatrix::Identity(dim, dim);
  const auto basis = basis_matrices(v.n);
  for (int i = 0; i < v.r.size(); ++i) {
    if (v.r[i] != 0.0) rho += (c * v.r[i]) * basis[i + 1];
  }
  return rho / static_cast<double>(dim);
}

BlochVector bloch_from_density(const ComplexMatrix& rho, int n,
                               double trace_tol) {
  const int dim = qubit_dim(n);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix has wrong dimension for " +
                                std::to_string(n) + " qubits");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > trace_tol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  if (!is_hermitian(rho, trace_tol)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const double c = bloch_scale(n);
  const int size = basis_size(n);
  RealVector r(size - 1);
  for (int i = 1; i < size; ++i) {
    // tr(lambda_i rho) = 2 c r_i / N, so r_i = N tr(lambda_i rho) / (2 c).
    const Complex t = trace_product(basis_element(n, i).matrix, rho);
    r[i - 1] = dim * t.real() / (2.0 * c);
  }
  return BlochVector(n, std::move(r));
}

double purity(const BlochVector& v) {
  const double dim = qubit_dim(v.n);
  return 1.0 / dim + (1.0 - 1.0 / dim) * v.r.squaredNorm();
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("positivity test needs a square matrix");
  }
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("positivity test needs a Hermitian matrix");
  }
  if (m.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

bool is_density_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) return false;
  return is_positive_semidefinite(m, tol);
}

}  // namespace blochcp
