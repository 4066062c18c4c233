#pragma once

#include <vector>

#include <Eigen/Core>

#include "blochcp/types.hpp"

namespace blochcp {

// Single-qubit Pauli matrix: 0 -> I, 1 -> sigma_x, 2 -> sigma_y, 3 -> sigma_z.
Eigen::Matrix2cd pauli(int index);

// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Normalization 1/sqrt(2^(n-1)) applied to each n-fold Pauli tensor so that
// tr(lambda_i lambda_j) = 2 delta_ij.
double basis_normalization(int n);

// One element of the normalized n-qubit Pauli basis. Elements are indexed
// 0 .. 4^n-1 by reading the Pauli word as a base-4 number, first qubit in
// the most significant digit; index 0 is the normalized identity.
struct BasisElement {
  int n = 0;
  int index = 0;
  std::vector<int> digits;  // Pauli letter per qubit, first qubit first.
  ComplexMatrix matrix;
};

BasisElement basis_element(int n, int index);

// All 4^n normalized basis matrices, in index order.
std::vector<ComplexMatrix> basis_matrices(int n);

// Conjugation signs of the single-qubit Pauli family:
// sigma_i sigma_j sigma_i = entries(i,j) * sigma_j with entries(i,j) = +-1.
// For n qubits the table is the n-fold Kronecker power, and
// lambda_i lambda_j lambda_i = entries(i,j) / 2^(n-1) * lambda_j.
struct SignTable {
  int n = 0;
  Eigen::MatrixXi entries;

  int operator()(int i, int j) const { return entries(i, j); }
  int size() const { return static_cast<int>(entries.rows()); }
};

SignTable sign_table(int n);

}  // namespace blochcp
