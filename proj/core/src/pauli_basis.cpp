#include "blochcp/pauli_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blochcp {

Eigen::Matrix2cd pauli(int index) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (index) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -i, i, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli index must be 0..3, got " +
                                  std::to_string(index));
  }
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double basis_normalization(int n) {
  check_qubit_count(n);
  return 1.0 / std::sqrt(static_cast<double>(1 << (n - 1)));
}

BasisElement basis_element(int n, int index) {
  const int size = basis_size(n);
  if (index < 0 || index >= size) {
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(n) +
                                " qubits");
  }
  BasisElement elem;
  elem.n = n;
  elem.index = index;
  elem.digits.resize(n);
  for (int q = n - 1; q >= 0; --q) {
    elem.digits[q] = (index >> (2 * (n - 1 - q))) & 3;
  }
  ComplexMatrix m = pauli(elem.digits[0]);
  for (int q = 1; q < n; ++q) {
    m = tensor(m, pauli(elem.digits[q]));
  }
  elem.matrix = basis_normalization(n) * m;
  return elem;
}

std::vector<ComplexMatrix> basis_matrices(int n) {
  const int size = basis_size(n);
  std::vector<ComplexMatrix> out;
  out.reserve(size);
  for (int i = 0; i < size; ++i) {
    out.push_back(basis_element(n, i).matrix);
  }
  return out;
}

SignTable sign_table(int n) {
  check_qubit_count(n);
  Eigen::Matrix4i c;
  c << 1, 1, 1, 1,
       1, 1, -1, -1,
       1, -1, 1, -1,
       1, -1, -1, 1;
  Eigen::MatrixXi table = c;
  for (int q = 1; q < n; ++q) {
    const Eigen::MatrixXi prev = table;
    table.resize(prev.rows() * 4, prev.cols() * 4);
    for (Eigen::Index i = 0; i < prev.rows(); ++i) {
      for (Eigen::Index j = 0; j < prev.cols(); ++j) {
        table.block(i * 4, j * 4, 4, 4) = prev(i, j) * c;
      }
    }
  }
  return SignTable{n, std::move(table)};
}

}  // namespace blochcp
