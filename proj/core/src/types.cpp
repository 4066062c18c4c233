#include "blochcp/types.hpp"

#include <stdexcept>
#include <string>

namespace blochcp {

void check_qubit_count(int n) {
  if (n < 1) {
    throw std::invalid_argument("qubit count must be positive, got " +
                                std::to_string(n));
  }
  if (n > kMaxQubits) {
    throw std::length_error("qubit count " + std::to_string(n) +
                            " exceeds supported maximum " +
                            std::to_string(kMaxQubits));
  }
}

int qubit_dim(int n) {
  check_qubit_count(n);
  return 1 << n;
}

int basis_size(int n) {
  check_qubit_count(n);
  return 1 << (2 * n);
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint().eval()) <= tol;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_product: incompatible shapes");
  }
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace blochcp
