#pragma once

#include <complex>

#include <Eigen/Core>

namespace blochcp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Practical qubit cap: density matrices up to 16x16, Choi matrices and sign
// tables up to 256x256. Exhaustive verification stays cheap below this.
inline constexpr int kMaxQubits = 4;

// Absolute tolerance for entrywise matrix comparisons.
inline constexpr double kDefaultTol = 1e-10;

// Complete-positivity threshold: a channel is declared CP when the minimum
// Choi eigenvalue (or minimum beta component) is >= -kDefaultCpTol. Channels
// on the boundary of the CP region therefore count as CP. Choi entries are
// O(1) for trace-normalized channels, so an absolute threshold is adequate.
inline constexpr double kDefaultCpTol = 1e-9;

// Smallest/largest Gram singular value ratio below which operator elements
// are reported as linearly dependent.
inline constexpr double kDefaultRankTol = 1e-8;

// Throws std::invalid_argument for n < 1, std::length_error for n > kMaxQubits.
void check_qubit_count(int n);

// 2^n
int qubit_dim(int n);

// 4^n, the number of basis elements (and the Choi dimension).
int basis_size(int n);

double max_abs(const ComplexMatrix& m);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTol);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

// tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace blochcp
