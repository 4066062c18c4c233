#pragma once

#include <Eigen/Core>

#include "blochcp/types.hpp"

namespace blochcp {

// Generalized Bloch vector of an n-qubit state: the 4^n - 1 real coordinates
// r with rho = (1/N) (I + c * sum_i r_i lambda_i), N = 2^n and
// c = sqrt(N (N-1) / 2). Pure states have |r| = 1.
struct BlochVector {
  int n = 0;
  RealVector r;

  BlochVector(int qubits, RealVector coords);
};

// The scale factor c = sqrt(N (N-1) / 2).
double bloch_scale(int n);

ComplexMatrix density_from_bloch(const BlochVector& v);

// Inverse map; requires tr(rho) = 1 and rho = rho^dagger within trace_tol.
// Positivity is not required, so the map is usable on Bloch images of
// non-positive Hermitian operators as well.
BlochVector bloch_from_density(const ComplexMatrix& rho, int n,
                               double trace_tol = 1e-8);

// tr(rho^2) computed from the Bloch coordinates: 1/N + (1 - 1/N) |r|^2.
double purity(const BlochVector& v);

// Hermitian positive semidefinite test via eigenvalues; throws
// std::invalid_argument when m is not Hermitian within tol.
bool is_positive_semidefinite(const ComplexMatrix& m,
                              double tol = kDefaultCpTol);

bool is_density_matrix(const ComplexMatrix& m, double tol = kDefaultCpTol);

}  // namespace blochcp
