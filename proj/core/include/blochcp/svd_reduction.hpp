#pragma once

#include <Eigen/Core>

#include "blochcp/channels.hpp"
#include "blochcp/diagonal_af.hpp"
#include "blochcp/types.hpp"

namespace blochcp {

// Determinants within this distance of zero take the nonnegative branch of
// the signed factorization, so near-singular inputs never flap between the
// two canonical forms.
inline constexpr double kDetBranchTol = 1e-12;

// A factorization m = b * diag(d) * a with b and a proper rotations.
// For det(m) >= -kDetBranchTol the diagonal holds the singular values in
// decreasing order (the last entry carries the sign of a strictly negative
// determinant); otherwise all entries are nonpositive and increasing.
struct RotationFactorization {
  Eigen::Matrix3d b;
  Eigen::Vector3d d;
  Eigen::Matrix3d a;
  Eigen::Matrix3d m;

  Eigen::Matrix3d reassemble() const;
  double residual() const;
};

RotationFactorization signed_svd(const Eigen::Matrix3d& m);

// An SU(2) element u whose conjugation action reproduces the rotation r:
// u sigma_j u^dagger = sum_i r(i,j) sigma_i, det(u) = 1. The lift is fixed
// deterministically among the double cover by taking a nonnegative trace
// (and, for trace zero, a positive leading axis component).
struct UnitaryLift {
  Eigen::Matrix3d r;
  Eigen::Matrix2cd u;
};

// Throws std::invalid_argument unless r is a proper rotation within
// ortho_tol.
UnitaryLift rotation_to_unitary(const Eigen::Matrix3d& r,
                                double ortho_tol = 1e-8);

// Complete-positivity test for the unital qubit map whose Bloch matrix is m,
// by reduction to the diagonal criterion: rotations act as unitary
// conjugations, so m passes exactly when its signed singular value triple
// does.
DiagonalVerdict is_unital_quantum_operation(const Eigen::Matrix3d& m,
                                            double tol = kDefaultCpTol);

// Signed operator-sum realization of the unital qubit map with Bloch matrix
// m: weights are the canonical diagonal weights of the middle factor and the
// elements are u_b sigma_j u_a with u_b, u_a the lifts of the rotation
// factors. All weights are nonnegative exactly when the map is completely
// positive.
SignedOperatorSum decompose_unital(const Eigen::Matrix3d& m);

}  // namespace blochcp
