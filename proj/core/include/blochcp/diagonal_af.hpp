#pragma once

#include <optional>
#include <vector>

#include "blochcp/channels.hpp"
#include "blochcp/types.hpp"

namespace blochcp {

// A diagonal unital map on n qubits, given by the 4^n - 1 scale factors d
// acting on the Bloch coordinates: Phi(lambda_i) = d_(i-1) lambda_i for
// i >= 1, with the identity fixed.
struct DiagonalSpec {
  int n = 0;
  RealVector d;

  DiagonalSpec(int qubits, RealVector scales);
};

using BetaVector = RealVector;

// In-place application of the n-fold Kronecker power of the sign table to a
// length-4^n vector, as a radix-4 butterfly. O(4^n n) instead of the dense
// O(16^n) product.
void sign_transform_inplace(RealVector& x);

// The canonical weights of a diagonal map: beta = F (1, d)^T / 2^(n+1) where
// F is the n-fold Kronecker power of the sign table. The map is completely
// positive exactly when every component is nonnegative, in which case
// Phi(rho) = sum_j beta_j lambda_j rho lambda_j.
BetaVector af_betas(const DiagonalSpec& spec);

struct DiagonalVerdict {
  bool is_cp = false;
  BetaVector betas;

  double min_beta() const { return betas.size() ? betas.minCoeff() : 0.0; }
};

DiagonalVerdict is_cp_diagonal(const DiagonalSpec& spec,
                               double tol = kDefaultCpTol);

// The one-qubit criterion in closed form:
// 1 - d3 >= |d1 - d2| and 1 + d3 >= |d1 + d2|. Equivalent to beta >= 0.
bool one_qubit_af_inequalities(double d1, double d2, double d3);

// Positivity (not complete positivity) of a one-qubit diagonal map with
// weights beta: all six pairwise sums beta_i + beta_j must be nonnegative.
bool one_qubit_positivity(double b0, double b1, double b2, double b3,
                          double tol = kDefaultCpTol);

// The operator-sum form sum_j beta_j lambda_j rho lambda_j as a signed
// operator sum (terms with beta_j = 0 are dropped by construction).
SignedOperatorSum kraus_from_spec(const DiagonalSpec& spec);

// Recover a DiagonalSpec from a channel whose Bloch matrix is diagonal
// within tol; nullopt when the Bloch matrix has off-diagonal structure.
// Throws std::domain_error when the channel is not unital/trace preserving.
std::optional<DiagonalSpec> diagonal_from_channel(const SignedOperatorSum& ch,
                                                  double tol = kDefaultTol);

}  // namespace blochcp
