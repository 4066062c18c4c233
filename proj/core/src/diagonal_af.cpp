#include "blochcp/diagonal_af.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "blochcp/pauli_basis.hpp"

namespace blochcp {

DiagonalSpec::DiagonalSpec(int qubits, RealVector scales)
    : n(qubits), d(std::move(scales)) {
  check_qubit_count(n);
  const int expected = basis_size(n) - 1;
  if (d.size() != expected) {
    throw std::invalid_argument(
        "diagonal spec for " + std::to_string(n) + " qubits needs " +
        std::to_string(expected) + " scale factors, got " +
        std::to_string(d.size()));
  }
  for (int i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) {
      throw std::invalid_argument("diagonal scale factors must be finite");
    }
  }
}

void sign_transform_inplace(RealVector& x) {
  const auto size = x.size();
  if (size == 0) return;
  Eigen::Index check = size;
  while (check > 1 && check % 4 == 0) check /= 4;
  if (check != 1) {
    throw std::invalid_argument("sign transform needs a power-of-4 length");
  }
  // Radix-4 butterfly for the Kronecker power of
  //   [ 1  1  1  1 ]
  //   [ 1  1 -1 -1 ]
  //   [ 1 -1  1 -1 ]
  //   [ 1 -1 -1  1 ].
  for (Eigen::Index stride = 1; stride < size; stride *= 4) {
    for (Eigen::Index block = 0; block < size; block += 4 * stride) {
      for (Eigen::Index k = 0; k < stride; ++k) {
        const double x0 = x[block + k];
        const double x1 = x[block + stride + k];
        const double x2 = x[block + 2 * stride + k];
        const double x3 = x[block + 3 * stride + k];
        x[block + k] = x0 + x1 + x2 + x3;
        x[block + stride + k] = x0 + x1 - x2 - x3;
        x[block + 2 * stride + k] = x0 - x1 + x2 - x3;
        x[block + 3 * stride + k] = x0 - x1 - x2 + x3;
      }
    }
  }
}

BetaVector af_betas(const DiagonalSpec& spec) {
  const int size = basis_size(spec.n);
  RealVector extended(size);
  extended[0] = 1.0;
  extended.tail(size - 1) = spec.d;
  sign_transform_inplace(extended);
  extended /= static_cast<double>(1 << (spec.n + 1));
  return extended;
}

DiagonalVerdict is_cp_diagonal(const DiagonalSpec& spec, double tol) {
  BetaVector betas = af_betas(spec);
  const bool cp = betas.minCoeff() >= -tol;
  return DiagonalVerdict{cp, std::move(betas)};
}

bool one_qubit_af_inequalities(double d1, double d2, double d3) {
  return 1.0 - d3 >= std::abs(d1 - d2) && 1.0 + d3 >= std::abs(d1 + d2);
}

bool one_qubit_positivity(double b0, double b1, double b2, double b3,
                          double tol) {
  const double b[4] = {b0, b1, b2, b3};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (b[i] + b[j] < -tol) return false;
    }
  }
  return true;
}

SignedOperatorSum kraus_from_spec(const DiagonalSpec& spec) {
  const BetaVector betas = af_betas(spec);
  const auto basis = basis_matrices(spec.n);
  std::vector<SignedOperatorSum::Term> terms;
  terms.reserve(basis.size());
  for (int j = 0; j < betas.size(); ++j) {
    terms.push_back({betas[j], basis[j]});
  }
  return SignedOperatorSum(spec.n, std::move(terms));
}

std::optional<DiagonalSpec> diagonal_from_channel(const SignedOperatorSum& ch,
                                                  double tol) {
  const RealMatrix m = bloch_matrix(ch, tol);
  const RealVector diag = m.diagonal();
  const double off = (m - RealMatrix(diag.asDiagonal())).cwiseAbs().maxCoeff();
  if (off > tol) return std::nullopt;
  return DiagonalSpec(ch.qubit_count(), diag);
}

}  // namespace blochcp
