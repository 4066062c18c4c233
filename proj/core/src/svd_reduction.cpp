#include "blochcp/svd_reduction.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "blochcp/pauli_basis.hpp"

namespace blochcp {
namespace {

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

// Shepperd's extraction: branch on the largest of the four squared
// components so no division picks up cancellation error.
Quaternion quaternion_from_rotation(const Eigen::Matrix3d& r) {
  const double t = r.trace();
  Quaternion q;
  if (t >= r(0, 0) && t >= r(1, 1) && t >= r(2, 2)) {
    const double s = std::sqrt(1.0 + t) * 2.0;
    q.w = s / 4.0;
    q.x = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 2) - r(2, 0)) / s;
    q.z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + 2.0 * r(0, 0) - t) * 2.0;
    q.x = s / 4.0;
    q.w = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + 2.0 * r(1, 1) - t) * 2.0;
    q.y = s / 4.0;
    q.w = (r(0, 2) - r(2, 0)) / s;
    q.x = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + 2.0 * r(2, 2) - t) * 2.0;
    q.z = s / 4.0;
    q.w = (r(1, 0) - r(0, 1)) / s;
    q.x = (r(0, 2) + r(2, 0)) / s;
    q.y = (r(1, 2) + r(2, 1)) / s;
  }
  const double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  q.w /= norm;
  q.x /= norm;
  q.y /= norm;
  q.z /= norm;
  if (q.w < 0.0 ||
      (q.w == 0.0 && [&] {
        const double ax = std::abs(q.x), ay = std::abs(q.y),
                     az = std::abs(q.z);
        if (ax >= ay && ax >= az) return q.x < 0.0;
        if (ay >= az) return q.y < 0.0;
        return q.z < 0.0;
      }())) {
    q.w = -q.w;
    q.x = -q.x;
    q.y = -q.y;
    q.z = -q.z;
  }
  return q;
}

}  // namespace

Eigen::Matrix3d RotationFactorization::reassemble() const {
  return b * d.asDiagonal() * a;
}

double RotationFactorization::residual() const {
  return (reassemble() - m).cwiseAbs().maxCoeff();
}

RotationFactorization signed_svd(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  Eigen::Vector3d d = svd.singularValues();
  // Repair improper factors: flipping the last column of an orthogonal
  // matrix negates its determinant, at the cost of negating the smallest
  // singular value.
  if (u.determinant() < 0.0) {
    u.col(2) *= -1.0;
    d[2] = -d[2];
  }
  if (v.determinant() < 0.0) {
    v.col(2) *= -1.0;
    d[2] = -d[2];
  }
  RotationFactorization out;
  out.m = m;
  out.a = v.transpose();
  if (m.determinant() < -kDetBranchTol) {
    // Fold a half-turn about the third axis into b so the diagonal becomes
    // (-s1, -s2, -s3).
    u.col(0) *= -1.0;
    u.col(1) *= -1.0;
    d[0] = -d[0];
    d[1] = -d[1];
  }
  out.b = u;
  out.d = d;
  return out;
}

UnitaryLift rotation_to_unitary(const Eigen::Matrix3d& r, double ortho_tol) {
  const Eigen::Matrix3d gram = r.transpose() * r;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > ortho_tol) {
    throw std::invalid_argument("rotation lift needs an orthogonal matrix");
  }
  if (r.determinant() < 0.0) {
    throw std::invalid_argument(
        "rotation lift needs a proper rotation, got determinant -1");
  }
  const Quaternion q = quaternion_from_rotation(r);
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << q.w - i * q.z, -i * q.x - q.y,
       -i * q.x + q.y, q.w + i * q.z;
  return UnitaryLift{r, u};
}

DiagonalVerdict is_unital_quantum_operation(const Eigen::Matrix3d& m,
                                            double tol) {
  const RotationFactorization f = signed_svd(m);
  return is_cp_diagonal(DiagonalSpec(1, f.d), tol);
}

SignedOperatorSum decompose_unital(const Eigen::Matrix3d& m) {
  const RotationFactorization f = signed_svd(m);
  const Eigen::Matrix2cd ub = rotation_to_unitary(f.b).u;
  const Eigen::Matrix2cd ua = rotation_to_unitary(f.a).u;
  const BetaVector betas = af_betas(DiagonalSpec(1, f.d));
  std::vector<SignedOperatorSum::Term> terms;
  terms.reserve(4);
  for (int j = 0; j < 4; ++j) {
    terms.push_back({betas[j], ub * pauli(j) * ua});
  }
  return SignedOperatorSum(1, std::move(terms));
}

}  // namespace blochcp
