#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "blochcp/bloch.hpp"
#include "blochcp/channels.hpp"
#include "blochcp/diagonal_af.hpp"
#include "blochcp/pauli_basis.hpp"
#include "blochcp/types.hpp"
#include "test_support.hpp"

using namespace blochcp;

namespace {

SignedOperatorSum identity_channel(int n) {
  const int dim = qubit_dim(n);
  return SignedOperatorSum(n, {{1.0, ComplexMatrix::Identity(dim, dim)}});
}

// Phi(rho) = rho^T realized with signed Pauli conjugations.
SignedOperatorSum transpose_channel() {
  std::vector<SignedOperatorSum::Term> terms;
  const double w[4] = {0.5, 0.5, -0.5, 0.5};
  for (int j = 0; j < 4; ++j) terms.push_back({w[j], pauli(j)});
  return SignedOperatorSum(1, std::move(terms));
}

// Independent reference: Choi blocks as images of the matrix units.
ComplexMatrix choi_by_blocks(const SignedOperatorSum& ch) {
  const int dim = ch.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(j, k) = 1.0;
      choi.block(j * dim, k * dim, dim, dim) = apply_channel(ch, unit);
    }
  }
  return choi;
}

SignedOperatorSum random_unital_channel(testing::Rng& rng, int n, int terms) {
  std::vector<SignedOperatorSum::Term> out;
  double total = 0.0;
  std::vector<double> weights(terms);
  for (int t = 0; t < terms; ++t) {
    weights[t] = rng.uniform01() + 0.05;
    total += weights[t];
  }
  for (int t = 0; t < terms; ++t) {
    // Mixture of tensor-product unitary conjugations: unital and TP.
    ComplexMatrix u = rng.special_unitary();
    for (int q = 1; q < n; ++q) u = tensor(u, rng.special_unitary());
    out.push_back({weights[t] / total, u});
  }
  return SignedOperatorSum(n, std::move(out));
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("construction drops null terms and validates shapes") {
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  SignedOperatorSum ch(1, {{0.0, pauli(1)}, {1.0, z}, {2.0, pauli(3)}});
  REQUIRE(ch.terms().size() == 1);
  CHECK(ch.terms()[0].weight == 2.0);
  CHECK_THROWS_AS(
      SignedOperatorSum(1, {{1.0, ComplexMatrix::Identity(4, 4)}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      SignedOperatorSum(1, {{std::nan(""), ComplexMatrix::Identity(2, 2)}}),
      std::invalid_argument);
  CHECK_THROWS_AS(SignedOperatorSum(5, {}), std::length_error);
}

TEST_CASE("identity channel basics") {
  const SignedOperatorSum ch = identity_channel(1);
  CHECK(is_trace_preserving(ch));
  CHECK(is_unital(ch));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK(approx_equal(choi_matrix(ch), expected, 0.0));
  const CpVerdict v = is_completely_positive(ch);
  CHECK(v.is_cp);
  CHECK(std::abs(v.min_eigenvalue) <= 1e-14);
}

TEST_CASE("transpose channel is the canonical non-CP fixture") {
  const SignedOperatorSum ch = transpose_channel();
  CHECK(is_trace_preserving(ch));
  CHECK(is_unital(ch));

  // Its action really is transposition.
  testing::Rng rng(11);
  const ComplexMatrix rho = 0.5 * (ComplexMatrix::Identity(2, 2) +
                                   0.3 * pauli(1) + 0.4 * pauli(2));
  CHECK(approx_equal(apply_channel(ch, rho), rho.transpose(), 1e-15));

  // Choi matrix is exactly the swap.
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK(approx_equal(choi_matrix(ch), swap, 0.0));

  const CpReport report = certify(ch);
  CHECK_FALSE(report.is_cp);
  CHECK(report.min_choi_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(report.elements_independent);
  REQUIRE(report.sign_verdict.has_value());
  CHECK_FALSE(*report.sign_verdict);
}

TEST_CASE("choi construction matches the block definition") {
  testing::Rng rng(12);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = qubit_dim(n);
      std::vector<SignedOperatorSum::Term> terms;
      for (int t = 0; t < 3; ++t) {
        terms.push_back({rng.uniform(-1.0, 1.0), rng.complex_matrix(dim, dim)});
      }
      const SignedOperatorSum ch(n, std::move(terms));
      CHECK(approx_equal(choi_matrix(ch), choi_by_blocks(ch), 1e-12));
    }
  }
}

TEST_CASE("choi_from_bloch_matrix agrees with the operator-sum route") {
  testing::Rng rng(13);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const SignedOperatorSum ch = random_unital_channel(rng, n, 3);
      const RealMatrix m = bloch_matrix(ch);
      CHECK(approx_equal(choi_from_bloch_matrix(m, n), choi_matrix(ch), 1e-10));
    }
  }
}

TEST_CASE("bloch matrix of a unitary conjugation is a proper rotation") {
  testing::Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix2cd u = rng.special_unitary();
    const SignedOperatorSum ch(1, {{1.0, u}});
    const RealMatrix m = bloch_matrix(ch);
    CHECK((m.transpose() * m - RealMatrix::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK(std::abs(m.determinant() - 1.0) <= 1e-12);
  }
}

TEST_CASE("bloch matrix refuses non-unital and non-trace-preserving maps") {
  const double gamma = 0.3;
  ComplexMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  const SignedOperatorSum damping(1, {{1.0, k0}, {1.0, k1}});
  CHECK(is_trace_preserving(damping));
  CHECK_FALSE(is_unital(damping));
  CHECK_THROWS_AS(bloch_matrix(damping), std::domain_error);

  const SignedOperatorSum lossy(1, {{0.5, ComplexMatrix::Identity(2, 2)}});
  CHECK_FALSE(is_trace_preserving(lossy));
  CHECK_THROWS_AS(bloch_matrix(lossy), std::domain_error);
}

TEST_CASE("sign criterion requires independent elements") {
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  const SignedOperatorSum dependent(
      1, {{1.0, std::sqrt(2.0) * eye}, {-1.0, eye}});
  CHECK_FALSE(elements_linearly_independent(dependent));
  CHECK_FALSE(sign_verdict(dependent).has_value());

  // The map itself is the identity, hence CP despite the negative weight.
  const CpReport report = certify(dependent);
  CHECK(report.is_cp);
  CHECK(report.is_trace_preserving);
  CHECK(report.is_unital);
  CHECK_FALSE(report.sign_verdict.has_value());
  CHECK_FALSE(report.elements_independent);

  const SignedOperatorSum independent(1, {{1.0, eye}, {0.5, pauli(1)}});
  CHECK(elements_linearly_independent(independent));
  REQUIRE(sign_verdict(independent).has_value());
  CHECK(*sign_verdict(independent));
}

TEST_CASE("sign criterion agrees with the oracle on independent elements") {
  testing::Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    // Nonnegative mixtures of the four Paulis are CP; flipping one weight
    // negative must flip both verdicts (Choi eigenvalues are exactly twice
    // the weights here).
    std::vector<SignedOperatorSum::Term> terms;
    for (int j = 0; j < 4; ++j) {
      terms.push_back({rng.uniform01() + 0.01, pauli(j)});
    }
    const bool flip = trial % 2 == 1;
    if (flip) terms[1 + trial % 3].weight *= -1.0;
    const SignedOperatorSum ch(1, std::move(terms));
    const CpReport report = certify(ch);
    REQUIRE(report.sign_verdict.has_value());
    CHECK(*report.sign_verdict == !flip);
    CHECK(report.is_cp == !flip);
  }
}

TEST_CASE("more elements than the squared dimension are dependent") {
  std::vector<SignedOperatorSum::Term> terms;
  testing::Rng rng(16);
  for (int t = 0; t < 5; ++t) terms.push_back({1.0, rng.complex_matrix(2, 2)});
  CHECK_FALSE(elements_linearly_independent(SignedOperatorSum(1, terms)));
}

TEST_CASE("fold_weights rescales elements and preserves the action") {
  const DiagonalSpec depolarizing(1, RealVector::Zero(3));
  const SignedOperatorSum ch = kraus_from_spec(depolarizing);
  REQUIRE(ch.terms().size() == 4);
  const SignedOperatorSum folded = fold_weights(ch);
  for (const auto& term : folded.terms()) CHECK(term.weight == 1.0);
  CHECK(is_trace_preserving(folded));

  testing::Rng rng(17);
  const ComplexMatrix rho =
      density_from_bloch(BlochVector(1, rng.uniform_vector(3, -0.5, 0.5)));
  CHECK(approx_equal(apply_channel(ch, rho), apply_channel(folded, rho), 1e-14));

  CHECK_THROWS_AS(fold_weights(transpose_channel()), std::domain_error);
}

TEST_CASE("apply is linear and trace preserving for TP maps") {
  testing::Rng rng(18);
  const SignedOperatorSum ch = random_unital_channel(rng, 2, 4);
  const ComplexMatrix a = rng.complex_matrix(4, 4);
  const ComplexMatrix b = rng.complex_matrix(4, 4);
  CHECK(approx_equal(apply_channel(ch, a + 2.0 * b),
                     apply_channel(ch, a) + 2.0 * apply_channel(ch, b), 1e-12));
  CHECK(std::abs(apply_channel(ch, a).trace() - a.trace()) <= 1e-12);
  CHECK_THROWS_AS(apply_channel(ch, ComplexMatrix::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("diagonal channels have Choi eigenvalues exactly twice the betas") {
  testing::Rng rng(19);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const DiagonalSpec spec(n, rng.uniform_vector(basis_size(n) - 1,
                                                    -1.0, 1.0));
      const BetaVector betas = af_betas(spec);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
          choi_matrix(kraus_from_spec(spec)), Eigen::EigenvaluesOnly);
      RealVector expected = 2.0 * betas;
      std::sort(expected.data(), expected.data() + expected.size());
      const RealVector got = solver.eigenvalues();
      CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

}  // TEST_SUITE
