#include <random>

#include <benchmark/benchmark.h>
#include <Eigen/Eigenvalues>

#include "blochcp/channels.hpp"
#include "blochcp/diagonal_af.hpp"
#include "blochcp/pauli_basis.hpp"
#include "blochcp/svd_reduction.hpp"
#include "blochcp/types.hpp"

namespace {

using namespace blochcp;

RealVector random_scales(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealVector d(basis_size(n) - 1);
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = dist(gen);
  return d;
}

Eigen::Matrix3d random_matrix(std::mt19937_64& gen) {
  std::normal_distribution<double> dist;
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = dist(gen);
  }
  return m;
}

void bm_sign_transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(1);
  RealVector x = random_scales(n, gen);
  RealVector extended(x.size() + 1);
  extended[0] = 1.0;
  extended.tail(x.size()) = x;
  for (auto _ : state) {
    RealVector work = extended;
    sign_transform_inplace(work);
    benchmark::DoNotOptimize(work.data());
  }
}
BENCHMARK(bm_sign_transform)->DenseRange(1, 4);

void bm_af_betas(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(2);
  const DiagonalSpec spec(n, random_scales(n, gen));
  for (auto _ : state) {
    BetaVector betas = af_betas(spec);
    benchmark::DoNotOptimize(betas.data());
  }
}
BENCHMARK(bm_af_betas)->DenseRange(1, 4);

void bm_choi_oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(3);
  const RealMatrix m = RealMatrix(random_scales(n, gen).asDiagonal());
  for (auto _ : state) {
    const ComplexMatrix choi = choi_from_bloch_matrix(m, n);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        choi, Eigen::EigenvaluesOnly);
    benchmark::DoNotOptimize(solver.eigenvalues().minCoeff());
  }
}
BENCHMARK(bm_choi_oracle)->DenseRange(1, 3);

void bm_signed_svd(benchmark::State& state) {
  std::mt19937_64 gen(4);
  const Eigen::Matrix3d m = random_matrix(gen);
  for (auto _ : state) {
    RotationFactorization f = signed_svd(m);
    benchmark::DoNotOptimize(f.d.data());
  }
}
BENCHMARK(bm_signed_svd);

void bm_decompose_unital(benchmark::State& state) {
  std::mt19937_64 gen(5);
  const Eigen::Matrix3d m = 0.5 * random_matrix(gen);
  for (auto _ : state) {
    SignedOperatorSum ch = decompose_unital(m);
    benchmark::DoNotOptimize(ch.terms().data());
  }
}
BENCHMARK(bm_decompose_unital);

void bm_certify_operator_sum(benchmark::State& state) {
  RealVector d(3);
  d << 0.6, -0.4, 0.5;
  const SignedOperatorSum ch = kraus_from_spec(DiagonalSpec(1, d));
  for (auto _ : state) {
    CpReport report = certify(ch);
    benchmark::DoNotOptimize(report.min_choi_eigenvalue);
  }
}
BENCHMARK(bm_certify_operator_sum);

}  // namespace

BENCHMARK_MAIN();
