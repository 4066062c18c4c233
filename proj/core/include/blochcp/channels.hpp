#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "blochcp/types.hpp"

namespace blochcp {

// A signed operator-sum map Phi(rho) = sum_j w_j A_j rho A_j^dagger with real
// weights w_j of either sign. Terms with weight exactly 0 or an all-zero
// element are dropped at construction.
class SignedOperatorSum {
 public:
  struct Term {
    double weight = 0.0;
    ComplexMatrix element;
  };

  SignedOperatorSum(int n, std::vector<Term> terms);

  int qubit_count() const { return n_; }
  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<Term> terms_;
};

struct CpVerdict {
  bool is_cp = false;
  double min_eigenvalue = 0.0;
};

// Full certification record for a signed operator-sum map.
struct CpReport {
  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
  bool is_trace_preserving = false;
  bool is_unital = false;
  // Verdict by the sign criterion: CP iff every weight is nonnegative.
  // Only meaningful when the elements are linearly independent, so it is
  // absent otherwise.
  std::optional<bool> sign_verdict;
  bool elements_independent = false;
};

ComplexMatrix apply_channel(const SignedOperatorSum& ch, const ComplexMatrix& rho);

// Choi matrix J(Phi) = sum_jk E_jk (x) Phi(E_jk), built from the column-vec
// outer-product form J = sum_t w_t vec(A_t) vec(A_t)^dagger.
ComplexMatrix choi_matrix(const SignedOperatorSum& ch);

// Choi matrix of the unital trace-preserving map given by an arbitrary real
// Bloch-coordinate matrix m of shape (4^n - 1) x (4^n - 1), evaluated
// directly on matrix units via
// Phi(X) = tr(X)/2^n I + (1/2) sum_ij lambda_i m(i,j) tr(lambda_j X).
// Independent of any operator-sum representation.
ComplexMatrix choi_from_bloch_matrix(const RealMatrix& m, int n);

// The reference complete-positivity test: minimum Choi eigenvalue >= -tol.
CpVerdict is_completely_positive(const SignedOperatorSum& ch,
                                 double tol = kDefaultCpTol);

// sum_j w_j A_j^dagger A_j == I within tol.
bool is_trace_preserving(const SignedOperatorSum& ch, double tol = kDefaultTol);

// sum_j w_j A_j A_j^dagger == I within tol.
bool is_unital(const SignedOperatorSum& ch, double tol = kDefaultTol);

// Gram-matrix rank test on the elements viewed as vectors: true when the
// smallest Gram eigenvalue exceeds rank_tol times the largest. Empty maps
// count as independent.
bool elements_linearly_independent(const SignedOperatorSum& ch,
                                   double rank_tol = kDefaultRankTol);

// CP verdict by weight signs, valid only for independent elements; returns
// nullopt when the independence test fails.
std::optional<bool> sign_verdict(const SignedOperatorSum& ch,
                                 double rank_tol = kDefaultRankTol);

// The (4^n - 1) x (4^n - 1) real matrix of the induced Bloch-vector map.
// Defined entrywise as tr(lambda_(i+1) Phi(lambda_(j+1))) / 2. Requires the
// map to be trace preserving and unital within tol (the Bloch image of a
// non-unital map is affine, not linear); throws std::domain_error otherwise.
RealMatrix bloch_matrix(const SignedOperatorSum& ch, double tol = kDefaultTol);

CpReport certify(const SignedOperatorSum& ch, double tol = kDefaultCpTol,
                 double rank_tol = kDefaultRankTol);

// Rescale every element by sqrt(w) so all weights become 1. Requires all
// weights positive; throws std::domain_error on a negative weight.
SignedOperatorSum fold_weights(const SignedOperatorSum& ch);

}  // namespace blochcp
