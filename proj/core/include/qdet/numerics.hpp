#pragma once

#include <complex>

#include <Eigen/Core>

namespace qdet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerances shared by every module. All eigenvalue thresholds are
/// relative to the spectral scale of the matrix they are applied to.
namespace defaults {
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kConditionCeiling = 1e12;
}  // namespace defaults

struct EigenDecomposition {
  RealVector eigenvalues;     ///< sorted descending
  ComplexMatrix eigenvectors; ///< orthonormal columns, same order
};

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// Throws Error(NotFinite) if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Frobenius norm of H - H^dagger.
double hermitian_residual(const ComplexMatrix& h);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (H + H^dagger)/2 after the Hermiticity check, so the returned spectrum is
/// exactly real.
EigenDecomposition hermitian_eig(const ComplexMatrix& h,
                                 double tol = defaults::kHermitianTol);

/// H is declared PSD iff its smallest eigenvalue is at least
/// -tol * max(1, spectral radius).
PsdResult psd_check(const ComplexMatrix& h, double tol = defaults::kPsdTol);

/// Number of eigenvalues strictly above rank_tol * lambda_max.
int numerical_rank(const EigenDecomposition& eig, double rank_tol = defaults::kRankTol);

/// Rank-revealing factor C with M = C C^dagger. C has one column per
/// retained eigen-direction (eigenvalue > rank_tol * lambda_max); eigenvalues
/// in the boundary band are clamped to zero and dropped. Each column is
/// scaled so its largest-modulus entry is real and positive.
ComplexMatrix psd_factor(const ComplexMatrix& m, double rank_tol = defaults::kRankTol,
                         double psd_tol = defaults::kPsdTol);

/// 2-norm condition number via singular values (infinity for singular A).
double condition_number(const ComplexMatrix& a);

/// Solves A X = B. Throws SingularMatrix when cond(A) exceeds the ceiling.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                           double condition_ceiling = defaults::kConditionCeiling);

}  // namespace qdet
