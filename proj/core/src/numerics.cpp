#include "qdet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "qdet/error.hpp"

namespace qdet {

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NotFinite, std::string(what) + " contains NaN or Inf");
  }
}

double hermitian_residual(const ComplexMatrix& h) {
  return (h - h.adjoint()).norm();
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::InvalidDimensions,
                "hermitian_eig needs a square matrix, got " + std::to_string(h.rows()) + "x" +
                    std::to_string(h.cols()));
  }
  require_finite(h, "hermitian_eig input");
  const double scale = h.norm();
  const double asym = hermitian_residual(h);
  if (asym > tol * scale) {
    throw Error(ErrorCode::NotHermitian,
                "symmetry residual " + std::to_string(asym) + " exceeds tolerance");
  }
  if (h.rows() == 0) {
    return {};
  }

  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotFinite, "eigensolver failed to converge");
  }

  // Eigen returns ascending order.
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

PsdResult psd_check(const ComplexMatrix& h, double tol) {
  const EigenDecomposition eig = hermitian_eig(h, std::max(tol, defaults::kHermitianTol));
  if (eig.eigenvalues.size() == 0) {
    return {true, 0.0};
  }
  const double lmin = eig.eigenvalues.minCoeff();
  const double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
  return {lmin >= -tol * std::max(1.0, radius), lmin};
}

int numerical_rank(const EigenDecomposition& eig, double rank_tol) {
  if (eig.eigenvalues.size() == 0) return 0;
  const double lmax = eig.eigenvalues(0);
  if (lmax <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > rank_tol * lmax) ++rank;
  }
  return rank;
}

ComplexMatrix psd_factor(const ComplexMatrix& m, double rank_tol, double psd_tol) {
  const EigenDecomposition eig = hermitian_eig(m, std::max(psd_tol, defaults::kHermitianTol));
  const Eigen::Index n = eig.eigenvalues.size();
  if (n > 0) {
    const double lmin = eig.eigenvalues(n - 1);
    const double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
    if (lmin < -psd_tol * std::max(1.0, radius)) {
      throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(lmin) +
                                         " is below the PSD tolerance");
    }
  }
  const int rank = numerical_rank(eig, rank_tol);
  ComplexMatrix c(m.rows(), rank);
  for (int k = 0; k < rank; ++k) {
    // Column gauge: largest-modulus entry real and positive.
    Eigen::Index imax = 0;
    eig.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = eig.eigenvectors(imax, k);
    const Complex phase = std::abs(pivot) > 0.0 ? std::conj(pivot) / std::abs(pivot) : 1.0;
    c.col(k) = eig.eigenvectors.col(k) * (phase * std::sqrt(eig.eigenvalues(k)));
  }
  return c;
}

double condition_number(const ComplexMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                           double condition_ceiling) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear needs square A with rows(A) == rows(B)");
  }
  require_finite(a, "solve_linear matrix");
  require_finite(b, "solve_linear right-hand side");
  const double cond = condition_number(a);
  if (!(cond <= condition_ceiling)) {
    throw Error(ErrorCode::SingularMatrix,
                "condition number " + std::to_string(cond) + " exceeds ceiling");
  }
  return a.partialPivLu().solve(b);
}

}  // namespace qdet
