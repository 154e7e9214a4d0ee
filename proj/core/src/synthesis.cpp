#include "qdet/synthesis.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "qdet/error.hpp"

namespace qdet {

KrausSet KrausSet::from_operators(std::vector<ComplexMatrix> ops) {
  if (ops.empty()) {
    throw Error(ErrorCode::InvalidDimensions, "a Kraus set needs at least one operator");
  }
  const Index d = ops.front().rows();
  for (const ComplexMatrix& a : ops) {
    if (a.rows() != d || a.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators must all be D x D");
    }
    require_finite(a, "Kraus operator");
  }
  KrausSet ks;
  ks.dimension = d;
  ks.operators = std::move(ops);
  return ks;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix rho, double hermitian_tol,
                                         double trace_tol, double psd_tol) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw Error(ErrorCode::InvalidDimensions, "density matrix must be square and non-empty");
  }
  require_finite(rho, "density matrix");
  if (hermitian_residual(rho) > hermitian_tol) {
    throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
  }
  if (!psd_check(rho, psd_tol).is_psd) {
    throw Error(ErrorCode::NotPSD, "density matrix has a negative eigenvalue");
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& v) {
  if (std::abs(v.norm() - 1.0) > kStateNormTol) {
    throw Error(ErrorCode::InvalidState, "pure density matrix needs a unit vector");
  }
  return DensityMatrix(v * v.adjoint());
}

namespace {

// Orthonormal basis of the orthogonal complement of the columns of psi.
ComplexMatrix complement_basis(const ComplexMatrix& psi) {
  const Index d = psi.rows();
  const Index n = psi.cols();
  Eigen::HouseholderQR<ComplexMatrix> qr(psi);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  return q.rightCols(d - n);
}

}  // namespace

KrausSet build_kraus(const StateSet& initial, const StateSet& final_states,
                     const ComplexMatrix& c_factor, const Tolerances& tol) {
  if (initial.size() != final_states.size()) {
    throw Error(ErrorCode::SizeMismatch, "initial and final sets differ in size");
  }
  if (initial.dimension() != final_states.dimension()) {
    throw Error(ErrorCode::DimensionError, "initial and final sets differ in dimension");
  }
  if (c_factor.rows() != initial.size() || c_factor.cols() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "C factor must have N rows and at least one column");
  }

  const DualSet duals = subspace_duals(initial, tol.rank, tol.condition);
  const ComplexMatrix& psi2 = final_states.amplitudes();
  const ComplexMatrix dual_adj = duals.duals.adjoint();

  KrausSet ks;
  ks.dimension = initial.dimension();
  ks.initial_fingerprint = initial.fingerprint();
  ks.final_fingerprint = final_states.fingerprint();
  for (Index k = 0; k < c_factor.cols(); ++k) {
    ks.operators.emplace_back(psi2 * c_factor.col(k).asDiagonal() * dual_adj);
  }

  const ComplexMatrix overlaps = dual_adj * initial.amplitudes();
  for (Index j = 0; j < initial.size(); ++j) ks.dual_overlaps.push_back(overlaps(j, j));

  ks.c_factor = c_factor;
  if (initial.size() < initial.dimension()) {
    const ComplexMatrix comp = complement_basis(initial.amplitudes());
    ks.operators.emplace_back(comp * comp.adjoint());
    ks.complement_operator = true;
    ks.c_factor.conservativeResize(Eigen::NoChange, c_factor.cols() + 1);
    ks.c_factor.col(c_factor.cols()).setZero();
  }
  return ks;
}

KrausSet synthesize(const StateSet& initial, const StateSet& final_states, const Tolerances& tol) {
  const FeasibilityReport rep = feasibility_check(initial, final_states, tol);
  if (rep.verdict != Verdict::Feasible) {
    throw Error(ErrorCode::NotFeasible,
                "no deterministic map is licensed: verdict " + std::string(to_string(rep.verdict)));
  }
  const MMatrix m = build_m(initial, final_states, tol.overlap);
  const ComplexMatrix c = psd_factor(m.entries, tol.rank, tol.psd);
  return build_kraus(initial, final_states, c, tol);
}

double verify_completeness(const KrausSet& ks) {
  ComplexMatrix sum = ComplexMatrix::Zero(ks.dimension, ks.dimension);
  for (const ComplexMatrix& a : ks.operators) sum += a.adjoint() * a;
  return (sum - ComplexMatrix::Identity(ks.dimension, ks.dimension)).norm();
}

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
  if (rho.dimension() != ks.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "channel acts on D=" + std::to_string(ks.dimension) +
                                                  ", state has D=" +
                                                  std::to_string(rho.dimension()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ks.dimension, ks.dimension);
  for (const ComplexMatrix& a : ks.operators) out += a * rho.matrix() * a.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

std::vector<StateTransformRecord> transform_report(const KrausSet& ks, const StateSet& initial,
                                                   const StateSet& final_states) {
  if (initial.dimension() != ks.dimension || final_states.dimension() != ks.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "state sets and channel differ in dimension");
  }
  if (initial.size() != final_states.size()) {
    throw Error(ErrorCode::SizeMismatch, "initial and final sets differ in size");
  }
  std::vector<StateTransformRecord> out;
  for (Index j = 0; j < initial.size(); ++j) {
    const ComplexVector psi1 = initial.state(j);
    const ComplexVector psi2 = final_states.state(j);
    const DensityMatrix rho_out = apply_channel(ks, DensityMatrix::pure(psi1));

    StateTransformRecord r;
    r.index = j;
    r.fidelity = psi2.dot(rho_out.matrix() * psi2).real();
    for (const ComplexMatrix& a : ks.operators) {
      const ComplexVector image = a * psi1;
      const Complex c = psi2.dot(image);
      r.coefficients.push_back(c);
      r.outcome_probabilities.push_back(image.squaredNorm());
      r.total_probability += std::norm(c);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ChoiMatrix kraus_to_choi(const KrausSet& ks) {
  const Index d = ks.dimension;
  ChoiMatrix choi{d, ComplexMatrix::Zero(d * d, d * d)};
  ComplexVector vec(d * d);
  for (const ComplexMatrix& a : ks.operators) {
    // |A>> = sum_a |a> (x) A|a>
    for (Index in = 0; in < d; ++in) {
      for (Index out = 0; out < d; ++out) vec(in * d + out) = a(out, in);
    }
    choi.matrix += vec * vec.adjoint();
  }
  return choi;
}

ComplexMatrix choi_partial_trace_output(const ChoiMatrix& choi) {
  const Index d = choi.dimension;
  ComplexMatrix t = ComplexMatrix::Zero(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      for (Index o = 0; o < d; ++o) t(a, b) += choi.matrix(a * d + o, b * d + o);
    }
  }
  return t;
}

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.dimension != b.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrices of different dimension");
  }
  return (a.matrix - b.matrix).norm();
}

}  // namespace qdet
