#include "qdet/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "qdet/error.hpp"

namespace qdet {

std::string_view to_string(CoherenceVerdict v) noexcept {
  switch (v) {
    case CoherenceVerdict::UnitaryRelated: return "UnitaryRelated";
    case CoherenceVerdict::Decohering: return "Decohering";
  }
  return "Unknown";
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

namespace {

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

// Rotates v so that its largest-modulus component is real and positive.
ComplexVector pin_phase(ComplexVector v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex c = v(imax);
  if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
  return v;
}

ComplexMatrix complement_basis(const ComplexMatrix& psi) {
  const Index d = psi.rows();
  Eigen::HouseholderQR<ComplexMatrix> qr(psi);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  return q.rightCols(d - psi.cols());
}

}  // namespace

CoherenceReport coherence_probe(const KrausSet& ks, const StateSet& initial,
                                std::span<const Complex> q, const CoherenceTolerances& tol,
                                const StateSet* final_states) {
  if (ks.initial_fingerprint != 0 && ks.initial_fingerprint != initial.fingerprint()) {
    throw Error(ErrorCode::FingerprintMismatch, "channel was not synthesized for this initial set");
  }
  if (final_states != nullptr && ks.final_fingerprint != 0 &&
      ks.final_fingerprint != final_states->fingerprint()) {
    throw Error(ErrorCode::FingerprintMismatch, "channel was not synthesized for this final set");
  }
  const Superposition sup = superpose(initial, q);
  if (sup.support.size() < 2) {
    throw Error(ErrorCode::SupportTooSmall, "the superposition needs at least two nonzero coefficients");
  }

  CoherenceReport rep;
  rep.coefficients.assign(q.begin(), q.end());
  rep.support = sup.support;

  const DensityMatrix out = apply_channel(ks, DensityMatrix::pure(sup.state));
  const double p = purity(out);
  rep.output_purity = p;
  rep.is_pure = 1.0 - p <= tol.purity;
  rep.verdict = rep.is_pure ? CoherenceVerdict::UnitaryRelated : CoherenceVerdict::Decohering;
  if (!rep.is_pure) return rep;

  const EigenDecomposition eig = hermitian_eig(out.matrix());
  const ComplexVector phi2 = pin_phase(eig.eigenvectors.col(0));
  rep.output_state = phi2;

  if (final_states != nullptr) {
    if (linear_independence(*final_states, tol.base.rank).independent) {
      const DualSet fd = subspace_duals(*final_states, tol.base.rank, tol.base.condition);
      const ComplexVector r = fd.duals.adjoint() * phi2;
      rep.final_coefficients.assign(r.data(), r.data() + r.size());
    } else {
      rep.notes.push_back("final set is linearly dependent; r_j coefficients are not unique");
    }
  }
  return rep;
}

CoherenceReport unitary_relation_test(const StateSet& initial, const StateSet& final_states,
                                      std::span<const Index> support,
                                      const CoherenceTolerances& tol) {
  if (initial.size() != final_states.size()) {
    throw Error(ErrorCode::SizeMismatch, "initial and final sets differ in size");
  }
  if (support.size() < 2) {
    throw Error(ErrorCode::SupportTooSmall, "the support needs at least two indices");
  }
  const StateSet s1 = initial.subset(support);
  const StateSet s2 = final_states.subset(support);
  if (!linear_independence(s1, tol.base.rank).independent) {
    throw Error(ErrorCode::NotIndependent, "initial states are dependent on the support");
  }
  if (!linear_independence(s2, tol.base.rank).independent) {
    throw Error(ErrorCode::NotIndependent,
                "final states are dependent on the support; no unitary can map an independent set "
                "onto them");
  }

  CoherenceReport rep;
  rep.support.assign(support.begin(), support.end());

  const MMatrix m = build_m(s1, s2, tol.base.overlap);
  if (!m.free_entries.empty()) {
    throw Error(ErrorCode::UndefinedEntry,
                "M has entries where both overlaps vanish; the rank-one test does not apply");
  }
  if (!m.forced_infeasible.empty()) {
    rep.notes.push_back("a final pair is orthogonal while its initial pair is not");
    return rep;
  }

  const auto n = static_cast<double>(s1.size());
  const EigenDecomposition eig = hermitian_eig(m.entries);
  rep.m_eigenvalues = eig.eigenvalues;
  const double top = eig.eigenvalues(0);
  double rest = 0.0;
  for (Index i = 1; i < eig.eigenvalues.size(); ++i) {
    rest = std::max(rest, std::abs(eig.eigenvalues(i)));
  }
  const bool rank_one = top > 0.0 && rest <= tol.rank_gap * top &&
                        std::abs(top - n) <= tol.rank_gap * n;

  const ComplexVector a = eig.eigenvectors.col(0);
  const RealVector moduli = a.cwiseAbs();
  const double spread = (moduli.maxCoeff() - moduli.minCoeff()) / moduli.mean();
  const bool equal_moduli = spread <= tol.modulus_spread;

  if (!rank_one || !equal_moduli) {
    rep.notes.push_back(rank_one ? "top eigenvector of M has unequal moduli"
                                 : "M is not rank one");
    return rep;
  }

  // U |psi1_j> = exp(i phi_j) |psi2_j> with phi_j = arg(a_j) - arg(a_0).
  const double ref = std::arg(a(0));
  std::vector<double> phases;
  ComplexVector phase_factors(s1.size());
  for (Index j = 0; j < s1.size(); ++j) {
    phases.push_back(wrap_angle(std::arg(a(j)) - ref));
    phase_factors(j) = std::polar(1.0, phases.back());
  }

  const DualSet d1 = subspace_duals(s1, tol.base.rank, tol.base.condition);
  ComplexMatrix u = s2.amplitudes() * phase_factors.asDiagonal() * d1.duals.adjoint();
  if (s1.size() < s1.dimension()) {
    u += complement_basis(s2.amplitudes()) * complement_basis(s1.amplitudes()).adjoint();
  }

  // Fix the global phase: largest-modulus entry of the first column real positive.
  Index imax = 0;
  u.col(0).cwiseAbs().maxCoeff(&imax);
  const double beta = -std::arg(u(imax, 0));
  u *= std::polar(1.0, beta);
  for (double& ph : phases) ph = wrap_angle(ph + beta);

  const Index d = u.rows();
  rep.unitarity_residual = (u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm();
  for (Index j = 0; j < s1.size(); ++j) {
    const ComplexVector img = u * s1.state(j);
    const ComplexVector tgt = s2.state(j);
    rep.projector_residual =
        std::max(rep.projector_residual, (img * img.adjoint() - tgt * tgt.adjoint()).norm());
  }
  if (rep.unitarity_residual > tol.unitary || rep.projector_residual > tol.unitary) {
    rep.notes.push_back("extracted operator failed unitarity or per-state verification");
    return rep;
  }
  rep.unitary = u;
  rep.phases = std::move(phases);
  rep.verdict = CoherenceVerdict::UnitaryRelated;
  return rep;
}

RoundtripRecord purity_unitarity_roundtrip(const StateSet& initial, const StateSet& final_states,
                                           std::span<const Complex> q,
                                           const CoherenceTolerances& tol) {
  if (!linear_independence(initial, tol.base.rank).independent) {
    throw Error(ErrorCode::NotIndependent, "initial set is linearly dependent");
  }
  if (!linear_independence(final_states, tol.base.rank).independent) {
    throw Error(ErrorCode::NotIndependent,
                "final set is linearly dependent; purity cannot force a unitary relation");
  }
  const KrausSet ks = synthesize(initial, final_states, tol.base);

  RoundtripRecord rec;
  rec.probe = coherence_probe(ks, initial, q, tol, &final_states);
  rec.relation = unitary_relation_test(initial, final_states, rec.probe.support, tol);
  rec.agree = rec.probe.is_pure == (rec.relation.verdict == CoherenceVerdict::UnitaryRelated);

  // Effective coefficients of the normalized input superposition.
  const Superposition sup = superpose(initial, q);
  const Index n = initial.size();
  ComplexVector qn(n);
  for (Index j = 0; j < n; ++j) qn(j) = q[static_cast<std::size_t>(j)] / sup.raw_norm;

  const MMatrix m = build_m(initial, final_states, tol.base.overlap);
  const ComplexMatrix expected = (qn * qn.adjoint()).cwiseProduct(m.entries);

  const DualSet fd = subspace_duals(final_states, tol.base.rank, tol.base.condition);
  rec.orthogonaliser = fd.duals.adjoint();
  const DensityMatrix out = apply_channel(ks, DensityMatrix::pure(sup.state));
  const ComplexMatrix orth = rec.orthogonaliser * out.matrix() * rec.orthogonaliser.adjoint();
  rec.orthogonalised_residual = (orth - expected).norm();

  if (rec.probe.is_pure && !rec.probe.final_coefficients.empty()) {
    const Eigen::Map<const ComplexVector> r(rec.probe.final_coefficients.data(), n);
    rec.coefficient_law_residual = (r * r.adjoint() - expected).norm();
  }
  return rec;
}

}  // namespace qdet
