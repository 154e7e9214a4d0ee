#pragma once

#include <cstdint>
#include <vector>

#include "qdet/feasibility.hpp"
#include "qdet/states.hpp"

namespace qdet {

/// Kraus operators A_k of a channel rho -> sum_k A_k rho A_k^dagger.
///
/// When produced by synthesize(), c_factor holds the N x K matrix C with
/// M = C C^dagger, so that A_k |psi1_j> = C(j, k) |psi2_j>, and the
/// fingerprints identify the state sets the channel was built for.
struct KrausSet {
  Index dimension = 0;
  std::vector<ComplexMatrix> operators;
  ComplexMatrix c_factor;
  /// <dual_j|psi1_j> for each j, the per-state denominators of the dual-state
  /// construction. The dual normalization makes every one of them 1.
  std::vector<Complex> dual_overlaps;
  /// True when the initial states span a proper subspace and the last
  /// operator is the projector onto its orthogonal complement.
  bool complement_operator = false;
  std::uint64_t initial_fingerprint = 0;
  std::uint64_t final_fingerprint = 0;

  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(operators.size()); }

  /// Channel from explicit operators; validates that all are D x D and finite.
  static KrausSet from_operators(std::vector<ComplexMatrix> ops);
};

class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Validates Hermiticity, unit trace and positivity at the given tolerances.
  static DensityMatrix from_matrix(ComplexMatrix rho, double hermitian_tol = kHermitianTol,
                                   double trace_tol = kTraceTol, double psd_tol = kPsdTol);
  /// |v><v| for a unit vector v.
  static DensityMatrix pure(const ComplexVector& v);

  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return rho_; }
  [[nodiscard]] Index dimension() const noexcept { return rho_.rows(); }

 private:
  explicit DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {}
  friend DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

  ComplexMatrix rho_;
};

struct ChoiMatrix {
  Index dimension = 0;  ///< D; the matrix is D^2 x D^2, input index major
  ComplexMatrix matrix;
};

struct StateTransformRecord {
  Index index = 0;
  double fidelity = 0.0;                     ///< <psi2_j| L(|psi1_j><psi1_j|) |psi2_j>
  std::vector<Complex> coefficients;         ///< c_jk = <psi2_j|A_k|psi1_j>
  std::vector<double> outcome_probabilities; ///< Tr(rho_j A_k^dagger A_k)
  double total_probability = 0.0;            ///< sum_k |c_jk|^2
};

/// Kraus operators for a Feasible instance: A_k = sum_j C(j,k) |psi2_j><dual_j|.
/// K equals the numerical rank of M (plus one complement operator when the
/// initial states do not span the space).
KrausSet synthesize(const StateSet& initial, const StateSet& final_states,
                    const Tolerances& tol = {});

/// The same construction from a caller-supplied factor C (N x K) of M. Used
/// to compare different factorizations of one M.
KrausSet build_kraus(const StateSet& initial, const StateSet& final_states,
                     const ComplexMatrix& c_factor, const Tolerances& tol = {});

/// || sum_k A_k^dagger A_k - I ||_F
double verify_completeness(const KrausSet& ks);

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

std::vector<StateTransformRecord> transform_report(const KrausSet& ks, const StateSet& initial,
                                                   const StateSet& final_states);

ChoiMatrix kraus_to_choi(const KrausSet& ks);

/// Tr over the output factor; the identity iff the channel is trace preserving.
ComplexMatrix choi_partial_trace_output(const ChoiMatrix& choi);

/// Frobenius distance between Choi matrices; the channel-equality measure.
double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);

}  // namespace qdet
