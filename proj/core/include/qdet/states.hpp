#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdet/numerics.hpp"

namespace qdet {

using Index = Eigen::Index;

/// Unit-norm tolerance enforced on every stored state vector.
inline constexpr double kStateNormTol = 1e-12;

/// N pure states in a D-dimensional space, stored as the columns of a D x N
/// amplitude matrix.
class StateSet {
 public:
  /// Validates shape, finiteness and unit norm of every column.
  explicit StateSet(ComplexMatrix amplitudes, std::vector<std::string> labels = {});

  /// Normalizes each column first; throws ZeroVector for a vanishing column.
  static StateSet normalized(ComplexMatrix amplitudes, std::vector<std::string> labels = {});
  static StateSet from_vectors(const std::vector<ComplexVector>& states,
                               std::vector<std::string> labels = {});

  [[nodiscard]] Index dimension() const noexcept { return amplitudes_.rows(); }
  [[nodiscard]] Index size() const noexcept { return amplitudes_.cols(); }
  [[nodiscard]] const ComplexMatrix& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] ComplexVector state(Index j) const { return amplitudes_.col(j); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Restriction to the given indices, in the given order.
  [[nodiscard]] StateSet subset(std::span<const Index> indices) const;

  /// FNV-1a over the dimension, count and raw amplitude bits. Identical sets
  /// give identical fingerprints; used to tie a channel to its source sets.
  [[nodiscard]] std::uint64_t fingerprint() const noexcept;

 private:
  ComplexMatrix amplitudes_;
  std::vector<std::string> labels_;
};

/// Reciprocal states: column j is orthogonal to every source state except
/// state j, normalized so that <dual_j|psi_j> = 1.
struct DualSet {
  Index dimension = 0;
  ComplexMatrix duals;
};

struct IndependenceResult {
  bool independent = false;
  Index rank = 0;
  /// Unit coefficient vectors v with sum_j v_j |psi_j> = 0.
  std::vector<ComplexVector> null_vectors;
};

struct Superposition {
  ComplexVector state;        ///< unit vector
  std::vector<Index> support; ///< indices with q_j != 0
  double raw_norm = 0.0;      ///< norm of sum_j q_j |psi_j> before normalization
};

/// Entry (j, j') is <psi_j'|psi_j>.
ComplexMatrix gram(const StateSet& s);

IndependenceResult linear_independence(const StateSet& s,
                                        double tol = defaults::kRankTol);

/// Duals of an independent spanning set (N == D).
DualSet dual_states(const StateSet& s, double tol = defaults::kRankTol,
                    double condition_ceiling = defaults::kConditionCeiling);

/// Duals of an independent set with N <= D. The duals lie in span(s), and
/// sum_j |psi_j><dual_j| is the orthogonal projector onto that span.
DualSet subspace_duals(const StateSet& s, double tol = defaults::kRankTol,
                       double condition_ceiling = defaults::kConditionCeiling);

/// sum_j |psi_j><dual_j|; the identity for spanning sets.
ComplexMatrix dual_resolution(const StateSet& s, const DualSet& d);

Superposition superpose(const StateSet& s, std::span<const Complex> q, double tol = 1e-12);

}  // namespace qdet
