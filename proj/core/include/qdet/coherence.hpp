#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdet/synthesis.hpp"

namespace qdet {

enum class CoherenceVerdict { UnitaryRelated, Decohering };

std::string_view to_string(CoherenceVerdict v) noexcept;

struct CoherenceTolerances {
  double purity = 1e-9;          ///< 1 - Tr(rho^2) at or below this counts as pure
  double rank_gap = 1e-6;        ///< max_{i>=2} |lambda_i| / lambda_1 for "rank one"
  double modulus_spread = 1e-6;  ///< relative spread of |a_j| on the top eigenvector
  double unitary = 1e-8;         ///< ||U^dagger U - I|| and per-state projector residuals
  Tolerances base{};             ///< thresholds forwarded to feasibility and synthesis
};

struct CoherenceReport {
  std::vector<Complex> coefficients;  ///< q as supplied (probe only)
  std::vector<Index> support;
  std::optional<double> output_purity;
  bool is_pure = false;
  std::optional<ComplexVector> output_state;
  /// r_j with |phi2> = sum_j r_j |psi2_j>, recovered with the final duals.
  std::vector<Complex> final_coefficients;
  std::optional<ComplexMatrix> unitary;
  std::vector<double> phases;  ///< radians, U |psi1_j> = exp(i phase_j) |psi2_j>
  RealVector m_eigenvalues;    ///< spectrum of M restricted to the support
  double unitarity_residual = 0.0;
  double projector_residual = 0.0;
  CoherenceVerdict verdict = CoherenceVerdict::Decohering;
  std::vector<std::string> notes;
};

struct RoundtripRecord {
  CoherenceReport probe;
  CoherenceReport relation;
  bool agree = false;
  /// || Q rho_out Q^dagger - (q q^dagger) o M ||_F, where Q sends each final
  /// state to a standard basis vector. Holds for any channel built from M.
  double orthogonalised_residual = 0.0;
  /// || r r^dagger - (q q^dagger) o M ||_F; present only when the output is pure.
  std::optional<double> coefficient_law_residual;
  ComplexMatrix orthogonaliser;
};

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Pushes sum_j q_j |psi1_j> (normalized) through the channel and tests the
/// output for purity. With final_states supplied, a pure output is expanded
/// in the final set to recover r_j.
CoherenceReport coherence_probe(const KrausSet& ks, const StateSet& initial,
                                std::span<const Complex> q, const CoherenceTolerances& tol = {},
                                const StateSet* final_states = nullptr);

/// Restricts both sets to the support and decides whether they are related
/// by a unitary up to per-state phases: M must be rank one with top
/// eigenvector components of equal modulus. On success the phases and a
/// unitary U on the full space are extracted and verified.
CoherenceReport unitary_relation_test(const StateSet& initial, const StateSet& final_states,
                                      std::span<const Index> support,
                                      const CoherenceTolerances& tol = {});

/// Runs the purity probe on the synthesized channel and the unitary-relation
/// test on the support of q, and checks that they agree.
RoundtripRecord purity_unitarity_roundtrip(const StateSet& initial,
                                           const StateSet& final_states,
                                           std::span<const Complex> q,
                                           const CoherenceTolerances& tol = {});

}  // namespace qdet
