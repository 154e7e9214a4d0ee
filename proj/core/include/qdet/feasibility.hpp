#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdet/states.hpp"

namespace qdet {

/// Thresholds used across the feasibility, synthesis and coherence stages.
struct Tolerances {
  double psd = defaults::kPsdTol;       ///< relative eigenvalue floor for positivity
  double rank = defaults::kRankTol;     ///< relative cutoff for numerical rank
  double overlap = defaults::kPsdTol;   ///< |<psi2_j'|psi2_j>| at or below this is "vanishing"
  double purity = 1e-9;                 ///< 1 - Tr(rho^2) at or below this is "pure"
  double condition = defaults::kConditionCeiling;
};

/// Ratio matrix mu(j, j') = <psi1_j'|psi1_j> / <psi2_j'|psi2_j>.
struct MMatrix {
  ComplexMatrix entries;  ///< zero where undefined
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
  /// Pairs (j < j') whose final overlap vanishes while the initial one does not;
  /// any such pair rules out a deterministic map outright.
  std::vector<std::pair<Index, Index>> forced_infeasible;
  /// Pairs (j < j') where both overlaps vanish; the entry is a free parameter.
  std::vector<std::pair<Index, Index>> free_entries;
  Index dimension = 0;

  [[nodiscard]] Index size() const noexcept { return entries.rows(); }
  [[nodiscard]] bool fully_defined() const noexcept { return defined.all(); }
};

enum class Verdict { Feasible, Infeasible, NecessaryOnly, Undetermined };

std::string_view to_string(Verdict v) noexcept;

struct PairRecord {
  Index j = 0;
  Index k = 0;
  double initial_overlap = 0.0;  ///< |<psi1_k|psi1_j>|
  double final_overlap = 0.0;    ///< |<psi2_k|psi2_j>|
  bool violation = false;        ///< initial overlap exceeds final by more than tol
};

struct FeasibilityReport {
  Verdict verdict = Verdict::Undetermined;
  double min_eigenvalue = 0.0;  ///< NaN when M has undefined entries
  std::vector<PairRecord> violating_pairs;
  bool initial_independent = false;
  bool final_independent = false;
  Index initial_rank = 0;
  Index final_rank = 0;
  double max_abs_mu = 0.0;      ///< over defined off-diagonal entries; inf if forced infeasible
  std::vector<std::string> notes;
};

MMatrix build_m(const StateSet& initial, const StateSet& final_states,
                double tol = defaults::kPsdTol);

FeasibilityReport feasibility_check(const StateSet& initial, const StateSet& final_states,
                                    const Tolerances& tol = {});

std::vector<PairRecord> distinguishability_audit(const StateSet& initial,
                                                 const StateSet& final_states,
                                                 double tol = defaults::kPsdTol);

/// <v, M v> for v = (e_j - exp(-i arg mu_jk) e_k) / sqrt(2); equals 1 - |mu_jk|.
/// A negative value certifies that M is not positive.
double witness_value(const MMatrix& m, Index j, Index k);

}  // namespace qdet
