#include "qdet/feasibility.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qdet/error.hpp"

namespace qdet {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Feasible: return "Feasible";
    case Verdict::Infeasible: return "Infeasible";
    case Verdict::NecessaryOnly: return "NecessaryOnly";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

namespace {

void check_pair(const StateSet& initial, const StateSet& final_states) {
  if (initial.size() != final_states.size()) {
    throw Error(ErrorCode::SizeMismatch, "initial set has " + std::to_string(initial.size()) +
                                             " states, final set has " +
                                             std::to_string(final_states.size()));
  }
  if (initial.dimension() != final_states.dimension()) {
    throw Error(ErrorCode::DimensionError,
                "final states must live in the same space as the initial states (D=" +
                    std::to_string(initial.dimension()) + " vs " +
                    std::to_string(final_states.dimension()) + ")");
  }
}

}  // namespace

MMatrix build_m(const StateSet& initial, const StateSet& final_states, double tol) {
  check_pair(initial, final_states);
  const ComplexMatrix g1 = gram(initial);
  const ComplexMatrix g2 = gram(final_states);
  const Index n = initial.size();

  MMatrix m;
  m.dimension = initial.dimension();
  m.entries = ComplexMatrix::Zero(n, n);
  m.defined.setConstant(n, n, true);
  for (Index j = 0; j < n; ++j) {
    m.entries(j, j) = 1.0;
    for (Index k = j + 1; k < n; ++k) {
      const Complex num = g1(j, k);
      const Complex den = g2(j, k);
      if (std::abs(den) > tol) {
        const Complex mu = num / den;
        m.entries(j, k) = mu;
        m.entries(k, j) = std::conj(mu);
        continue;
      }
      m.defined(j, k) = false;
      m.defined(k, j) = false;
      if (std::abs(num) > tol) {
        m.forced_infeasible.emplace_back(j, k);
      } else {
        m.free_entries.emplace_back(j, k);
      }
    }
  }
  return m;
}

std::vector<PairRecord> distinguishability_audit(const StateSet& initial,
                                                 const StateSet& final_states, double tol) {
  check_pair(initial, final_states);
  const ComplexMatrix g1 = gram(initial);
  const ComplexMatrix g2 = gram(final_states);
  std::vector<PairRecord> out;
  for (Index j = 0; j < initial.size(); ++j) {
    for (Index k = j + 1; k < initial.size(); ++k) {
      PairRecord r;
      r.j = j;
      r.k = k;
      r.initial_overlap = std::abs(g1(j, k));
      r.final_overlap = std::abs(g2(j, k));
      r.violation = r.initial_overlap > r.final_overlap + tol;
      out.push_back(r);
    }
  }
  return out;
}

double witness_value(const MMatrix& m, Index j, Index k) {
  const Index n = m.size();
  if (j < 0 || k < 0 || j >= n || k >= n || j == k) {
    throw Error(ErrorCode::InvalidDimensions, "witness needs two distinct in-range indices");
  }
  if (!m.defined(j, k)) {
    throw Error(ErrorCode::UndefinedEntry,
                "mu(" + std::to_string(j) + "," + std::to_string(k) + ") is undefined");
  }
  const double theta = std::arg(m.entries(j, k));
  ComplexVector v = ComplexVector::Zero(n);
  v(j) = 1.0 / std::numbers::sqrt2;
  v(k) = -std::polar(1.0, -theta) / std::numbers::sqrt2;
  return v.dot(m.entries * v).real();
}

FeasibilityReport feasibility_check(const StateSet& initial, const StateSet& final_states,
                                    const Tolerances& tol) {
  const MMatrix m = build_m(initial, final_states, tol.overlap);
  const IndependenceResult ind1 = linear_independence(initial, tol.rank);
  const IndependenceResult ind2 = linear_independence(final_states, tol.rank);

  FeasibilityReport rep;
  rep.initial_independent = ind1.independent;
  rep.final_independent = ind2.independent;
  rep.initial_rank = ind1.rank;
  rep.final_rank = ind2.rank;

  for (const PairRecord& r : distinguishability_audit(initial, final_states, tol.overlap)) {
    if (r.violation) rep.violating_pairs.push_back(r);
  }

  const Index n = m.size();
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      if (m.defined(j, k)) rep.max_abs_mu = std::max(rep.max_abs_mu, std::abs(m.entries(j, k)));
    }
  }
  if (!m.forced_infeasible.empty()) {
    rep.max_abs_mu = std::numeric_limits<double>::infinity();
  }

  if (!ind1.independent) {
    rep.notes.push_back("initial states are linearly dependent (rank " + std::to_string(ind1.rank) +
                        " of " + std::to_string(n) + "); positivity of M is necessary only");
  } else if (initial.size() < initial.dimension()) {
    rep.notes.push_back("initial states span a proper subspace (rank " +
                        std::to_string(ind1.rank) + " of D=" +
                        std::to_string(initial.dimension()) +
                        "); synthesis adds an identity operator on the orthogonal complement");
  }

  if (!m.forced_infeasible.empty()) {
    rep.verdict = Verdict::Infeasible;
    rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [j, k] : m.forced_infeasible) {
      rep.notes.push_back("final states " + std::to_string(j) + "," + std::to_string(k) +
                          " are orthogonal but their initial states are not");
    }
    return rep;
  }

  if (!m.free_entries.empty()) {
    rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    rep.verdict = rep.violating_pairs.empty() ? Verdict::Undetermined : Verdict::Infeasible;
    rep.notes.push_back(std::to_string(m.free_entries.size()) +
                        " pair(s) are orthogonal both before and after; M has free entries and "
                        "no PSD completion is attempted");
    return rep;
  }

  const PsdResult psd = psd_check(m.entries, tol.psd);
  rep.min_eigenvalue = psd.min_eigenvalue;
  if (!psd.is_psd || !rep.violating_pairs.empty()) {
    rep.verdict = Verdict::Infeasible;
  } else {
    rep.verdict = ind1.independent ? Verdict::Feasible : Verdict::NecessaryOnly;
  }
  return rep;
}

}  // namespace qdet
