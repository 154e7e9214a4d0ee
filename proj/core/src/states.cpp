#include "qdet/states.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qdet/error.hpp"

namespace qdet {

namespace {

void check_labels(const std::vector<std::string>& labels, Index n) {
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(n) + " labels, got " +
                                             std::to_string(labels.size()));
  }
}

}  // namespace

StateSet::StateSet(ComplexMatrix amplitudes, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  if (amplitudes_.rows() < 1 || amplitudes_.cols() < 1) {
    throw Error(ErrorCode::InvalidDimensions, "a state set needs D >= 1 and N >= 1");
  }
  require_finite(amplitudes_, "state amplitudes");
  check_labels(labels_, size());
  for (Index j = 0; j < size(); ++j) {
    const double norm = amplitudes_.col(j).norm();
    if (std::abs(norm - 1.0) > kStateNormTol) {
      throw Error(ErrorCode::InvalidState,
                  "state " + std::to_string(j) + " has norm " + std::to_string(norm));
    }
  }
}

StateSet StateSet::normalized(ComplexMatrix amplitudes, std::vector<std::string> labels) {
  require_finite(amplitudes, "state amplitudes");
  for (Index j = 0; j < amplitudes.cols(); ++j) {
    const double norm = amplitudes.col(j).norm();
    if (norm <= 0.0) {
      throw Error(ErrorCode::ZeroVector, "state " + std::to_string(j) + " is the zero vector");
    }
    amplitudes.col(j) /= norm;
  }
  return StateSet(std::move(amplitudes), std::move(labels));
}

StateSet StateSet::from_vectors(const std::vector<ComplexVector>& states,
                                std::vector<std::string> labels) {
  if (states.empty()) {
    throw Error(ErrorCode::InvalidDimensions, "a state set needs at least one state");
  }
  const Index d = states.front().size();
  ComplexMatrix amps(d, static_cast<Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "states have differing dimensions");
    }
    amps.col(static_cast<Index>(j)) = states[j];
  }
  return StateSet(std::move(amps), std::move(labels));
}

StateSet StateSet::subset(std::span<const Index> indices) const {
  ComplexMatrix amps(dimension(), static_cast<Index>(indices.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Index j = indices[i];
    if (j < 0 || j >= size()) {
      throw Error(ErrorCode::InvalidDimensions, "subset index " + std::to_string(j) + " out of range");
    }
    amps.col(static_cast<Index>(i)) = amplitudes_.col(j);
    if (!labels_.empty()) labels.push_back(labels_[static_cast<std::size_t>(j)]);
  }
  return StateSet(std::move(amps), std::move(labels));
}

std::uint64_t StateSet::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(dimension()));
  mix(static_cast<std::uint64_t>(size()));
  for (Index j = 0; j < size(); ++j) {
    for (Index i = 0; i < dimension(); ++i) {
      mix(std::bit_cast<std::uint64_t>(amplitudes_(i, j).real()));
      mix(std::bit_cast<std::uint64_t>(amplitudes_(i, j).imag()));
    }
  }
  return h;
}

ComplexMatrix gram(const StateSet& s) {
  // (Psi^dagger Psi)(a, b) = <psi_a|psi_b>; the transpose puts <psi_j'|psi_j> at (j, j').
  return (s.amplitudes().adjoint() * s.amplitudes()).transpose();
}

IndependenceResult linear_independence(const StateSet& s, double tol) {
  // Dependencies v solve Psi v = 0, i.e. lie in the kernel of Psi^dagger Psi.
  const ComplexMatrix g = s.amplitudes().adjoint() * s.amplitudes();
  const EigenDecomposition eig = hermitian_eig(g);
  IndependenceResult out;
  out.rank = numerical_rank(eig, tol);
  out.independent = out.rank == s.size();
  for (Index k = out.rank; k < s.size(); ++k) {
    out.null_vectors.emplace_back(eig.eigenvectors.col(k));
  }
  return out;
}

DualSet subspace_duals(const StateSet& s, double tol, double condition_ceiling) {
  if (s.size() > s.dimension()) {
    throw Error(ErrorCode::NotIndependent, "more states than dimensions cannot be independent");
  }
  if (!linear_independence(s, tol).independent) {
    throw Error(ErrorCode::NotIndependent, "reciprocal states need a linearly independent set");
  }
  const ComplexMatrix& psi = s.amplitudes();
  const ComplexMatrix g = psi.adjoint() * psi;
  if (condition_number(g) > condition_ceiling) {
    throw Error(ErrorCode::IllConditioned, "Gram matrix condition number exceeds ceiling");
  }
  // Phi = Psi (Psi^dagger Psi)^{-1} gives Phi^dagger Psi = I.
  const ComplexMatrix ginv = solve_linear(g, ComplexMatrix::Identity(s.size(), s.size()),
                                            condition_ceiling);
  return DualSet{s.dimension(), psi * ginv};
}

DualSet dual_states(const StateSet& s, double tol, double condition_ceiling) {
  if (s.size() != s.dimension()) {
    throw Error(ErrorCode::NotSpanning, "dual_states needs N == D, got N=" +
                                            std::to_string(s.size()) +
                                            " D=" + std::to_string(s.dimension()));
  }
  return subspace_duals(s, tol, condition_ceiling);
}

ComplexMatrix dual_resolution(const StateSet& s, const DualSet& d) {
  return s.amplitudes() * d.duals.adjoint();
}

Superposition superpose(const StateSet& s, std::span<const Complex> q, double tol) {
  if (static_cast<Index>(q.size()) != s.size()) {
    throw Error(ErrorCode::SizeMismatch, "coefficient count " + std::to_string(q.size()) +
                                             " differs from state count " +
                                             std::to_string(s.size()));
  }
  Superposition out;
  ComplexVector v = ComplexVector::Zero(s.dimension());
  for (Index j = 0; j < s.size(); ++j) {
    const Complex qj = q[static_cast<std::size_t>(j)];
    if (!std::isfinite(qj.real()) || !std::isfinite(qj.imag())) {
      throw Error(ErrorCode::NotFinite, "superposition coefficient is not finite");
    }
    if (qj != Complex(0.0, 0.0)) {
      out.support.push_back(j);
      v += qj * s.amplitudes().col(j);
    }
  }
  out.raw_norm = v.norm();
  if (out.raw_norm <= tol) {
    throw Error(ErrorCode::ZeroVector, "superposition cancels to the zero vector");
  }
  out.state = v / out.raw_norm;
  return out;
}

}  // namespace qdet
