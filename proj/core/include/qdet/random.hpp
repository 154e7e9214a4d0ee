#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "qdet/states.hpp"

namespace qdet {

/// Seeded source of Gaussian amplitudes. Raw bits come from std::mt19937_64,
/// whose output sequence is fixed by the standard; uniforms and normals are
/// derived here (53-bit mantissa, Box-Muller) rather than through the
/// implementation-defined std distributions, so a seed reproduces the same
/// states on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double normal();
  /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

ComplexVector random_unit_vector(Index dimension, Rng& rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal folded back into Q.
ComplexMatrix random_unitary(Index dimension, Rng& rng);

struct GenericMode {};
struct IndependentMode {};
struct UnitaryImageMode {
  StateSet base;
};
using GenerationMode = std::variant<GenericMode, IndependentMode, UnitaryImageMode>;

inline constexpr int kIndependentAttempts = 1000;

/// Generic: each state drawn from the unitarily invariant measure on the
/// sphere. Independent: as generic, resampled until the Gram rank is N.
/// UnitaryImage: {U psi_j} for a seeded Haar unitary U; D and N must match the
/// base set.
StateSet random_state_set(Index dimension, Index count, std::uint64_t seed,
                          const GenerationMode& mode);

}  // namespace qdet
