#include "qdet/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "qdet/error.hpp"

namespace qdet {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexVector random_unit_vector(Index dimension, Rng& rng) {
  ComplexVector v(dimension);
  for (;;) {
    for (Index i = 0; i < dimension; ++i) v(i) = rng.complex_normal();
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

ComplexMatrix random_unitary(Index dimension, Rng& rng) {
  ComplexMatrix z(dimension, dimension);
  for (Index j = 0; j < dimension; ++j) {
    for (Index i = 0; i < dimension; ++i) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dimension; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

namespace {

ComplexMatrix draw_generic(Index dimension, Index count, Rng& rng) {
  ComplexMatrix amps(dimension, count);
  for (Index j = 0; j < count; ++j) amps.col(j) = random_unit_vector(dimension, rng);
  return amps;
}

struct Generator {
  Index dimension;
  Index count;
  Rng& rng;

  StateSet operator()(const GenericMode&) const {
    return StateSet(draw_generic(dimension, count, rng));
  }

  StateSet operator()(const IndependentMode&) const {
    if (count > dimension) {
      throw Error(ErrorCode::InvalidDimensions,
                  "independent mode needs N <= D, got N=" + std::to_string(count) +
                      " D=" + std::to_string(dimension));
    }
    for (int attempt = 0; attempt < kIndependentAttempts; ++attempt) {
      StateSet s(draw_generic(dimension, count, rng));
      if (linear_independence(s).independent) return s;
    }
    throw Error(ErrorCode::NotIndependent, "no independent draw within the attempt budget");
  }

  StateSet operator()(const UnitaryImageMode& mode) const {
    if (mode.base.dimension() != dimension || mode.base.size() != count) {
      throw Error(ErrorCode::InvalidDimensions, "unitary image must match the base set's D and N");
    }
    const ComplexMatrix u = random_unitary(dimension, rng);
    return StateSet::normalized(u * mode.base.amplitudes(), mode.base.labels());
  }
};

}  // namespace

StateSet random_state_set(Index dimension, Index count, std::uint64_t seed,
                          const GenerationMode& mode) {
  if (dimension < 1 || count < 1) {
    throw Error(ErrorCode::InvalidDimensions, "random_state_set needs D >= 1 and N >= 1");
  }
  Rng rng(seed);
  return std::visit(Generator{dimension, count, rng}, mode);
}

}  // namespace qdet
