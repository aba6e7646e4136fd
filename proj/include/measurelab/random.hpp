#pragma once

#include <cstddef>

#include "measurelab/postulates.hpp"

namespace mlab {

// Deterministic random objects drawn from an OutcomeRng. Gaussians come from
// Box-Muller on the generator's uniforms, so streams replay across platforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  std::size_t index(std::size_t n);  // uniform in [0, n)
  double gaussian();
  Complex complex_gaussian();

  // Haar-distributed unit vector.
  StateVector state(std::size_t dim);
  // Haar unitary (QR of a Ginibre matrix with phase-fixed R).
  ComplexMatrix unitary(std::size_t dim);
  ComplexMatrix hermitian(std::size_t dim);
  // Full-rank mixed state G G^dagger / Tr.
  DensityOperator density(std::size_t dim);
  // Orthogonal projector of the given rank in a random basis.
  ComplexMatrix projector(std::size_t dim, std::size_t rank);
  ComplexMatrix matrix(std::size_t rows, std::size_t cols);

 private:
  OutcomeRng rng_;
};

}  // namespace mlab
