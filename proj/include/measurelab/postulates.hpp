#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "measurelab/linalg.hpp"

namespace mlab {

// Self-adjoint, positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit DensityOperator(ComplexMatrix matrix);
  static DensityOperator pure(const StateVector& psi);
  // Maximally mixed state 1/n.
  static DensityOperator maximally_mixed(std::size_t n);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// A physical magnitude: a named self-adjoint operator with its spectral family.
class Magnitude {
 public:
  Magnitude(std::string name, ComplexMatrix op,
            double degeneracy_tol = kDegeneracyTolerance);

  const std::string& name() const { return name_; }
  const ComplexMatrix& op() const { return op_; }
  const SpectralFamily& spectrum() const { return spectrum_; }
  std::size_t dim() const { return op_.rows(); }

  // P^A(delta)
  ComplexMatrix projector(const Interval& delta) const {
    return spectral_projector(spectrum_, delta);
  }
  // One singleton interval per eigenvalue, ascending.
  std::vector<Interval> sharp_partition() const;

 private:
  std::string name_;
  ComplexMatrix op_;
  SpectralFamily spectrum_;
};

// Standard spin-1/2 magnitudes in units hbar = 1 (eigenvalues +-1/2); basis
// order is (up_z, down_z).
Magnitude spin_z();
Magnitude spin_x();
Magnitude spin_y();
// A magnitude that is diagonal in the standard basis.
Magnitude diagonal_magnitude(std::string name, std::span<const double> values);

StateVector spin_up();
StateVector spin_down();

// <A, delta>: the system has the (possibly vague) value set delta of A.
struct DeterminateProperty {
  std::string magnitude;
  Interval value_set;

  bool operator==(const DeterminateProperty&) const = default;
};

struct Outcome {
  double value;
  double probability;
};

// Finite probability distribution over distinct real values.
class OutcomeDistribution {
 public:
  static constexpr double kTolerance = 1e-10;

  OutcomeDistribution() = default;
  explicit OutcomeDistribution(std::vector<Outcome> entries);

  const std::vector<Outcome>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // Probability of `value` (0 when absent).
  double probability_of(double value, double tol = 1e-9) const;
  // Number of cells with probability above `threshold`.
  std::size_t support_size(double threshold) const;

 private:
  std::vector<Outcome> entries_;
};

// Total-variation distance: half the L1 distance over the union of values.
double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b,
                       double value_tol = 1e-9);

// <psi| P^A(delta) |psi>
double born_pure(const StateVector& psi, const Magnitude& a, const Interval& delta);
// Tr(W P^A(delta))
double born_mixed(const DensityOperator& w, const Magnitude& a, const Interval& delta);

// Born distribution of `a` in `w` over its eigenvalues.
OutcomeDistribution outcome_distribution(const DensityOperator& w, const Magnitude& a);

// Every <A, delta> with delta in `partition` whose eigen-subspace contains psi
// (|| P psi - psi || <= tol).
std::vector<DeterminateProperty> eigenlink_properties(const StateVector& psi,
                                                      const Magnitude& a,
                                                      std::span<const Interval> partition,
                                                      double tol = 1e-10);

// Smallest outcome probability that may still be conditioned on.
inline constexpr double kMinConditioningProbability = 1e-12;

// P psi / ||P psi||
StateVector collapse_pure(const StateVector& psi, const Magnitude& a, const Interval& delta);

// Lueders rule P W P / Tr(W P).
DensityOperator collapse_mixed(const DensityOperator& w, const Magnitude& a,
                               const Interval& delta);

// exp(-i H t) built from the spectral family of H.
ComplexMatrix propagator(const Magnitude& h, double t);
// U(t) W U(t)^dagger
DensityOperator evolve(const Magnitude& h, double t, const DensityOperator& w);

// Seedable outcome generator: std::mt19937_64, one 64-bit draw per sample,
// mapped to [0, 1) as (draw >> 11) * 2^-53. Fixed so results replay exactly
// on every platform.
class OutcomeRng {
 public:
  explicit OutcomeRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct SampledOutcome {
  std::size_t cell;        // index into the partition
  double value;            // representative value of the cell
  DensityOperator post;    // Lueders post-measurement state
};

// Midpoint for bounded cells (the point itself for singletons); otherwise the
// mean of the eigenvalues of `a` inside the cell.
double representative_value(const Interval& cell, const Magnitude& a);

SampledOutcome sample_outcome(const DensityOperator& w, const Magnitude& a,
                              std::span<const Interval> partition, OutcomeRng& rng);
SampledOutcome sample_outcome(const DensityOperator& w, const Magnitude& a,
                              std::span<const Interval> partition, std::uint64_t seed);

}  // namespace mlab
