#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "measurelab/measurement.hpp"
#include "measurelab/random.hpp"
#include "measurelab/report.hpp"

namespace mlab {

// The Stern-Gerlach toy model: spin-1/2 on C^2 measured by a three-level
// pointer on C^3 with basis order (|m0>, |+>, |->) and values (5, +1, -1).
namespace stern_gerlach {

inline constexpr double kReadyValue = 5.0;
inline constexpr double kUpValue = 1.0;
inline constexpr double kDownValue = -1.0;

Magnitude pointer();
Calibration calibration();
MeasurementScheme ideal_scheme();
// |up> -> |down> (x) |+>, |down> -> |up> (x) |->.
MeasurementScheme spin_flip_scheme();
// alpha |up> + beta |down>; throws PreconditionError unless normalized
// within `tol`.
StateVector spin_state(Complex alpha, Complex beta, double tol = 1e-10);
// w0 P0 + w1 P+ + w2 P-
DensityOperator mixed_ready_state(const std::array<double, 3>& weights);

}  // namespace stern_gerlach

enum class CouplingKind { kIdeal, kSpinFlip };

// Problem I: unitary evolution leaves the pointer without a determinate
// value whenever both amplitudes are nonzero.
ScenarioReport run_reality_problem(Complex alpha, Complex beta,
                                   CouplingKind kind = CouplingKind::kIdeal,
                                   double tol = kVerdictTolerance);

// Threshold below which an outcome cell does not count as possible.
inline constexpr double kSupportThreshold = 1e-12;

// Problem II: a single state assigns nonzero probability to several outcomes,
// so no specification function m_A(psi) exists outside eigenstates.
ScenarioReport run_state_completeness(const StateVector& psi, const Magnitude& a,
                                      double tol = kVerdictTolerance);

// Problem III for the Stern-Gerlach model with mixed ready state
// w0 P0 + w1 P+ + w2 P-.
ScenarioReport run_probability_problem(Complex alpha, Complex beta,
                                       const std::array<double, 3>& weights,
                                       double tol = kVerdictTolerance);

// Least-squares T with (P (x) Q) W = P (x) T, solved over all entries:
// T_kl = sum_ij conj(P_ij) C_(ik),(jl) / sum_ij |P_ij|^2.
ComplexMatrix extract_stein_operator(const ComplexMatrix& p, const ComplexMatrix& q,
                                     const ComplexMatrix& w);

struct SteinReport {
  ComplexMatrix t_q;
  double commutator_norm;          // ||[P (x) Q, W]||
  double factorization_residual;   // ||(P (x) Q) W - P (x) T_Q||
  std::vector<ComplexMatrix> alternative_t;
  double independence_residual;    // max pairwise ||T - T'|| over all projectors
};

inline constexpr double kCommutationTolerance = 1e-9;

// Throws PreconditionError if P (x) Q fails to commute with W, or if any
// alternative projector fails to.
SteinReport verify_stein_lemma(const ComplexMatrix& p, const ComplexMatrix& q,
                               const ComplexMatrix& w,
                               std::span<const ComplexMatrix> alternatives = {},
                               double comm_tol = kCommutationTolerance);

struct SteinInstance {
  ComplexMatrix p;
  ComplexMatrix q;
  ComplexMatrix w;
  std::vector<ComplexMatrix> alternatives;
};

// W = (1 (x) V)(1 (x) R + sum_i X_i (x) Y_i)(1 (x) V^dagger) and Q = V D V^dagger,
// where D is diagonal with a nontrivial kernel, R is block diagonal with
// respect to D's eigenspaces and the Y_i live on D's kernel. Every projector P
// then satisfies [P (x) Q, W] = 0 with T_Q = Q V R V^dagger independent of P.
SteinInstance random_stein_instance(std::size_t d1, std::size_t d2, std::size_t alternatives,
                                    RandomSource& rng);

ScenarioReport run_stein_scenario(std::size_t d1, std::size_t d2, std::size_t trials,
                                  std::uint64_t seed, std::size_t alternatives = 10,
                                  double tol = kVerdictTolerance);

struct ExpectationEntry {
  double expectation;          // <1 (x) M> in the final state
  double trace_t;              // Tr(T) of the Stein operator
  double commutator_norm;      // ||[W(tau), 1 (x) M]||
  std::optional<double> eigenvalue;  // a with P = P^A(a), when it is one
};

struct ExpectationReport {
  std::vector<ExpectationEntry> entries;
  double spread;                 // max - min expectation
  double trace_residual;         // max |<M> - Tr(T)|
  double t_independence;         // max pairwise ||T_j - T_k||
  double joint_commutator;       // max over matrix units X of ||[X (x) W_M, U^dag (1 (x) M) U]||
  double reproduction_deviation; // max |<M>_j - m_g(a_j)| over eigenstate inputs
};

// Throws PreconditionError when the final state of some input fails to
// commute with 1 (x) M (||.|| > comm_tol).
ExpectationReport expectation_independence(const MeasurementScheme& scheme,
                                           const DensityOperator& apparatus_mixed,
                                           std::span<const ComplexMatrix> system_states,
                                           double comm_tol = kCommutationTolerance);

ScenarioReport run_expectation_scenario(const std::array<double, 3>& weights,
                                        double tol = kVerdictTolerance);

struct NoSignallingReport {
  // marginals[k] is the distribution of A when B = b_options[k] is measured.
  std::vector<OutcomeDistribution> marginals;
  double max_deviation;
  double max_normalization_error;
};

NoSignallingReport no_signalling_check(const DensityOperator& joint, const Magnitude& a,
                                       std::span<const Magnitude> b_options);

enum class JointState { kSinglet, kProduct };

ScenarioReport run_no_signalling_scenario(JointState state, double tol = 1e-12);

// Pure ready state, random mixed system states: reproducibility holds.
ScenarioReport run_positive_control(std::size_t trials, std::uint64_t seed,
                                    double tol = 1e-12);

}  // namespace mlab
