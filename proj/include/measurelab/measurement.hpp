#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "measurelab/postulates.hpp"

namespace mlab {

// Finite one-one map g from measured values a to pointer values m_g(a).
class Calibration {
 public:
  struct Entry {
    double system_value;
    double pointer_value;
  };

  Calibration() = default;
  // Throws PreconditionError unless injective in both coordinates.
  explicit Calibration(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // g(a); nullopt when a is not calibrated.
  std::optional<double> pointer_for(double system_value, double tol = 1e-9) const;
  // g^inv(m); nullopt when m is not in the image.
  std::optional<double> system_for(double pointer_value, double tol = 1e-9) const;

 private:
  std::vector<Entry> entries_;
};

struct MeasurementScheme {
  std::size_t system_dim;
  std::size_t apparatus_dim;
  Magnitude measured;   // on the system space
  Magnitude pointer;    // on the apparatus space
  double ready_value;   // m_0
  Calibration calibration;
  ComplexMatrix coupling;  // U_m(tau) on system (x) apparatus
  double duration;

  // 1 (x) M on the composite space.
  ComplexMatrix composite_pointer() const;
  // Canonical ready vector |m_0> (first vector of the ready eigenspace).
  StateVector ready_state() const;
};

// Canonical unit eigenvector of a non-degenerate eigenvalue.
StateVector eigenvector(const Magnitude& a, double value);

// Ideal coupling |a>|m0> -> |a>|m_g(a)>, completed canonically.
MeasurementScheme build_ideal_scheme(const Magnitude& measured, const Magnitude& pointer,
                                     double ready_value, const Calibration& calibration,
                                     double duration = 1.0);

// Disturbing coupling |a>|m0> -> |u_a>|m_g(a)>, completed canonically.
// `post_system_states` maps each calibrated a to |u_a>.
MeasurementScheme build_disturbance_scheme(const Magnitude& measured, const Magnitude& pointer,
                                           double ready_value, const Calibration& calibration,
                                           const std::map<double, StateVector>& post_system_states,
                                           double duration = 1.0);

inline constexpr double kVerdictTolerance = 1e-10;

struct PropertyRevealingEntry {
  double system_value;
  double pointer_value;
  double residual;  // || (1 (x) M) v - m v ||, v = U(|a>|m0>)
  bool pass;
};

struct PropertyRevealingReport {
  std::vector<PropertyRevealingEntry> entries;
  bool all_pass() const;
};

PropertyRevealingReport check_property_revealing(const MeasurementScheme& scheme,
                                                 double tol = kVerdictTolerance);

// U W U^dagger
DensityOperator final_state(const MeasurementScheme& scheme, const DensityOperator& initial);

struct ReproducibilityReport {
  // Born distribution of the measured magnitude in the initial system state.
  OutcomeDistribution system;
  // Born distribution of 1 (x) M in the final composite state.
  OutcomeDistribution pointer;
  // max over pointer values m of |Pr_final(m) - Pr_initial(g^inv(m))|, with
  // uncalibrated values compared against zero.
  double max_deviation;
  bool pass;
};

ReproducibilityReport check_probability_reproducibility(const MeasurementScheme& scheme,
                                                        const DensityOperator& system_initial,
                                                        const DensityOperator& apparatus_initial,
                                                        double tol = kVerdictTolerance);

// Born distribution of 1 (x) M in a composite state.
OutcomeDistribution pointer_distribution(const MeasurementScheme& scheme,
                                         const DensityOperator& composite);

struct ConvexTerm {
  double weight;
  ComplexMatrix pure;  // rank-1 projector
  double value;        // eigenvalue of the privileged magnitude it belongs to
};

class ConvexExpansion {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit ConvexExpansion(std::vector<ConvexTerm> terms);

  const std::vector<ConvexTerm>& terms() const { return terms_; }
  // Sum of weight * pure.
  ComplexMatrix assemble() const;
  // Total weight carried by terms with the given privileged value.
  double weight_of(double value, double tol = 1e-9) const;

 private:
  std::vector<ConvexTerm> terms_;
};

// Expansion of W in rank-1 eigenprojectors of a commuting magnitude; inside
// a degenerate eigenspace, W's own eigenbasis is used. Terms with weight
// <= 1e-12 are dropped. Throws PreconditionError when ||[W, A]|| > comm_tol.
ConvexExpansion ignorance_expansion(const DensityOperator& w, const Magnitude& privileged,
                                    double comm_tol = 1e-9);

// sum_n v_n P0_n + sum_j w_j P_j: the ready eigenspace of m0 carries weight
// 1 - epsilon spread over its canonical basis, the remaining pointer
// eigenvalues (ascending) carry the leak weights, each spread uniformly over
// its eigenspace.
DensityOperator realistic_ready_state(const Magnitude& pointer, double ready_value,
                                      std::span<const double> sub_weights,
                                      std::span<const double> leak_weights, double epsilon);

}  // namespace mlab
