#include "measurelab/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mlab {

namespace {

StateVector first_eigenvector(const Magnitude& a, double value, bool require_simple) {
  const ComplexMatrix& p = a.spectrum().projector_for(value);
  const auto basis = range_basis(p);
  if (require_simple && basis.size() != 1) {
    std::ostringstream os;
    os << a.name() << ": eigenvalue " << value << " is degenerate";
    throw PreconditionError(os.str());
  }
  return basis.front();
}

void validate_scheme_inputs(const Magnitude& measured, const Magnitude& pointer,
                            double ready_value, const Calibration& calibration) {
  if (calibration.size() == 0) throw PreconditionError("calibration must not be empty");
  if (!pointer.spectrum().has_value(ready_value)) {
    throw PreconditionError("ready value is not a pointer eigenvalue");
  }
  for (const auto& e : calibration.entries()) {
    if (!measured.spectrum().has_value(e.system_value)) {
      std::ostringstream os;
      os << "calibrated value " << e.system_value << " is not in the spectrum of "
         << measured.name();
      throw PreconditionError(os.str());
    }
    if (!pointer.spectrum().has_value(e.pointer_value)) {
      std::ostringstream os;
      os << "pointer value " << e.pointer_value << " is not in the spectrum of " << pointer.name();
      throw PreconditionError(os.str());
    }
    if (std::abs(e.pointer_value - ready_value) <= 1e-9) {
      throw PreconditionError("calibrated pointer values must differ from the ready value");
    }
  }
  if (pointer.dim() < calibration.size() + 1) {
    throw PreconditionError("apparatus dimension must exceed the number of calibrated values");
  }
}

MeasurementScheme assemble(const Magnitude& measured, const Magnitude& pointer,
                           double ready_value, const Calibration& calibration,
                           const std::vector<std::pair<StateVector, StateVector>>& pairs,
                           double duration) {
  ComplexMatrix u = complete_to_unitary(pairs);
  if (!u.is_unitary(kVerdictTolerance)) throw NumericError("completed coupling is not unitary");
  return MeasurementScheme{measured.dim(), pointer.dim(), measured,   pointer,
                           ready_value,    calibration,   std::move(u), duration};
}

}  // namespace

Calibration::Calibration(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i].system_value) || !std::isfinite(entries_[i].pointer_value)) {
      throw PreconditionError("calibration values must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[i].system_value == entries_[j].system_value ||
          entries_[i].pointer_value == entries_[j].pointer_value) {
        throw PreconditionError("calibration must be one-one");
      }
    }
  }
}

std::optional<double> Calibration::pointer_for(double system_value, double tol) const {
  for (const auto& e : entries_) {
    if (std::abs(e.system_value - system_value) <= tol) return e.pointer_value;
  }
  return std::nullopt;
}

std::optional<double> Calibration::system_for(double pointer_value, double tol) const {
  for (const auto& e : entries_) {
    if (std::abs(e.pointer_value - pointer_value) <= tol) return e.system_value;
  }
  return std::nullopt;
}

ComplexMatrix MeasurementScheme::composite_pointer() const {
  return tensor(ComplexMatrix::identity(system_dim), pointer.op());
}

StateVector MeasurementScheme::ready_state() const {
  return first_eigenvector(pointer, ready_value, false);
}

StateVector eigenvector(const Magnitude& a, double value) {
  return first_eigenvector(a, value, true);
}

MeasurementScheme build_ideal_scheme(const Magnitude& measured, const Magnitude& pointer,
                                     double ready_value, const Calibration& calibration,
                                     double duration) {
  validate_scheme_inputs(measured, pointer, ready_value, calibration);
  const StateVector ready = first_eigenvector(pointer, ready_value, false);
  std::vector<std::pair<StateVector, StateVector>> pairs;
  for (const auto& e : calibration.entries()) {
    const StateVector a = eigenvector(measured, e.system_value);
    const StateVector m = first_eigenvector(pointer, e.pointer_value, false);
    pairs.emplace_back(tensor(a, ready), tensor(a, m));
  }
  return assemble(measured, pointer, ready_value, calibration, pairs, duration);
}

MeasurementScheme build_disturbance_scheme(const Magnitude& measured, const Magnitude& pointer,
                                           double ready_value, const Calibration& calibration,
                                           const std::map<double, StateVector>& post_system_states,
                                           double duration) {
  validate_scheme_inputs(measured, pointer, ready_value, calibration);
  const StateVector ready = first_eigenvector(pointer, ready_value, false);
  std::vector<std::pair<StateVector, StateVector>> pairs;
  for (const auto& e : calibration.entries()) {
    const auto it = std::find_if(post_system_states.begin(), post_system_states.end(),
                                 [&](const auto& kv) {
                                   return std::abs(kv.first - e.system_value) <= 1e-9;
                                 });
    if (it == post_system_states.end()) {
      std::ostringstream os;
      os << "no post-measurement system state for calibrated value " << e.system_value;
      throw PreconditionError(os.str());
    }
    if (it->second.dim() != measured.dim()) {
      throw DimensionError("post-measurement system state has the wrong dimension");
    }
    const StateVector a = eigenvector(measured, e.system_value);
    const StateVector m = first_eigenvector(pointer, e.pointer_value, false);
    pairs.emplace_back(tensor(a, ready), tensor(it->second, m));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(pairs[i].second.inner(pairs[j].second)) > 1e-10) {
        throw PreconditionError("disturbance image vectors are not orthonormal");
      }
    }
  }
  return assemble(measured, pointer, ready_value, calibration, pairs, duration);
}

bool PropertyRevealingReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const PropertyRevealingEntry& e) { return e.pass; });
}

PropertyRevealingReport check_property_revealing(const MeasurementScheme& scheme, double tol) {
  const StateVector ready = scheme.ready_state();
  const ComplexMatrix big_m = scheme.composite_pointer();
  PropertyRevealingReport report;
  for (const auto& e : scheme.calibration.entries()) {
    const StateVector a = eigenvector(scheme.measured, e.system_value);
    const DenseVector v = scheme.coupling * tensor(a, ready).dense();
    const double residual = (big_m * v - e.pointer_value * v).norm();
    report.entries.push_back({e.system_value, e.pointer_value, residual, residual <= tol});
  }
  return report;
}

DensityOperator final_state(const MeasurementScheme& scheme, const DensityOperator& initial) {
  if (initial.dim() != scheme.coupling.rows()) {
    throw DimensionError("final_state: initial state does not live on the composite space");
  }
  const auto& u = scheme.coupling.dense();
  DenseMatrix out = u * initial.matrix().dense() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(ComplexMatrix(std::move(out)));
}

OutcomeDistribution pointer_distribution(const MeasurementScheme& scheme,
                                         const DensityOperator& composite) {
  if (composite.dim() != scheme.coupling.rows()) {
    throw DimensionError("pointer_distribution: state does not live on the composite space");
  }
  std::vector<Outcome> entries;
  const ComplexMatrix id = ComplexMatrix::identity(scheme.system_dim);
  for (const auto& p : scheme.pointer.spectrum().pairs()) {
    const ComplexMatrix proj = tensor(id, p.projector);
    const double pr = trace(composite.matrix() * proj).real();
    entries.push_back({p.value, std::clamp(pr, 0.0, 1.0)});
  }
  return OutcomeDistribution(std::move(entries));
}

ReproducibilityReport check_probability_reproducibility(const MeasurementScheme& scheme,
                                                        const DensityOperator& system_initial,
                                                        const DensityOperator& apparatus_initial,
                                                        double tol) {
  if (system_initial.dim() != scheme.system_dim ||
      apparatus_initial.dim() != scheme.apparatus_dim) {
    throw DimensionError("check_probability_reproducibility: dimension mismatch");
  }
  const OutcomeDistribution sys = outcome_distribution(system_initial, scheme.measured);
  const DensityOperator fin = final_state(scheme, tensor(system_initial, apparatus_initial));
  const OutcomeDistribution ptr = pointer_distribution(scheme, fin);

  double dev = 0.0;
  for (const auto& e : ptr.entries()) {
    const auto a = scheme.calibration.system_for(e.value);
    const double expected = a ? sys.probability_of(*a) : 0.0;
    dev = std::max(dev, std::abs(e.probability - expected));
  }
  for (const auto& e : sys.entries()) {
    if (!scheme.calibration.pointer_for(e.value)) dev = std::max(dev, e.probability);
  }
  return {sys, ptr, dev, dev <= tol};
}

// ---------------------------------------------------------------------------

ConvexExpansion::ConvexExpansion(std::vector<ConvexTerm> terms) : terms_(std::move(terms)) {
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (t.weight < -kTolerance || t.weight > 1.0 + kTolerance) {
      throw PreconditionError("convex weight outside [0, 1]");
    }
    const auto& p = t.pure.dense();
    if (!t.pure.is_hermitian(kTolerance) || (p * p - p).norm() > kTolerance ||
        std::abs(p.trace() - 1.0) > kTolerance) {
      throw PreconditionError("convex term is not a rank-1 projector");
    }
    sum += t.weight;
  }
  if (std::abs(sum - 1.0) > kTolerance) throw PreconditionError("convex weights must sum to 1");
}

ComplexMatrix ConvexExpansion::assemble() const {
  const auto n = static_cast<Eigen::Index>(terms_.front().pure.rows());
  DenseMatrix sum = DenseMatrix::Zero(n, n);
  for (const auto& t : terms_) sum += t.weight * t.pure.dense();
  return ComplexMatrix(std::move(sum));
}

double ConvexExpansion::weight_of(double value, double tol) const {
  double w = 0.0;
  for (const auto& t : terms_) {
    if (std::abs(t.value - value) <= tol) w += t.weight;
  }
  return w;
}

ConvexExpansion ignorance_expansion(const DensityOperator& w, const Magnitude& privileged,
                                    double comm_tol) {
  if (w.dim() != privileged.dim()) throw DimensionError("ignorance_expansion: dimension mismatch");
  const double comm = commutator(w.matrix(), privileged.op()).norm();
  if (comm > comm_tol) {
    std::ostringstream os;
    os << "state does not commute with " << privileged.name() << " (||[W, A]|| = " << comm
       << "); no privileged expansion exists";
    throw PreconditionError(os.str());
  }
  std::vector<ConvexTerm> terms;
  for (const auto& pair : privileged.spectrum().pairs()) {
    const auto basis = range_basis(pair.projector);
    const auto r = static_cast<Eigen::Index>(basis.size());
    DenseMatrix v(static_cast<Eigen::Index>(w.dim()), r);
    for (Eigen::Index k = 0; k < r; ++k) v.col(k) = basis[static_cast<std::size_t>(k)].dense();
    const DenseMatrix block = v.adjoint() * w.matrix().dense() * v;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(0.5 * (block + block.adjoint()));
    if (solver.info() != Eigen::Success) throw NumericError("ignorance_expansion: eigensolver failed");
    for (Eigen::Index k = 0; k < r; ++k) {
      const double weight = solver.eigenvalues()(k);
      if (weight <= 1e-12) continue;
      const DenseVector vec = v * solver.eigenvectors().col(k);
      terms.push_back({weight, ComplexMatrix::outer(vec, vec), pair.value});
    }
  }
  return ConvexExpansion(std::move(terms));
}

DensityOperator realistic_ready_state(const Magnitude& pointer, double ready_value,
                                      std::span<const double> sub_weights,
                                      std::span<const double> leak_weights, double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) throw PreconditionError("epsilon must lie in [0, 1)");
  auto sum_of = [](std::span<const double> ws) {
    double s = 0.0;
    for (double w : ws) {
      if (!(w >= 0.0)) throw PreconditionError("weights must be non-negative");
      s += w;
    }
    return s;
  };
  if (std::abs(sum_of(sub_weights) - (1.0 - epsilon)) > 1e-10) {
    throw PreconditionError("ready sub-weights must sum to 1 - epsilon");
  }
  if (std::abs(sum_of(leak_weights) - epsilon) > 1e-10) {
    throw PreconditionError("leak weights must sum to epsilon");
  }
  const auto ready_basis = range_basis(pointer.spectrum().projector_for(ready_value));
  if (ready_basis.size() != sub_weights.size()) {
    throw PreconditionError("one sub-weight is required per ready eigenspace dimension");
  }
  std::vector<const SpectralPair*> others;
  for (const auto& p : pointer.spectrum().pairs()) {
    if (std::abs(p.value - ready_value) > 1e-9) others.push_back(&p);
  }
  if (others.size() != leak_weights.size()) {
    throw PreconditionError("one leak weight is required per non-ready pointer value");
  }
  const auto n = static_cast<Eigen::Index>(pointer.dim());
  DenseMatrix w = DenseMatrix::Zero(n, n);
  for (std::size_t k = 0; k < ready_basis.size(); ++k) {
    w += sub_weights[k] * ready_basis[k].projector().dense();
  }
  for (std::size_t j = 0; j < others.size(); ++j) {
    const auto& proj = others[j]->projector.dense();
    w += leak_weights[j] / proj.trace().real() * proj;
  }
  return DensityOperator(ComplexMatrix(std::move(w)));
}

}  // namespace mlab
