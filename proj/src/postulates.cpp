#include "measurelab/postulates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mlab {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << got << " vs " << want << ")";
    throw DimensionError(os.str());
  }
}

void require_disjoint(std::span<const Interval> partition) {
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (partition[i].overlaps(partition[j])) {
        throw PreconditionError("partition intervals must be disjoint");
      }
    }
  }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_hermitian(kTolerance)) {
    throw PreconditionError("density operator must be Hermitian");
  }
  const Complex tr = trace(matrix_);
  if (std::abs(tr - 1.0) > kTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "density operator must have unit trace (got " << tr.real() << ")";
    throw PreconditionError(os.str());
  }
  const DenseMatrix h = 0.5 * (matrix_.dense() + matrix_.dense().adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("density operator: eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -kTolerance) {
    throw PreconditionError("density operator must be positive semidefinite");
  }
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t n) {
  return DensityOperator(ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(tensor(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------

Magnitude::Magnitude(std::string name, ComplexMatrix op, double degeneracy_tol)
    : name_(std::move(name)), op_(std::move(op)), spectrum_(eig_hermitian(op_, degeneracy_tol)) {
  if ((spectrum_.reconstruct() - op_).norm() > 1e-9) {
    throw NumericError("magnitude: spectral family does not reconstruct the operator");
  }
}

std::vector<Interval> Magnitude::sharp_partition() const {
  std::vector<Interval> cells;
  for (const auto& p : spectrum_.pairs()) cells.push_back(Interval::point(p.value));
  return cells;
}

Magnitude spin_z() { return Magnitude("sigma_z", ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}); }
Magnitude spin_x() { return Magnitude("sigma_x", ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}}); }
Magnitude spin_y() {
  return Magnitude("sigma_y", ComplexMatrix{{0.0, -0.5 * kI}, {0.5 * kI, 0.0}});
}

Magnitude diagonal_magnitude(std::string name, std::span<const double> values) {
  return Magnitude(std::move(name), ComplexMatrix::diagonal(values));
}

StateVector spin_up() { return StateVector::basis(2, 0); }
StateVector spin_down() { return StateVector::basis(2, 1); }

// ---------------------------------------------------------------------------

OutcomeDistribution::OutcomeDistribution(std::vector<Outcome> entries)
    : entries_(std::move(entries)) {
  double sum = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!std::isfinite(e.value) || !std::isfinite(e.probability)) {
      throw PreconditionError("outcome distribution entries must be finite");
    }
    if (e.probability < -kTolerance || e.probability > 1.0 + kTolerance) {
      throw PreconditionError("outcome probability outside [0, 1]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].value == e.value) throw PreconditionError("outcome values must be distinct");
    }
    sum += e.probability;
  }
  if (!entries_.empty() && std::abs(sum - 1.0) > kTolerance) {
    throw PreconditionError("outcome probabilities must sum to 1");
  }
}

double OutcomeDistribution::probability_of(double value, double tol) const {
  for (const auto& e : entries_) {
    if (std::abs(e.value - value) <= tol) return e.probability;
  }
  return 0.0;
}

std::size_t OutcomeDistribution::support_size(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [&](const Outcome& e) { return e.probability > threshold; }));
}

double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b,
                       double value_tol) {
  double l1 = 0.0;
  for (const auto& e : a.entries()) l1 += std::abs(e.probability - b.probability_of(e.value, value_tol));
  for (const auto& e : b.entries()) {
    const bool shared = std::any_of(a.entries().begin(), a.entries().end(), [&](const Outcome& x) {
      return std::abs(x.value - e.value) <= value_tol;
    });
    if (!shared) l1 += std::abs(e.probability);
  }
  return 0.5 * l1;
}

// ---------------------------------------------------------------------------

double born_pure(const StateVector& psi, const Magnitude& a, const Interval& delta) {
  require_dim(psi.dim(), a.dim(), "born_pure");
  const DenseVector p = a.projector(delta) * psi.dense();
  return std::clamp(psi.dense().dot(p).real(), 0.0, 1.0);
}

double born_mixed(const DensityOperator& w, const Magnitude& a, const Interval& delta) {
  require_dim(w.dim(), a.dim(), "born_mixed");
  // Tr(W P) without forming the product.
  const double pr =
      (w.matrix().dense().transpose().cwiseProduct(a.projector(delta).dense())).sum().real();
  return std::clamp(pr, 0.0, 1.0);
}

OutcomeDistribution outcome_distribution(const DensityOperator& w, const Magnitude& a) {
  std::vector<Outcome> entries;
  for (const auto& cell : a.sharp_partition()) {
    entries.push_back({cell.lo, born_mixed(w, a, cell)});
  }
  return OutcomeDistribution(std::move(entries));
}

std::vector<DeterminateProperty> eigenlink_properties(const StateVector& psi,
                                                      const Magnitude& a,
                                                      std::span<const Interval> partition,
                                                      double tol) {
  require_dim(psi.dim(), a.dim(), "eigenlink_properties");
  require_disjoint(partition);
  std::vector<DeterminateProperty> props;
  for (const auto& delta : partition) {
    const DenseVector projected = a.projector(delta) * psi.dense();
    if ((projected - psi.dense()).norm() <= tol) props.push_back({a.name(), delta});
  }
  return props;
}

StateVector collapse_pure(const StateVector& psi, const Magnitude& a, const Interval& delta) {
  const double pr = born_pure(psi, a, delta);
  if (!(pr > kMinConditioningProbability)) {
    throw ZeroProbabilityError("collapse_pure: outcome has zero probability");
  }
  return StateVector::normalized(a.projector(delta) * psi.dense());
}

DensityOperator collapse_mixed(const DensityOperator& w, const Magnitude& a,
                               const Interval& delta) {
  const double pr = born_mixed(w, a, delta);
  if (!(pr > kMinConditioningProbability)) {
    throw ZeroProbabilityError("collapse_mixed: outcome has zero probability");
  }
  const ComplexMatrix p = a.projector(delta);
  DenseMatrix out = p.dense() * w.matrix().dense() * p.dense();
  // Renormalize with the computed trace so the result is exactly unit trace.
  out /= out.trace();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(ComplexMatrix(std::move(out)));
}

ComplexMatrix propagator(const Magnitude& h, double t) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  DenseMatrix u = DenseMatrix::Zero(n, n);
  for (const auto& p : h.spectrum().pairs()) {
    u += std::exp(-kI * p.value * t) * p.projector.dense();
  }
  return ComplexMatrix(std::move(u));
}

DensityOperator evolve(const Magnitude& h, double t, const DensityOperator& w) {
  require_dim(w.dim(), h.dim(), "evolve");
  if (t == 0.0) return w;
  const ComplexMatrix u = propagator(h, t);
  DenseMatrix out = u.dense() * w.matrix().dense() * u.dense().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(ComplexMatrix(std::move(out)));
}

// ---------------------------------------------------------------------------

double OutcomeRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double representative_value(const Interval& cell, const Magnitude& a) {
  if (cell.is_bounded()) return 0.5 * (cell.lo + cell.hi);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& p : a.spectrum().pairs()) {
    if (cell.contains(p.value)) {
      sum += p.value;
      ++count;
    }
  }
  if (count == 0) throw PreconditionError("cell contains no eigenvalue");
  return sum / static_cast<double>(count);
}

SampledOutcome sample_outcome(const DensityOperator& w, const Magnitude& a,
                              std::span<const Interval> partition, OutcomeRng& rng) {
  require_dim(w.dim(), a.dim(), "sample_outcome");
  if (partition.empty()) throw PreconditionError("sample_outcome: empty partition");
  require_disjoint(partition);
  for (const auto& p : a.spectrum().pairs()) {
    const bool covered = std::any_of(partition.begin(), partition.end(),
                                     [&](const Interval& c) { return c.contains(p.value); });
    if (!covered) throw PreconditionError("sample_outcome: partition does not cover the spectrum");
  }

  std::vector<double> probs;
  probs.reserve(partition.size());
  for (const auto& cell : partition) probs.push_back(born_mixed(w, a, cell));

  // Inverse-CDF over cells; cells at or below the conditioning floor are
  // skipped so they can never be drawn.
  double total = 0.0;
  for (double p : probs) {
    if (p > kMinConditioningProbability) total += p;
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t chosen = partition.size();
  std::size_t last_live = partition.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] > kMinConditioningProbability)) continue;
    last_live = i;
    acc += probs[i];
    if (u < acc) {
      chosen = i;
      break;
    }
  }
  if (chosen == partition.size()) chosen = last_live;
  if (chosen == partition.size()) throw NumericError("sample_outcome: no cell has positive probability");

  const Interval& cell = partition[chosen];
  return {chosen, representative_value(cell, a), collapse_mixed(w, a, cell)};
}

SampledOutcome sample_outcome(const DensityOperator& w, const Magnitude& a,
                              std::span<const Interval> partition, std::uint64_t seed) {
  OutcomeRng rng(seed);
  return sample_outcome(w, a, partition, rng);
}

}  // namespace mlab
