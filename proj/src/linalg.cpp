#include "measurelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mlab {

namespace {

void require_finite(const DenseMatrix& m) {
  if (m.rows() <= 0 || m.cols() <= 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (!m.allFinite()) {
    throw PreconditionError("matrix entries must be finite");
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(os.str());
  }
}

// Removes the components of `v` along `basis` twice (classical Gram-Schmidt
// with one re-orthogonalization pass).
void orthogonalize(DenseVector& v, const std::vector<DenseVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      v -= b * b.dot(v);
    }
  }
}

// Fixes the global phase so the largest-magnitude entry (lowest index on
// ties) is real and positive.
DenseVector canonical_phase(DenseVector v) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-12) {
      best = a;
      pivot = i;
    }
  }
  if (best > 0.0) {
    v *= std::conj(v(pivot)) / best;
  }
  return v;
}

}  // namespace

ComplexMatrix::ComplexMatrix() : m_(DenseMatrix::Zero(1, 1)) {}

ComplexMatrix::ComplexMatrix(DenseMatrix m) : m_(std::move(m)) { require_finite(m_); }

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  m_.resize(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw DimensionError("ragged matrix initializer");
    }
    Eigen::Index j = 0;
    for (const auto& x : row) m_(i, j++) = x;
    ++i;
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(DenseMatrix::Identity(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n)));
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(DenseMatrix::Zero(static_cast<Eigen::Index>(rows),
                                         static_cast<Eigen::Index>(cols)));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::outer(const DenseVector& ket, const DenseVector& bra) {
  return ComplexMatrix(ket * bra.adjoint());
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                            std::span<const Complex> entries) {
  if (entries.size() != rows * cols) {
    throw DimensionError("entry count does not match rows * cols");
  }
  DenseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * cols + j];
    }
  }
  return ComplexMatrix(std::move(m));
}

std::vector<Complex> ComplexMatrix::row_major() const {
  std::vector<Complex> out;
  out.reserve(rows() * cols());
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) out.push_back(m_(i, j));
  }
  return out;
}

double ComplexMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && (m_ - m_.adjoint()).norm() <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  const auto n = m_.rows();
  return (m_.adjoint() * m_ - DenseMatrix::Identity(n, n)).norm() <= tol;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw DimensionError("sum: shape mismatch");
  return ComplexMatrix(DenseMatrix(m_ + o.m_));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) {
    throw DimensionError("difference: shape mismatch");
  }
  return ComplexMatrix(DenseMatrix(m_ - o.m_));
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols() != o.rows()) throw DimensionError("product: inner dimensions differ");
  return ComplexMatrix(DenseMatrix(m_ * o.m_));
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
  return ComplexMatrix(DenseMatrix(m_ * s));
}

DenseVector ComplexMatrix::operator*(const DenseVector& v) const {
  if (cols() != static_cast<std::size_t>(v.size())) {
    throw DimensionError("matrix-vector product: dimension mismatch");
  }
  return m_ * v;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(DenseVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw DimensionError("state vector must be non-empty");
  if (!v_.allFinite()) throw PreconditionError("state amplitudes must be finite");
  if (std::abs(v_.norm() - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "state vector is not normalized (norm " << v_.norm() << ")";
    throw PreconditionError(os.str());
  }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector([&] {
        DenseVector v(static_cast<Eigen::Index>(amplitudes.size()));
        Eigen::Index i = 0;
        for (const auto& a : amplitudes) v(i++) = a;
        return v;
      }()) {}

StateVector StateVector::normalized(DenseVector v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw PreconditionError("cannot normalize a zero or non-finite vector");
  }
  return StateVector(DenseVector(v / n));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

ComplexMatrix StateVector::projector() const { return ComplexMatrix::outer(v_, v_); }

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto na = a.dense().size();
  const auto nb = b.dense().size();
  DenseVector out(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    out.segment(i * nb, nb) = a.dense()(i) * b.dense();
  }
  return StateVector::normalized(std::move(out));
}

// ---------------------------------------------------------------------------

bool Interval::contains(double x) const {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Interval::is_bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool Interval::overlaps(const Interval& o) const {
  // Empty intersection iff one ends before the other starts.
  auto ends_before = [](const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return true;
    if (a.hi == b.lo) return !(a.hi_closed && b.lo_closed);
    return false;
  };
  return !ends_before(*this, o) && !ends_before(o, *this);
}

// ---------------------------------------------------------------------------

SpectralFamily::SpectralFamily(std::vector<SpectralPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw PreconditionError("spectral family must be non-empty");
  const std::size_t n = pairs_.front().projector.rows();
  DenseMatrix sum = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& p = pairs_[i].projector;
    if (p.rows() != n || p.cols() != n) throw DimensionError("spectral projectors differ in size");
    if (!std::isfinite(pairs_[i].value)) throw PreconditionError("eigenvalue must be finite");
    if (i > 0 && !(pairs_[i].value > pairs_[i - 1].value)) {
      throw PreconditionError("eigenvalues must be strictly increasing");
    }
    if (!p.is_hermitian(kTolerance)) throw PreconditionError("spectral projector not Hermitian");
    if ((p.dense() * p.dense() - p.dense()).norm() > kTolerance) {
      throw PreconditionError("spectral projector not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((p.dense() * pairs_[j].projector.dense()).norm() > kTolerance) {
        throw PreconditionError("spectral projectors not mutually orthogonal");
      }
    }
    sum += p.dense();
  }
  if ((sum - DenseMatrix::Identity(sum.rows(), sum.cols())).norm() > kTolerance) {
    throw PreconditionError("spectral projectors do not sum to the identity");
  }
}

std::vector<double> SpectralFamily::values() const {
  std::vector<double> v;
  v.reserve(pairs_.size());
  for (const auto& p : pairs_) v.push_back(p.value);
  return v;
}

bool SpectralFamily::has_value(double value, double tol) const {
  return std::any_of(pairs_.begin(), pairs_.end(),
                     [&](const SpectralPair& p) { return std::abs(p.value - value) <= tol; });
}

const ComplexMatrix& SpectralFamily::projector_for(double value, double tol) const {
  for (const auto& p : pairs_) {
    if (std::abs(p.value - value) <= tol) return p.projector;
  }
  std::ostringstream os;
  os << "value " << value << " is not in the spectrum";
  throw PreconditionError(os.str());
}

ComplexMatrix SpectralFamily::reconstruct() const {
  DenseMatrix sum = DenseMatrix::Zero(static_cast<Eigen::Index>(dim()),
                                      static_cast<Eigen::Index>(dim()));
  for (const auto& p : pairs_) sum += p.value * p.projector.dense();
  return ComplexMatrix(std::move(sum));
}

// ---------------------------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto& A = a.dense();
  const auto& B = b.dense();
  const auto br = B.rows();
  const auto bc = B.cols();
  DenseMatrix out(A.rows() * br, A.cols() * bc);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = A(i, j) * B;
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  return ComplexMatrix(DenseMatrix(a.dense().adjoint()));
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  return a.dense().trace();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) throw DimensionError("commutator: dimension mismatch");
  return ComplexMatrix(DenseMatrix(a.dense() * b.dense() - b.dense() * a.dense()));
}

ComplexMatrix spectral_projector(const SpectralFamily& fam, const Interval& delta) {
  const auto n = static_cast<Eigen::Index>(fam.dim());
  DenseMatrix sum = DenseMatrix::Zero(n, n);
  for (const auto& p : fam.pairs()) {
    if (delta.contains(p.value)) sum += p.projector.dense();
  }
  return ComplexMatrix(std::move(sum));
}

SpectralFamily eig_hermitian(const ComplexMatrix& a, double degeneracy_tol) {
  require_square(a, "eig_hermitian");
  if (!a.is_hermitian(SpectralFamily::kTolerance)) {
    throw PreconditionError("eig_hermitian: matrix is not Hermitian");
  }
  // Symmetrize exactly so the solver sees a self-adjoint input.
  const DenseMatrix h = 0.5 * (a.dense() + a.dense().adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig_hermitian: eigensolver did not converge");
  }
  const auto& evals = solver.eigenvalues();  // ascending
  const auto& evecs = solver.eigenvectors();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  const double gap = degeneracy_tol * scale;

  std::vector<SpectralPair> pairs;
  Eigen::Index start = 0;
  const auto n = evals.size();
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && evals(end) - evals(end - 1) <= gap) ++end;
    const auto cols = evecs.middleCols(start, end - start);
    const double mean = evals.segment(start, end - start).mean();
    pairs.push_back({mean, ComplexMatrix(DenseMatrix(cols * cols.adjoint()))});
    start = end;
  }
  return SpectralFamily(std::move(pairs));
}

std::vector<StateVector> range_basis(const ComplexMatrix& projector) {
  require_square(projector, "range_basis");
  const auto& P = projector.dense();
  const auto n = P.rows();
  const double threshold = 0.5 / std::sqrt(static_cast<double>(n));
  std::vector<DenseVector> chosen;
  std::vector<DenseVector> residual(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) residual[static_cast<std::size_t>(j)] = P.col(j);
  while (true) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < residual.size(); ++j) {
      orthogonalize(residual[j], chosen);
      const double nrm = residual[j].norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = j;
      }
    }
    if (best_norm < threshold) break;
    chosen.push_back(canonical_phase(residual[best] / best_norm));
  }
  const double rank = P.trace().real();
  if (std::abs(rank - static_cast<double>(chosen.size())) > 1e-6) {
    throw NumericError("range_basis: input is not an orthogonal projector");
  }
  std::vector<StateVector> out;
  out.reserve(chosen.size());
  for (auto& v : chosen) out.push_back(StateVector::normalized(std::move(v)));
  return out;
}

ComplexMatrix complete_to_unitary(
    std::span<const std::pair<StateVector, StateVector>> pairs) {
  if (pairs.empty()) throw PreconditionError("complete_to_unitary: no pairs supplied");
  const std::size_t n = pairs.front().first.dim();
  for (const auto& [in, out] : pairs) {
    if (in.dim() != n || out.dim() != n) {
      throw DimensionError("complete_to_unitary: all states must share one dimension");
    }
  }
  if (pairs.size() > n) throw PreconditionError("complete_to_unitary: more pairs than dimensions");

  auto check_orthonormal = [&](bool inputs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto& a = inputs ? pairs[i].first : pairs[i].second;
        const auto& b = inputs ? pairs[j].first : pairs[j].second;
        if (std::abs(a.inner(b)) > 1e-10) {
          throw PreconditionError(inputs ? "complete_to_unitary: inputs are not orthonormal"
                                         : "complete_to_unitary: outputs are not orthonormal");
        }
      }
    }
  };
  check_orthonormal(true);
  check_orthonormal(false);

  const auto dim = static_cast<Eigen::Index>(n);
  const double threshold = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  auto complement = [&](std::vector<DenseVector> basis) {
    const std::size_t given = basis.size();
    for (Eigen::Index i = 0; i < dim && basis.size() < n; ++i) {
      DenseVector e = DenseVector::Unit(dim, i);
      orthogonalize(e, basis);
      const double nrm = e.norm();
      if (nrm >= threshold) basis.push_back(e / nrm);
    }
    if (basis.size() != n) throw NumericError("complete_to_unitary: complement construction failed");
    return std::vector<DenseVector>(basis.begin() + static_cast<std::ptrdiff_t>(given), basis.end());
  };

  std::vector<DenseVector> ins;
  std::vector<DenseVector> outs;
  for (const auto& [in, out] : pairs) {
    ins.push_back(in.dense());
    outs.push_back(out.dense());
  }
  const auto cin = complement(ins);
  const auto cout = complement(outs);

  DenseMatrix u = DenseMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < ins.size(); ++i) u += outs[i] * ins[i].adjoint();
  for (std::size_t i = 0; i < cin.size(); ++i) u += cout[i] * cin[i].adjoint();
  return ComplexMatrix(std::move(u));
}

}  // namespace mlab
