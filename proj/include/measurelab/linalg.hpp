#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "measurelab/errors.hpp"

namespace mlab {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Dense complex matrix with finite entries and positive dimensions. Immutable
// through its public surface; all arithmetic returns new values.
class ComplexMatrix {
 public:
  // 1x1 zero, so the type is regular.
  ComplexMatrix();
  explicit ComplexMatrix(DenseMatrix m);
  // Row-major nested initializer: {{a, b}, {c, d}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> entries);
  // |v><v|
  static ComplexMatrix outer(const DenseVector& ket, const DenseVector& bra);
  // Row-major entries.
  static ComplexMatrix from_row_major(std::size_t rows, std::size_t cols,
                                      std::span<const Complex> entries);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const { return m_.rows() == m_.cols(); }

  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  const DenseMatrix& dense() const { return m_; }
  std::vector<Complex> row_major() const;

  double norm() const { return m_.norm(); }  // Frobenius
  double max_abs() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Complex s) const;
  DenseVector operator*(const DenseVector& v) const;
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

  bool operator==(const ComplexMatrix& o) const {
    return m_.rows() == o.m_.rows() && m_.cols() == o.m_.cols() && m_ == o.m_;
  }

 private:
  DenseMatrix m_;
};

// Unit vector of a finite Hilbert space (a pure state up to phase).
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Throws PreconditionError unless | ||v|| - 1 | <= 1e-12.
  explicit StateVector(DenseVector amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  // Rescales any nonzero vector to unit norm.
  static StateVector normalized(DenseVector v);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  Complex operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }
  const DenseVector& dense() const { return v_; }

  Complex inner(const StateVector& other) const { return v_.dot(other.v_); }
  ComplexMatrix projector() const;

 private:
  DenseVector v_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

// Real interval with optionally open ends. Singletons model sharp values.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval point(double v) { return {v, v, true, true}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval real_line() { return {}; }

  bool contains(double x) const;
  bool is_point() const { return lo == hi; }
  bool is_bounded() const;
  bool overlaps(const Interval& o) const;

  bool operator==(const Interval&) const = default;
};

struct SpectralPair {
  double value;
  ComplexMatrix projector;
};

// Spectral resolution of a self-adjoint operator: strictly increasing
// eigenvalues with orthogonal projectors summing to the identity.
class SpectralFamily {
 public:
  static constexpr double kTolerance = 1e-10;

  // Validates every invariant; throws PreconditionError on violation.
  explicit SpectralFamily(std::vector<SpectralPair> pairs);

  const std::vector<SpectralPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  std::size_t dim() const { return pairs_.front().projector.rows(); }
  std::vector<double> values() const;

  // Projector for a single eigenvalue (matched within `tol`); throws
  // PreconditionError if the value is not in the spectrum.
  const ComplexMatrix& projector_for(double value, double tol = 1e-9) const;
  bool has_value(double value, double tol = 1e-9) const;

  // Sum_k value_k P_k.
  ComplexMatrix reconstruct() const;

 private:
  std::vector<SpectralPair> pairs_;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Default grouping tolerance for eigenvalues, relative to the largest
// absolute eigenvalue (absolute when the operator is zero).
inline constexpr double kDegeneracyTolerance = 1e-9;

ComplexMatrix spectral_projector(const SpectralFamily& fam, const Interval& delta);

// Eigendecomposition of a Hermitian matrix, eigenvalues within
// `degeneracy_tol` (relative) merged into one eigenspace.
SpectralFamily eig_hermitian(const ComplexMatrix& a,
                             double degeneracy_tol = kDegeneracyTolerance);

// Canonical unitary extension of a partial isometry given by orthonormal
// input/output pairs. The orthogonal complements of the inputs and of the
// outputs are each built by re-orthogonalized Gram-Schmidt over the standard
// basis in index order, and the i-th complement input maps to the i-th
// complement output. Bit-for-bit reproducible for identical inputs.
ComplexMatrix complete_to_unitary(
    std::span<const std::pair<StateVector, StateVector>> pairs);

// Orthonormal basis of the range of a projector, canonical up to the
// projector itself: Gram-Schmidt over the projected standard basis.
std::vector<StateVector> range_basis(const ComplexMatrix& projector);

}  // namespace mlab
