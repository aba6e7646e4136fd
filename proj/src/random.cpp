#include "measurelab/random.hpp"

#include <cmath>
#include <numbers>

namespace mlab {

std::size_t RandomSource::index(std::size_t n) {
  const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double RandomSource::gaussian() {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex RandomSource::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix RandomSource::matrix(std::size_t rows, std::size_t cols) {
  DenseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = complex_gaussian();
  }
  return ComplexMatrix(std::move(m));
}

StateVector RandomSource::state(std::size_t dim) {
  DenseVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_gaussian();
  return StateVector::normalized(std::move(v));
}

ComplexMatrix RandomSource::unitary(std::size_t dim) {
  const DenseMatrix g = matrix(dim, dim).dense();
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ();
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return ComplexMatrix(std::move(q));
}

ComplexMatrix RandomSource::hermitian(std::size_t dim) {
  const DenseMatrix g = matrix(dim, dim).dense();
  return ComplexMatrix(DenseMatrix(0.5 * (g + g.adjoint())));
}

DensityOperator RandomSource::density(std::size_t dim) {
  const DenseMatrix g = matrix(dim, dim).dense();
  DenseMatrix w = g * g.adjoint();
  w /= w.trace();
  w = 0.5 * (w + w.adjoint()).eval();
  return DensityOperator(ComplexMatrix(std::move(w)));
}

ComplexMatrix RandomSource::projector(std::size_t dim, std::size_t rank) {
  const DenseMatrix u = unitary(dim).dense();
  const auto cols = u.leftCols(static_cast<Eigen::Index>(rank));
  return ComplexMatrix(DenseMatrix(cols * cols.adjoint()));
}

}  // namespace mlab
