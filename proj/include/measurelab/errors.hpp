#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit together (non-square, dims mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented precondition (non-Hermitian operator,
// non-normalized amplitudes, non-commuting pair, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an outcome whose probability is (numerically) zero.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed to produce a result within tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlab
