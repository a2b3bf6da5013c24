#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

/// Operand shapes do not agree (vector length, non-square matrix, n < 2).
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix is singular or too ill-conditioned to invert reliably.
class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input lacks the structure an operation requires (diagonal, orthogonal,
/// triangular, block form, symmetric).
class StructureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem hypothesis was violated by the caller (e.g. a claimed witness
/// that does not verify, or a vector outside the required cone).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace lorentz
