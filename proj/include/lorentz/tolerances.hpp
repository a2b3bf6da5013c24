#pragma once

#include "lorentz/errors.hpp"

namespace lorentz {

/// Numerical slack used by every predicate in the library.
///
/// `mem` and `strict` are relative factors: the effective band for a vector
/// of norm r is factor * (1 + r). `eq` is absolute and is used for structural
/// comparisons (symmetry, zero blocks, orthogonality).
struct Tolerances {
  double mem = 1e-9;
  double strict = 1e-7;
  double eq = 1e-9;

  [[nodiscard]] double mem_at(double norm) const { return mem * (1.0 + norm); }
  [[nodiscard]] double strict_at(double norm) const { return strict * (1.0 + norm); }

  void validate() const {
    if (!(mem > 0.0) || !(strict > 0.0) || !(eq > 0.0))
      throw std::invalid_argument("tolerances must be strictly positive");
    if (strict < mem)
      throw std::invalid_argument("strict tolerance must be >= membership tolerance");
  }
};

} // namespace lorentz
