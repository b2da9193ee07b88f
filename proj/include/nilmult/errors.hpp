#pragma once

#include <stdexcept>
#include <string>

namespace nilmult {

/// Operands live in spaces of different dimensions (or different algebras).
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A configured size ceiling (basis elements, rows, ...) would be exceeded.
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structure constants fail the Jacobi identity; carries the offending triple.
struct JacobiViolation : std::invalid_argument {
  int i, j, k;
  JacobiViolation(int i_, int j_, int k_)
      : std::invalid_argument("Jacobi identity fails on basis triple (x" +
                              std::to_string(i_) + ", x" + std::to_string(j_) +
                              ", x" + std::to_string(k_) + ")"),
        i(i_), j(j_), k(k_) {}
};

/// The lower central series stabilizes above zero.
struct NotNilpotent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computed invariant contradicts a theorem (s2 in {1,2,4}, negative
/// bound slack, ...). Never recoverable: it means an arithmetic bug or a
/// counterexample, and either must abort loudly.
struct ImpossibleValue : std::logic_error {
  using std::logic_error::logic_error;
};

/// Internal consistency check failed (presentation validation and friends);
/// indicates a bug rather than bad input.
struct ValidationError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace nilmult
