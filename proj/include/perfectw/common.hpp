#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace perfectw {

using Complex = std::complex<double>;

inline constexpr Complex kImaginary{0.0, 1.0};

/// Tolerance for unit-norm and Hermiticity invariants enforced at construction.
inline constexpr double kNormTolerance = 1e-12;

/// Violation of a domain rule: bad dimensions, broken invariants, infeasible inputs.
/// Distinct from I/O failures so callers (and the CLI) can map exit codes.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace perfectw
