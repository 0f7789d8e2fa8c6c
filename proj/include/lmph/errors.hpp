// Exception hierarchy shared by every module. Callers (notably the CLI)
// distinguish user errors from internal invariant violations by type.
#pragma once

#include <stdexcept>
#include <string>

namespace lmph {

/// Parameters outside an operation's documented domain (bad n, k, q, ...).
struct InvalidParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A face whose vertices are not a strictly increasing subset of [1, n].
struct InvalidFace : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A persistence window (r, s) that violates r < s where required.
struct InvalidWindow : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A real-valued argument outside the function's domain (e.g. pgf at t > 1).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// An oracle-scale routine was asked to run on an input above its limit.
struct OracleScaleError : std::length_error {
  using std::length_error::length_error;
};

/// Malformed text input (matrix, filtration, diagram, observable).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (e.g. two primes disagree on a rank).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lmph
