#pragma once

#include <stdexcept>
#include <string>

namespace symcap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed family descriptor or body parameters.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A routine was asked for an oracle the body does not carry.
class MissingOracle : public Error {
 public:
  using Error::Error;
};

/// The bracket for a one-dimensional convex minimization could not be closed.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// A per-sample algebraic identity failed (not a statistical rejection).
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues of J*C were not purely imaginary within tolerance.
class SpectralBreakdown : public Error {
 public:
  using Error::Error;
};

/// A heuristic computation was requested where a certified one is required.
class UncertifiedComputation : public Error {
 public:
  using Error::Error;
};

}  // namespace symcap
