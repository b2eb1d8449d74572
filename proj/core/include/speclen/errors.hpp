#pragma once

#include <stdexcept>
#include <string>

namespace speclen {

// Base for every numeric/domain failure raised by the library, so callers
// (notably the CLI) can map them to a single exit path.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularLatticeError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested outside the convergence half-plane of a series.
class ConvergenceDomainError : public Error {
 public:
  using Error::Error;
};

class PoleProximityError : public Error {
 public:
  using Error::Error;
};

class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// Structural precondition failures (e.g. a map handed to a routine that
// requires isospectral endpoints).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace speclen
