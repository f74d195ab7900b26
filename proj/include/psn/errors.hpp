#pragma once

#include <stdexcept>
#include <string>

namespace psn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// series-core
class ZeroConstantTerm : public Error {
 public:
  using Error::Error;
};
class BranchCut : public Error {
 public:
  using Error::Error;
};
class NonvanishingInner : public Error {
 public:
  using Error::Error;
};
class EvalRadiusExceeded : public Error {
 public:
  using Error::Error;
};

// classes
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

// sharp-bounds
class BracketFailure : public Error {
 public:
  using Error::Error;
};
class DomainViolation : public Error {
 public:
  using Error::Error;
};

// norm-estimator
class LocalUnivalenceViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace psn
