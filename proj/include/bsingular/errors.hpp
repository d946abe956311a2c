#pragma once

#include <stdexcept>

namespace bsingular {

/// An argument lies outside the mathematical domain of the operation
/// (invalid index, derivative order above the degree, overlapping zones).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The inputs are individually valid but do not fit together, e.g. a
/// function singular at an endpoint was sampled there without a limit.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A difference operator reached outside [0, 1].
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Too few or non-positive samples for a log-log rate fit.
class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsingular
