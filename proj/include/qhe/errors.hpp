#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qhe {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative field, beta <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No cycle exists for the requested parameters (initial field below the minimal field).
class ExistenceError : public Error {
 public:
  using Error::Error;
};

/// Requested field lies beyond maximal expansion/compression of an iso-energetic leg.
class TrajectoryRangeError : public Error {
 public:
  using Error::Error;
};

/// Level pair violates the m1 == m2 selection rule.
class SelectionRuleError : public Error {
 public:
  using Error::Error;
};

class UnsupportedClosedFormError : public Error {
 public:
  using Error::Error;
};

/// Truncation could not be reached under the hard level cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Entropy-matching scan found no sign change. Carries the scanned range of the target function.
class NoSolutionError : public Error {
 public:
  NoSolutionError(const std::string& what, double scanned_min, double scanned_max)
      : Error(what), scanned_min_(scanned_min), scanned_max_(scanned_max) {}
  double scanned_min() const noexcept { return scanned_min_; }
  double scanned_max() const noexcept { return scanned_max_; }

 private:
  double scanned_min_;
  double scanned_max_;
};

struct Bracket {
  double lo;
  double hi;
};

/// More than one sign change; the caller picks a bracket.
class AmbiguityError : public Error {
 public:
  AmbiguityError(const std::string& what, std::vector<Bracket> brackets)
      : Error(what), brackets_(std::move(brackets)) {}
  const std::vector<Bracket>& brackets() const noexcept { return brackets_; }

 private:
  std::vector<Bracket> brackets_;
};

}  // namespace qhe
