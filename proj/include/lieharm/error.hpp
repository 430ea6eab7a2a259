#pragma once

#include <stdexcept>
#include <string>

namespace lieharm {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes (see tools/lieharm_cli.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative t,
/// beta outside [0, pi], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (grid too coarse for the requested
/// band limit, non-decaying coefficients, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid user parameter (h' <= h, dimension mismatch, bad spec strings).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Raised when a bounded search (e.g. the Young inequality witness sweep)
/// finds no admissible parameters. Carries the best defect seen.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, double best_defect)
      : Error(what), best_defect_(best_defect) {}
  double best_defect() const noexcept { return best_defect_; }

 private:
  double best_defect_;
};

/// A coefficient matrix that has to be inverted is numerically singular.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, std::string offending_label)
      : Error(what), label_(std::move(offending_label)) {}
  const std::string& offending_label() const noexcept { return label_; }

 private:
  std::string label_;
};

/// The requested partition pieces cannot cover the group.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Compactly supported constructions need a non-quasianalytic class.
class QuasianalyticError : public Error {
 public:
  using Error::Error;
};

}  // namespace lieharm
