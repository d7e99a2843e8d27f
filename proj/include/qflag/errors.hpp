#ifndef QFLAG_ERRORS_HPP
#define QFLAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qflag {

/// Raised when an elimination finds no usable pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a chart coordinate is requested outside the chart's domain.
class ChartBoundaryError : public std::domain_error {
 public:
  explicit ChartBoundaryError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an input violates a documented precondition (shape, group membership, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when serialized input is malformed.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qflag

#endif  // QFLAG_ERRORS_HPP
