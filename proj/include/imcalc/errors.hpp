#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imcalc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Operands live on different charts, or a name is not part of a chart.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// Degree, rank or arity mismatch; input outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a construction does not hold
/// (e.g. an algebroid failing its axioms at checked construction).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computational routes disagree. Always a library defect.
class OracleDisagreement : public Error {
 public:
  using Error::Error;
};

}  // namespace imcalc
