#pragma once

#include <stdexcept>
#include <string>

namespace slproj {

/// Base class of all slproj exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class SingularInputError : public Error {
 public:
  using Error::Error;
};

class NoRealRootError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

class NonPositiveInputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidIterateError : public Error {
 public:
  using Error::Error;
};

class SingularHessianError : public Error {
 public:
  using Error::Error;
};

/// Which well-posedness condition of the sensitivity system failed.
enum class IllPosedReason {
  lambda_eq_sigma_sq,
  lambda_eq_pm_sigma_prod,
  trace_zero,
};

const char* to_string(IllPosedReason reason);

class IllPosedError : public Error {
 public:
  IllPosedError(IllPosedReason reason, const std::string& msg)
      : Error(msg), reason_(reason) {}
  IllPosedReason reason() const { return reason_; }

 private:
  IllPosedReason reason_;
};

class DegenerateProjectionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SpanTooSmallError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slproj
