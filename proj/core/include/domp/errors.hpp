#pragma once

#include <stdexcept>
#include <string>

namespace domp {

// Error categories raised by the library. Every error derives from
// domp::Error so callers can catch the whole family at once.
enum class ErrorKind {
  kInvalidArgument,
  kUnsupported,
  kResourceLimit,
  kInfeasibleInput,
  kNumericFailure,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

// The operation does not handle this input class (e.g. interaction costs
// passed to the plain enumeration oracle).
class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what)
      : Error(ErrorKind::kUnsupported, what) {}
};

// An enumeration guard was exceeded.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorKind::kResourceLimit, what) {}
};

class InfeasibleInput : public Error {
 public:
  explicit InfeasibleInput(const std::string& what)
      : Error(ErrorKind::kInfeasibleInput, what) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what)
      : Error(ErrorKind::kNumericFailure, what) {}
};

}  // namespace domp
