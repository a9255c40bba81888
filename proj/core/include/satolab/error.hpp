#pragma once

#include <stdexcept>
#include <string>

namespace satolab {

/// Broad failure classes. The command-line tool maps these onto exit codes.
enum class ErrorKind {
  validation,       // a precondition on the inputs was violated
  numerical_guard,  // bandwidth or rejection-envelope guard tripped
  io,
  internal,         // an invariant the library itself should maintain failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class NumericalGuardError : public Error {
 public:
  explicit NumericalGuardError(const std::string& what) : Error(ErrorKind::numerical_guard, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace satolab
