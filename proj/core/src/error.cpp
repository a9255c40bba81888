#include "satolab/error.hpp"

namespace satolab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
      return "validation";
    case ErrorKind::numerical_guard:
      return "numerical-guard";
    case ErrorKind::io:
      return "io";
    case ErrorKind::internal:
      return "internal";
  }
  return "unknown";
}

}  // namespace satolab
