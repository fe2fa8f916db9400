#include "domp/errors.hpp"

namespace domp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid-argument";
    case ErrorKind::kUnsupported:
      return "unsupported";
    case ErrorKind::kResourceLimit:
      return "resource-limit";
    case ErrorKind::kInfeasibleInput:
      return "infeasible-input";
    case ErrorKind::kNumericFailure:
      return "numeric-failure";
  }
  return "unknown";
}

}  // namespace domp
