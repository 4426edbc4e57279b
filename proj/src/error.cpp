#include "linkrec/error.hpp"

namespace linkrec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kIntegrity: return "integrity-error";
    case ErrorKind::kConfiguration: return "configuration-error";
    case ErrorKind::kEmptySet: return "empty-set";
    case ErrorKind::kNumeric: return "numeric-error";
    case ErrorKind::kInitialization: return "initialization-error";
    case ErrorKind::kDegenerateClass: return "degenerate-class";
    case ErrorKind::kLearning: return "learning-error";
    case ErrorKind::kSampler: return "sampler-error";
    case ErrorKind::kIo: return "io-error";
  }
  return "error";
}

Error::Error(ErrorKind kind, std::string module, const std::string& message)
    : std::runtime_error(module + ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      module_(std::move(module)) {}

void fail(ErrorKind kind, std::string_view module, const std::string& message) {
  throw Error(kind, std::string(module), message);
}

}  // namespace linkrec
