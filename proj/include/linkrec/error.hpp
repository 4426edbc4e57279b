#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linkrec {

enum class ErrorKind {
  kInvalidArgument,
  kNotFound,
  kParse,
  kIntegrity,
  kConfiguration,
  kEmptySet,
  kNumeric,
  kInitialization,
  kDegenerateClass,
  kLearning,
  kSampler,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. `module()` names the component
/// that raised it so the CLI can print "<module>: <category>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

[[noreturn]] void fail(ErrorKind kind, std::string_view module, const std::string& message);

}  // namespace linkrec
