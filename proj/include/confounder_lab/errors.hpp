#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confounder_lab {

enum class ErrorKind {
  DegenerateProxy,
  OutOfRange,
  EmptyStratum,
  MuOutOfRange,
  EmptyInput,
  InvalidInput,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` is the machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace confounder_lab
