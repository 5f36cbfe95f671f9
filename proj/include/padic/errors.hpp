#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Numeric values double as CLI exit codes.
enum class ErrorCode : int {
  usage = 1,
  hypothesis = 2,
  resource_limit = 3,
  counterexample = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::usage: return "usage";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::resource_limit: return "resource_limit";
    case ErrorCode::counterexample: return "counterexample";
  }
  return "unknown";
}

}  // namespace padic
