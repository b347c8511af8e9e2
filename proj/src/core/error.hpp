#pragma once

#include <stdexcept>
#include <string>

namespace compsketch {

enum class ErrorCode {
  kArg = 1,       // invalid argument value
  kDim = 2,       // incompatible dimensions
  kSingular = 3,  // rank deficiency / singular matrix where full rank required
  kNumeric = 4,   // numerical failure (non-convergence, overflow, invalid data)
  kJson = 5,      // malformed scenario JSON
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_arg(const std::string& msg) {
  throw Error(ErrorCode::kArg, msg);
}
[[noreturn]] inline void throw_dim(const std::string& msg) {
  throw Error(ErrorCode::kDim, msg);
}
[[noreturn]] inline void throw_singular(const std::string& msg) {
  throw Error(ErrorCode::kSingular, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(ErrorCode::kNumeric, msg);
}
[[noreturn]] inline void throw_json(const std::string& msg) {
  throw Error(ErrorCode::kJson, msg);
}

}  // namespace compsketch
