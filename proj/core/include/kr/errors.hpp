#pragma once

#include <stdexcept>
#include <string>

namespace kr {

// Failure categories exposed to tooling. The CLI maps them to exit codes
// (config=2, data=3, io=4) and prints a machine-readable
// "error: category=<name> ..." line on stderr.
enum class ErrorCategory { Config, Data, Io };

class KrError : public std::runtime_error {
 public:
  KrError(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}

  ErrorCategory category() const noexcept { return category_; }

  const char* category_name() const noexcept {
    switch (category_) {
      case ErrorCategory::Config: return "config";
      case ErrorCategory::Data: return "data";
      case ErrorCategory::Io: return "io";
    }
    return "unknown";
  }

  int exit_code() const noexcept {
    switch (category_) {
      case ErrorCategory::Config: return 2;
      case ErrorCategory::Data: return 3;
      case ErrorCategory::Io: return 4;
    }
    return 1;
  }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw KrError(ErrorCategory::Config, msg);
}
[[noreturn]] inline void fail_data(const std::string& msg) {
  throw KrError(ErrorCategory::Data, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw KrError(ErrorCategory::Io, msg);
}

}  // namespace kr
