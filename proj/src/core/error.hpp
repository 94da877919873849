#pragma once

#include <stdexcept>
#include <string>

namespace nclust {

// Categories mirror the status codes of the C API one to one.
enum class ErrorCategory { io = 1, parse = 2, invalid = 3, domain = 4, internal = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, std::string msg)
      : std::runtime_error(std::move(msg)), category_(cat) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::io: return "io";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::invalid: return "invalid";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

[[noreturn]] inline void fail(ErrorCategory cat, const std::string& msg) {
  throw Error(cat, msg);
}

}  // namespace nclust
