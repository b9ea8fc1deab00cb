#pragma once

#include <stdexcept>
#include <string>

namespace petty {

enum class ErrorKind {
  domain,                 // empty/degenerate input, outside an operation's domain
  invalid_input,          // type-invariant violation on construction or load
  numerical,              // non-finite values, failed convergence
  non_generic_point,      // abscissa on a column cell boundary
  unsupported_direction,  // non-axis direction on a box-union
  invalid_body,           // origin not interior to a convex body
  not_volume_preserving,  // |det A - 1| too large
  vertical_boundary,      // condition (nu_y = 0 mass) violated in the frame
  pathological_input,     // resample budget exhausted
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::non_generic_point: return "non_generic_point";
    case ErrorKind::unsupported_direction: return "unsupported_direction";
    case ErrorKind::invalid_body: return "invalid_body";
    case ErrorKind::not_volume_preserving: return "not_volume_preserving";
    case ErrorKind::vertical_boundary: return "vertical_boundary";
    case ErrorKind::pathological_input: return "pathological_input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace petty
