#pragma once

#include <stdexcept>
#include <string>

namespace treele {

enum class ErrorCode {
  cycle_detected,
  disconnected,
  bad_label,
  duplicate_edge,
  edge_absent,
  pendant_edge,
  bad_param,
  io_error,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::cycle_detected: return "CycleDetected";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::bad_label: return "BadLabel";
    case ErrorCode::duplicate_edge: return "DuplicateEdge";
    case ErrorCode::edge_absent: return "EdgeAbsent";
    case ErrorCode::pendant_edge: return "PendantEdge";
    case ErrorCode::bad_param: return "BadParam";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

// All library failures are reported through this exception; code() tells
// callers which precondition was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace treele
