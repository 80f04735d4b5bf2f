#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace udtn {

enum class ErrorCode {
  MalformedSchemaLine,
  DuplicateParam,
  UnknownKey,
  TypeMismatch,
  MissingRequired,
  PathTypeUndefined,
  XmlSyntaxError,
  DanglingNodeRef,
  SegmentIdCollision,
  DegenerateBounds,
  UnknownVertex,
  NotAnEndpoint,
  NoFeasibleVertex,
  NoStationaryAgents,
  UnknownModel,
  UnknownProtocol,
  IoFailure,
  InvalidScenario,
  FatalInit,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), cause_(code) {}
  /// Wrapping form: `cause` keeps the code of the underlying failure.
  Error(ErrorCode code, const std::string& message, ErrorCode cause)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), cause_(cause) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCode cause() const noexcept { return cause_; }

 private:
  ErrorCode code_;
  ErrorCode cause_;
};

}  // namespace udtn
