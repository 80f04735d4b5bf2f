#include "udtn/error.hpp"

namespace udtn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedSchemaLine: return "MalformedSchemaLine";
    case ErrorCode::DuplicateParam: return "DuplicateParam";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::PathTypeUndefined: return "PathTypeUndefined";
    case ErrorCode::XmlSyntaxError: return "XmlSyntaxError";
    case ErrorCode::DanglingNodeRef: return "DanglingNodeRef";
    case ErrorCode::SegmentIdCollision: return "SegmentIdCollision";
    case ErrorCode::DegenerateBounds: return "DegenerateBounds";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotAnEndpoint: return "NotAnEndpoint";
    case ErrorCode::NoFeasibleVertex: return "NoFeasibleVertex";
    case ErrorCode::NoStationaryAgents: return "NoStationaryAgents";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::UnknownProtocol: return "UnknownProtocol";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::FatalInit: return "FatalInit";
  }
  return "Unknown";
}

}  // namespace udtn
