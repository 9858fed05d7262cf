#include "garrow/error.hpp"

namespace garrow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllTyped: return "IllTyped";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::PrimUndefined: return "PrimUndefined";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Unresidualizable: return "Unresidualizable";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::UnboundVar: return "UnboundVar";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::EscapeAtLevelZero: return "EscapeAtLevelZero";
    case ErrorCode::ClassifierMismatch: return "ClassifierMismatch";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::OccursCheck: return "OccursCheck";
    case ErrorCode::MissingLeaf: return "MissingLeaf";
    case ErrorCode::SpliceNotCode: return "SpliceNotCode";
    case ErrorCode::NestedBracketUnsupported: return "NestedBracketUnsupported";
    case ErrorCode::RuntimeError: return "RuntimeError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           const std::optional<SourcePos>& pos) {
  std::string out;
  if (pos) {
    out += std::to_string(pos->line) + ":" + std::to_string(pos->col) + ": ";
  }
  out += to_string(code);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<SourcePos> pos)
    : std::runtime_error(format_message(code, message, pos)),
      code_(code),
      detail_(message),
      pos_(pos) {}

void fail(ErrorCode code, const std::string& message,
          std::optional<SourcePos> pos) {
  throw Error(code, message, pos);
}

}  // namespace garrow
