#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace garrow {

enum class ErrorCode {
  // IR
  IllTyped,
  SyntaxError,
  // backends
  ShapeMismatch,
  Unreachable,
  PrimUndefined,
  FuelExhausted,
  Overflow,
  Unresidualizable,
  NonInvertible,
  // frontend
  UnboundVar,
  LevelMismatch,
  EscapeAtLevelZero,
  ClassifierMismatch,
  TypeMismatch,
  OccursCheck,
  // derivation / flattening
  MissingLeaf,
  SpliceNotCode,
  NestedBracketUnsupported,
  // level-0 evaluation
  RuntimeError,
  Internal,
};

std::string_view to_string(ErrorCode code);

struct SourcePos {
  int line = 0;
  int col = 0;
};

/// The single exception type thrown by every module. The code identifies the
/// failure class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt);

  ErrorCode code() const { return code_; }
  const std::optional<SourcePos>& pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

  /// Internal invariant violations map to exit code 2, everything else to 1.
  bool is_internal() const { return code_ == ErrorCode::Internal; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<SourcePos> pos_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message,
                       std::optional<SourcePos> pos = std::nullopt);

}  // namespace garrow
